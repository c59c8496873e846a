import time
from abc import abstractmethod
from fractions import Fraction
from itertools import product
from typing import Any, Dict, Iterator, List, Optional, Protocol, Sequence, Tuple

from ..advice.tape import AdviceTape
from ..errors import DomainError, InvariantViolation
from ..online import AdvicePair
from ..problems.scoring import competitive_ratio
from ..report import RunReport, additive_slack
from ...logging.logger_factory import LoggerFactory, elapsed_ms
from .brute_force import Schedule, brute_force_schedule
from .model import Job, SchedulingInstance, load_vector

logger = LoggerFactory.get_logger(__name__, service="scheduling")

JobType = Tuple[Optional[int], ...]


class ScheduleAlgorithm(Protocol):
    def assign(self, job: Job) -> int:
        """Machine index for the next job."""
        ...


class SchedulingPair(AdvicePair):
    """Pair for an online scheduling problem; caches the offline optimum of the last instance."""

    def __init__(self):
        self._cached: Optional[tuple] = None

    def optimum(self, instance: SchedulingInstance) -> Schedule:
        if self._cached is None or self._cached[0] is not instance:
            self._cached = (instance, brute_force_schedule(instance.jobs, instance.objective, instance.machines))
        return self._cached[1]

    @abstractmethod
    def check_objective(self, instance: SchedulingInstance) -> None:
        ...

    @abstractmethod
    def ratio_bound(self, n: int) -> Fraction:
        ...

    @abstractmethod
    def advice_bound(self, n: int, m: int) -> float:
        ...

    @abstractmethod
    def params(self) -> Dict[str, Any]:
        ...


# -------------------------
# Advice helpers
# -------------------------
def check_epsilon(epsilon: Fraction) -> None:
    if not 0 < epsilon <= 1:
        raise DomainError(f"epsilon must lie in (0, 1], got {epsilon}")


def machine_width(machines: int) -> int:
    return (machines - 1).bit_length()


def count_width(n: int) -> int:
    """Fixed width of one count cell, ceil(log2(n + 1))."""
    return n.bit_length()


def write_verbatim(tape: AdviceTape, assignment: Sequence[int], machines: int) -> None:
    width = machine_width(machines)
    for machine in assignment:
        tape.write_uint_fixed(machine, width)


def type_space(threshold: int, dims: int) -> Iterator[JobType]:
    """All type vectors in lexicographic order; offsets 0..threshold, then Bot (None)."""
    values = list(range(threshold + 1)) + [None]
    return product(values, repeat=dims)


def offset_of(bucket: int, reference: int, threshold: int) -> Optional[int]:
    """reference - bucket when it lies in [0, threshold], else Bot."""
    delta = reference - bucket
    return delta if 0 <= delta <= threshold else None


def check_sandwich(actual: Fraction, rounded: Fraction, s: Fraction, where: str) -> None:
    """actual < rounded <= s * actual."""
    if not actual < rounded <= s * actual:
        raise InvariantViolation(f"Rounded load {rounded} does not sandwich {actual} ({where})")


def plan_rounded(rounded: List[Tuple[JobType, Job]], instance_objective, machines: int) -> Dict[Tuple[JobType, int], int]:
    """Per-(type, machine) counts of an optimal schedule of the rounded jobs."""
    plan: Dict[Tuple[JobType, int], int] = {}
    if not rounded:
        return plan
    schedule = brute_force_schedule([job for _, job in rounded], instance_objective, machines)
    for (job_type, _), machine in zip(rounded, schedule.assignment):
        plan[(job_type, machine)] = plan.get((job_type, machine), 0) + 1
    return plan


def take_machine(plan: Dict[Tuple[JobType, int], int], job_type: JobType, machines: Sequence[int]) -> Optional[int]:
    """Consume one unit of the lowest listed machine still holding a count for this type."""
    for machine in machines:
        if plan.get((job_type, machine), 0) > 0:
            plan[(job_type, machine)] -= 1
            return machine
    return None


# -------------------------
# Runner
# -------------------------
def run_schedule_online(algorithm: ScheduleAlgorithm, jobs: Sequence[Job]) -> Tuple[int, ...]:
    return tuple(algorithm.assign(job) for job in jobs)


def run_scheduling_pair(pair: SchedulingPair, instance: SchedulingInstance, tape: Optional[AdviceTape] = None) -> RunReport:
    """
    Oracle writes onto `tape`, the algorithm assigns the jobs in order while
    reading it, and the schedule is compared with the brute-force optimum.
    """
    started = time.time()
    pair.check_objective(instance)
    tape = tape if tape is not None else AdviceTape()
    pair.write_advice(instance, tape)
    assignment = run_schedule_online(pair.make_algorithm(tape), instance.jobs)

    loads = load_vector(instance.jobs, assignment, instance.machines)
    objective = instance.objective
    alg = objective.evaluate(loads)
    opt = pair.optimum(instance)
    direction = objective.direction
    bound = pair.ratio_bound(instance.n)
    ratio = competitive_ratio(direction, alg, opt.value)
    if ratio < 1:
        raise InvariantViolation(f"{pair.name} beat the optimum: ALG={alg}, OPT={opt.value}")
    report = RunReport(
        problem=f"{'related' if instance.is_related else 'unrelated'}-{objective.describe()}",
        n=instance.n,
        algorithm=pair.name,
        params={**pair.params(), "m": instance.machines},
        alg_score=alg,
        opt_score=opt.value,
        ratio=ratio,
        additive_alpha=additive_slack(objective.minimize, alg, opt.value, bound),
        bits_read=tape.bits_read(),
        advice_bound=pair.advice_bound(instance.n, instance.machines),
        runtime_ms=elapsed_ms(started),
        tape_hex=tape.to_hex(),
        extra={"assignment": list(assignment), "opt_assignment": list(opt.assignment), "ratio_bound": bound}
    )
    logger.info(
        "run_complete",
        algorithm=pair.name,
        problem=report.problem,
        n=instance.n,
        machines=instance.machines,
        ratio=float(report.ratio_value),
        bits_read=report.bits_read,
        duration_ms=report.runtime_ms
    )
    return report
