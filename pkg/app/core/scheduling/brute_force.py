import time
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..config.defaults import DEFAULT_MAX_ASSIGNMENTS
from ..errors import ContractError, ResourceLimitError
from ...logging.logger_factory import LoggerFactory, elapsed_ms
from .model import Job
from .objective import Objective, Value

logger = LoggerFactory.get_logger(__name__, service="brute-force")


@dataclass(frozen=True)
class Schedule:
    assignment: Tuple[int, ...]
    loads: Tuple[Fraction, ...]
    value: Value


def brute_force_schedule(jobs: Sequence[Job], objective: Objective, machines: Optional[int] = None) -> Schedule:
    """
    Best assignment over all m^n, visited in lexicographic order so that ties
    go to the smallest assignment vector. Forbidden (None) loads are skipped.
    Args:
        jobs (Sequence[Job]): Jobs in arrival order
        objective (Objective): Objective and its direction
        machines (int): Machine count; taken from the jobs when omitted
    Returns:
        Schedule: Optimal assignment, its load vector and objective value
    """
    jobs = list(jobs)
    if not jobs:
        raise ContractError("Nothing to schedule")
    m = machines if machines is not None else jobs[0].machines
    n = len(jobs)
    if m ** n > DEFAULT_MAX_ASSIGNMENTS:
        raise ResourceLimitError(f"{m}^{n} assignments exceed the cap of {DEFAULT_MAX_ASSIGNMENTS}")
    started = time.time()

    loads: List[Fraction] = [Fraction(0)] * m
    current: List[int] = [0] * n
    best: Optional[Tuple[int, ...]] = None
    best_key: Optional[Value] = None
    best_loads: Tuple[Fraction, ...] = ()

    def visit(i: int) -> None:
        nonlocal best, best_key, best_loads
        if i == n:
            key = objective.key(loads)
            if objective.better(key, best_key):
                best, best_key, best_loads = tuple(current), key, tuple(loads)
            return
        job = jobs[i]
        for machine in range(m):
            load = job.loads[machine]
            if load is None:
                continue
            current[i] = machine
            loads[machine] += load
            visit(i + 1)
            loads[machine] -= load

    visit(0)
    if best is None:
        raise ContractError("No assignment respects the forbidden machines")
    value = objective.evaluate(best_loads)
    logger.debug("brute_force_schedule", n=n, machines=m, value=float(value), duration_ms=elapsed_ms(started))
    return Schedule(best, best_loads, value)
