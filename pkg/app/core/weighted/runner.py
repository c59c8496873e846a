import time
from abc import abstractmethod
from fractions import Fraction
from typing import Any, Dict, List, Optional

from ..advice.covering import Direction, build_family_greedy, write_cover_advice
from ..advice.tape import AdviceTape
from ..errors import ContractError
from ..online import AdvicePair, run_online
from ..problems.model import Instance, Outcome
from ..problems.optimum import brute_force_opt
from ..problems.scoring import competitive_ratio, score_output
from ..report import RunReport, additive_slack
from ...logging.logger_factory import LoggerFactory, elapsed_ms

logger = LoggerFactory.get_logger(__name__, service="weighted-runner")

REJECT_MAX = 1  # answer bit meaning "reject" for Max problems


class WeightedPair(AdvicePair):
    """Pair for a weighted AOC problem; caches the offline optimum of the last instance."""

    direction: Direction = Direction.MAX

    def __init__(self):
        self._cached: Optional[tuple] = None

    def optimum(self, instance: Instance) -> Outcome:
        if self._cached is None or self._cached[0] is not instance:
            self._cached = (instance, brute_force_opt(instance))
        return self._cached[1]

    def check_direction(self, instance: Instance) -> None:
        if instance.direction is not self.direction:
            raise ContractError(
                f"{self.name} needs a {self.direction.value} problem, got {instance.problem.value}"
            )

    @abstractmethod
    def ratio_bound(self, n: int) -> Fraction:
        ...

    @abstractmethod
    def advice_bound(self, n: int) -> float:
        ...

    @abstractmethod
    def params(self) -> Dict[str, Any]:
        ...


# -------------------------
# Per-bucket covering blocks
# -------------------------
def write_bucket_blocks(tape: AdviceTape, classes: List, output: str, threshold: int, c: Fraction, direction: Direction) -> None:
    """
    For each offset j in [0, threshold]: self-delimited (bucket size + 1), then the
    covering-family index for the optimal answers restricted to that bucket.
    """
    for j in range(threshold + 1):
        members = [i for i, cl in enumerate(classes) if cl.important and cl.offset == j]
        tape.write_self_delimited(len(members) + 1)
        if members:
            family = build_family_greedy(len(members), c, direction)
            write_cover_advice(family, "".join(output[i] for i in members), tape)


class BucketAnswers:
    """Answer strings per bucket offset, consumed in arrival order."""

    def __init__(self, tape: AdviceTape, threshold: int, c: Fraction, direction: Direction):
        self.blocks: List[str] = []
        for _ in range(threshold + 1):
            size = tape.read_self_delimited() - 1
            if size <= 0:
                self.blocks.append("")
                continue
            family = build_family_greedy(size, c, direction)
            index = tape.read_uint_fixed(family.index_width)
            if index >= len(family):
                raise ContractError(f"Bucket advice index {index} outside family of size {len(family)}")
            self.blocks.append(family.members[index])
        self.used = [0] * len(self.blocks)

    def answer(self, offset: int) -> int:
        block = self.blocks[offset]
        position = self.used[offset]
        if position >= len(block):
            raise ContractError(f"More requests in bucket offset {offset} than the advice announced")
        self.used[offset] += 1
        return 1 if block[position] == "1" else 0


# -------------------------
# Runner
# -------------------------
def run_weighted_pair(pair: WeightedPair, instance: Instance, tape: Optional[AdviceTape] = None) -> RunReport:
    """
    Oracle writes onto `tape`, the online algorithm reads it back while answering
    the requests in order, and the result is scored against the brute-force optimum.
    """
    started = time.time()
    pair.check_direction(instance)
    tape = tape if tape is not None else AdviceTape()
    pair.write_advice(instance, tape)
    algorithm = pair.make_algorithm(tape)
    output = run_online(algorithm, instance.requests)

    outcome = score_output(instance, output)
    opt = pair.optimum(instance)
    minimize = instance.direction is Direction.MIN
    bound = pair.ratio_bound(instance.n)
    ratio = competitive_ratio(instance.direction, outcome.score, opt.score)
    report = RunReport(
        problem=instance.problem.value,
        n=instance.n,
        algorithm=pair.name,
        params=pair.params(),
        alg_score=outcome.score,
        opt_score=opt.score,
        ratio=ratio,
        additive_alpha=additive_slack(minimize, outcome.score, opt.score, bound),
        bits_read=tape.bits_read(),
        advice_bound=pair.advice_bound(instance.n),
        feasible=outcome.feasible,
        runtime_ms=elapsed_ms(started),
        tape_hex=tape.to_hex(),
        extra={"output": output, "opt_output": opt.output, "ratio_bound": bound}
    )
    logger.info(
        "run_complete",
        algorithm=pair.name,
        problem=instance.problem.value,
        n=instance.n,
        feasible=outcome.feasible,
        ratio=float(report.ratio_value),
        bits_read=report.bits_read,
        duration_ms=report.runtime_ms
    )
    return report
