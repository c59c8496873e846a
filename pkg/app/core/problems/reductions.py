"""
Length-preserving reductions from weighted string guessing (min_asg) to
Vertex Cover, Cycle Finding, Dominating Set and Set Cover.

Each reduction transforms the input request-by-request and carries the
weights over. A target-problem answer string is mapped back to a guessing
answer online, using a few bits of side advice written after the target run.

Side-advice layouts (w = bit length of n, indices 1-based, 0 = none):
  vertex_cover:   w bits   index of a rejected 1-vertex
  cycle_finding:  1 bit    at most two 1s?  then 2 x w bits: their indices
  dominating_set / set_cover:
                  1 bit    no 1s at all?
                  1 bit    request for the last 1 accepted?
                  2 x w    if not: index of an accepted 0-request, index of the last 1
"""

import time
from dataclasses import dataclass
from typing import List, Optional

from ..advice.tape import AdviceTape
from ..errors import ContractError, InvariantViolation, ReductionError
from ...logging.logger_factory import LoggerFactory, elapsed_ms
from .model import Instance, Outcome, Problem, Request, Subset, VertexArrival
from .optimum import brute_force_opt
from .scoring import score_output

logger = LoggerFactory.get_logger(__name__, service="reductions")

REDUCTION_TARGETS = (
    Problem.VERTEX_COVER,
    Problem.CYCLE_FINDING,
    Problem.DOMINATING_SET,
    Problem.SET_COVER,
)


@dataclass(frozen=True)
class ReductionResult:
    source: Instance
    target: Problem
    transformed: Instance
    g_budget: int
    degenerate: bool = False

    def write_side_advice(self, target_output: str, tape: AdviceTape) -> None:
        _WRITERS[self.target](self, target_output, tape)

    def map_back(self, target_output: str, tape: AdviceTape) -> str:
        """Source answer string from the target answers plus side advice read from `tape`."""
        if len(target_output) != self.source.n:
            raise ContractError(f"Target output has {len(target_output)} bits, expected {self.source.n}")
        return _READERS[self.target](self, target_output, tape)

    @property
    def index_width(self) -> int:
        return self.source.n.bit_length()

    def describe(self) -> str:
        return _DESCRIPTIONS[self.target]


def _ones(secret: str) -> List[int]:
    return [i for i, ch in enumerate(secret) if ch == "1"]


def _write_index(tape: AdviceTape, index: Optional[int], width: int) -> None:
    tape.write_uint_fixed(0 if index is None else index + 1, width)


def _read_index(tape: AdviceTape, width: int) -> Optional[int]:
    value = tape.read_uint_fixed(width)
    return None if value == 0 else value - 1


def _with_bit(bits: List[str], index: Optional[int], value: str) -> None:
    if index is not None and 0 <= index < len(bits):
        bits[index] = value


# -------------------------
# Instance transformations
# -------------------------
def _to_vertex_cover(secret: str) -> List[object]:
    ones = set(_ones(secret))
    return [VertexArrival(tuple(j for j in range(i) if j in ones)) for i in range(len(secret))]


def _to_cycle_finding(secret: str) -> List[object]:
    ones = _ones(secret)
    payloads = []
    previous = None
    for i in range(len(secret)):
        neighbors = []
        if secret[i] == "1":
            if previous is not None:
                neighbors.append(previous)
            if len(ones) >= 3 and i == ones[-1] and ones[0] not in neighbors:
                neighbors.append(ones[0])
            previous = i
        payloads.append(VertexArrival(tuple(sorted(neighbors))))
    return payloads


def _to_dominating_set(secret: str) -> List[object]:
    ones = _ones(secret)
    if not ones:
        return [VertexArrival(()) for _ in secret]
    last = ones[-1]
    payloads = []
    for i, ch in enumerate(secret):
        if i == last:
            payloads.append(VertexArrival(tuple(j for j in range(i) if secret[j] == "0")))
        elif i > last and ch == "0":
            payloads.append(VertexArrival((last,)))
        else:
            payloads.append(VertexArrival(()))
    return payloads


def _to_set_cover(secret: str) -> List[object]:
    ones = _ones(secret)
    last = ones[-1] if ones else None
    payloads = []
    for i in range(len(secret)):
        elements = {i + 1}
        if i == last:
            elements |= {j + 1 for j, ch in enumerate(secret) if ch == "0"}
        payloads.append(Subset(frozenset(elements)))
    return payloads


_TRANSFORMS = {
    Problem.VERTEX_COVER: _to_vertex_cover,
    Problem.CYCLE_FINDING: _to_cycle_finding,
    Problem.DOMINATING_SET: _to_dominating_set,
    Problem.SET_COVER: _to_set_cover,
}

_DESCRIPTIONS = {
    Problem.VERTEX_COVER: "guess 1 exactly on accepted vertices, plus the advised rejected 1-vertex",
    Problem.CYCLE_FINDING: "guess 1 exactly on accepted vertices; with at most two 1s the advice lists them",
    Problem.DOMINATING_SET: "guess 1 on accepted vertices; if the last 1 was rejected, swap it for the advised 0-vertex",
    Problem.SET_COVER: "guess 1 on accepted subsets; if the last 1 was rejected, swap it for the advised 0-subset",
}


# -------------------------
# Side advice
# -------------------------
def _write_vertex_cover(result: ReductionResult, target_output: str, tape: AdviceTape) -> None:
    rejected = next((i for i in _ones(result.source.secret) if target_output[i] == "0"), None)
    _write_index(tape, rejected, result.index_width)


def _read_vertex_cover(result: ReductionResult, target_output: str, tape: AdviceTape) -> str:
    bits = list(target_output)
    _with_bit(bits, _read_index(tape, result.index_width), "1")
    return "".join(bits)


def _write_cycle_finding(result: ReductionResult, target_output: str, tape: AdviceTape) -> None:
    ones = _ones(result.source.secret)
    if len(ones) <= 2:
        tape.write_bit(1)
        padded = ones + [None] * (2 - len(ones))
        for index in padded:
            _write_index(tape, index, result.index_width)
    else:
        tape.write_bit(0)


def _read_cycle_finding(result: ReductionResult, target_output: str, tape: AdviceTape) -> str:
    if tape.read_bit() == 0:
        return target_output
    bits = ["0"] * len(target_output)
    for _ in range(2):
        _with_bit(bits, _read_index(tape, result.index_width), "1")
    return "".join(bits)


def _write_last_one(result: ReductionResult, target_output: str, tape: AdviceTape) -> None:
    secret = result.source.secret
    ones = _ones(secret)
    if not ones:
        tape.write_bit(1)
        return
    tape.write_bit(0)
    last = ones[-1]
    if target_output[last] == "1":
        tape.write_bit(1)
        return
    tape.write_bit(0)
    zero = next((i for i, ch in enumerate(secret) if ch == "0" and target_output[i] == "1"), None)
    _write_index(tape, zero, result.index_width)
    _write_index(tape, last, result.index_width)


def _read_last_one(result: ReductionResult, target_output: str, tape: AdviceTape) -> str:
    if tape.read_bit() == 1:
        return "0" * len(target_output)
    bits = list(target_output)
    if tape.read_bit() == 0:
        zero = _read_index(tape, result.index_width)
        last = _read_index(tape, result.index_width)
        _with_bit(bits, zero, "0")
        _with_bit(bits, last, "1")
    return "".join(bits)


_WRITERS = {
    Problem.VERTEX_COVER: _write_vertex_cover,
    Problem.CYCLE_FINDING: _write_cycle_finding,
    Problem.DOMINATING_SET: _write_last_one,
    Problem.SET_COVER: _write_last_one,
}

_READERS = {
    Problem.VERTEX_COVER: _read_vertex_cover,
    Problem.CYCLE_FINDING: _read_cycle_finding,
    Problem.DOMINATING_SET: _read_last_one,
    Problem.SET_COVER: _read_last_one,
}


def _budget(target: Problem, width: int) -> int:
    if target is Problem.VERTEX_COVER:
        return width
    if target is Problem.CYCLE_FINDING:
        return 1 + 2 * width
    return 2 + 2 * width


def reduce_asg(source: Instance, target: Problem) -> ReductionResult:
    """
    Transform a string guessing instance into an instance of `target` of the same length.
    Args:
        source (Instance): min_asg instance (its secret is visible here: oracle-side operation)
        target (Problem): One of REDUCTION_TARGETS
    Returns:
        ReductionResult: Transformed instance, side-advice budget and back map
    """
    if source.problem is not Problem.MIN_ASG:
        raise ContractError(f"Reductions start from min_asg, got {source.problem.value}")
    target = Problem(target)
    if target not in _TRANSFORMS:
        raise ContractError(f"No reduction from min_asg to {target.value}")

    secret = source.secret
    payloads = _TRANSFORMS[target](secret)
    requests = tuple(Request(p, r.weight) for p, r in zip(payloads, source.requests))
    universe = source.n if target is Problem.SET_COVER else None
    transformed = Instance(target, requests, universe_size=universe)

    ones = secret.count("1")
    if target is Problem.CYCLE_FINDING:
        degenerate = ones <= 2
    elif target in (Problem.DOMINATING_SET, Problem.SET_COVER):
        degenerate = ones == 0
    else:
        degenerate = False
    return ReductionResult(
        source=source,
        target=target,
        transformed=transformed,
        g_budget=_budget(target, source.n.bit_length()),
        degenerate=degenerate
    )


def verify_reduction(source: Instance, target_alg_run: Outcome, result: ReductionResult) -> bool:
    """
    Map a target run back to a guessing answer and check that ALG1 <= ALG2 + OPT1
    or ALG1 = OPT1, together with OPT1 >= OPT2. Degenerate transformations only
    need ALG1 = OPT1, which the side advice provides directly.
    Args:
        source (Instance): The min_asg instance that was reduced
        target_alg_run (Outcome): A run on result.transformed
        result (ReductionResult): Output of reduce_asg(source, ...)
    Returns:
        bool: Whether the reduction guarantee holds on this run
    """
    started = time.time()
    if result.source != source:
        raise ContractError("Reduction result belongs to a different source instance")
    if not target_alg_run.feasible and not result.degenerate:
        raise ContractError("Target run must be feasible for the transformed instance")

    written = AdviceTape()
    result.write_side_advice(target_alg_run.output, written)
    reader = written.replay()
    source_output = result.map_back(target_alg_run.output, reader)
    if reader.bits_read() > result.g_budget:
        raise InvariantViolation(
            f"Side advice used {reader.bits_read()} bits, budget is {result.g_budget}"
        )

    alg1 = score_output(source, source_output)
    if not alg1.feasible:
        logger.error(
            "reduction_infeasible",
            target=result.target.value,
            secret=source.secret,
            target_output=target_alg_run.output,
            source_output=source_output
        )
        raise ReductionError(
            f"{result.target.value} run {target_alg_run.output} maps to infeasible guess {source_output}"
        )
    opt1 = brute_force_opt(source).score

    if result.degenerate:
        holds = alg1.score == opt1
    else:
        alg2 = score_output(result.transformed, target_alg_run.output).score
        opt2 = brute_force_opt(result.transformed).score
        holds = (alg1.score <= alg2 + opt1 or alg1.score == opt1) and opt1 >= opt2

    logger.debug(
        "reduction_verified",
        target=result.target.value,
        n=source.n,
        holds=holds,
        side_bits=reader.bits_read(),
        duration_ms=elapsed_ms(started)
    )
    return holds
