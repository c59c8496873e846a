"""
Nested geometric prefixes for weighted maximization problems.

Request i (1-based) has weight f^i, and the structure lets a feasible
output accept at most one request: a clique for Independent Set, an
independent set for Clique, a star for Matching and pairwise overlapping
subpaths for Disjoint Path. Two prefix lengths that receive the same
advice force the algorithm to commit to the same request on both, losing
a factor of at least f on the longer one.
"""

import math
import time
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..advice.tape import AdviceTape
from ..config.defaults import DEFAULT_GEOMETRIC_F
from ..errors import ContractError, DomainError, VerifierInapplicable
from ..online import AdvicePair, run_online
from ..problems.model import Instance, Problem, Request, Subpath
from ..problems.optimum import brute_force_opt
from ..problems.scoring import score_output
from ..weighted.bases import ACCEPT_MAX, REJECT_MAX, GreedyAlgorithm
from ...logging.logger_factory import LoggerFactory, elapsed_ms
from .string_guessing import LowerBoundWitness, ranks_above

logger = LoggerFactory.get_logger(__name__, service="adversaries")

GEOMETRIC_PROBLEMS = (Problem.INDEPENDENT_SET, Problem.CLIQUE, Problem.MATCHING, Problem.DISJOINT_PATH)


def _full_instance(problem: Problem, n: int, f: Fraction) -> Instance:
    weights = [f ** i for i in range(1, n + 1)]
    if problem is Problem.INDEPENDENT_SET:
        return Instance.from_graph(problem, n, [(i, j) for j in range(n) for i in range(j)], weights)
    if problem is Problem.CLIQUE:
        return Instance.from_graph(problem, n, [], weights)
    if problem is Problem.MATCHING:
        return Instance.from_edges([("hub", f"leaf{i}") for i in range(1, n + 1)], weights)
    requests = tuple(Request(Subpath(i, i + n), w) for i, w in zip(range(1, n + 1), weights))
    return Instance(Problem.DISJOINT_PATH, requests, path_length=2 * n)


def geometric_prefix_family(problem, n: int, f=DEFAULT_GEOMETRIC_F) -> List[Instance]:
    """
    Prefixes of length 1..n of the geometric instance on `problem`.
    Args:
        problem (Problem): Independent set, clique, matching or disjoint path
        n (int): Longest prefix
        f (Rational): Weight ratio between consecutive requests, above 1
    Returns:
        List[Instance]: Entry i-1 holds the prefix of length i
    """
    problem = Problem(problem)
    if problem not in GEOMETRIC_PROBLEMS:
        raise ContractError(f"No geometric prefix family for {problem.value}")
    f = Fraction(f)
    if f <= 1:
        raise DomainError(f"f must exceed 1, got {f}")
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    full = _full_instance(problem, n, f)
    return [full.prefix(length) for length in range(1, n + 1)]


# -------------------------
# Pairs under test
# -------------------------
class GreedyPrefixPair(AdvicePair):
    """No advice; accepts whatever keeps the accepted set feasible (the first request here)."""

    name = "greedy"

    def __init__(self, problem):
        self.problem = Problem(problem)

    def write_advice(self, instance, tape: AdviceTape) -> None:
        return None

    def make_algorithm(self, tape: AdviceTape):
        return GreedyAlgorithm(self.problem)


class DoublingGuessPair(AdvicePair):
    """
    Oracle writes t = floor(log2 length), capped to `width` bits; the algorithm
    accepts request 2^t and nothing else.
    """

    name = "doubling-guess"

    def __init__(self, width: int):
        if width < 0:
            raise DomainError(f"width must be non-negative, got {width}")
        self.width = width

    def write_advice(self, instance, tape: AdviceTape) -> None:
        t = min(len(instance.requests).bit_length() - 1, (1 << self.width) - 1)
        tape.write_uint_fixed(t, self.width)

    def make_algorithm(self, tape: AdviceTape):
        return _AcceptAt(tape, self.width)


class _AcceptAt:
    def __init__(self, tape: AdviceTape, width: int):
        self.tape = tape
        self.width = width
        self.target: Optional[int] = None
        self.position = 0

    def decide(self, request) -> int:
        if self.target is None:
            self.target = (1 << self.tape.read_uint_fixed(self.width)) - 1
        i = self.position
        self.position += 1
        return ACCEPT_MAX if i == self.target else REJECT_MAX


# -------------------------
# Verifier
# -------------------------
def default_prefix_budget(n: int) -> int:
    return n.bit_length() - 2


def _log2_ratio(prefix: Instance, output: str) -> Tuple[str, Optional[float]]:
    outcome = score_output(prefix, output)
    if not outcome.feasible:
        return "infeasible", None
    if outcome.score == 0:
        return "unbounded", None
    opt = brute_force_opt(prefix)
    return "ratio", math.log2(opt.score / outcome.score)


def verify_prefix_lower_bound(pair: AdvicePair, problem, n: int, f=DEFAULT_GEOMETRIC_F, budget: Optional[int] = None) -> LowerBoundWitness:
    """
    Group the n geometric prefixes by the advice bits the algorithm read and
    return the worst pair of prefix lengths that share a class.
    Args:
        pair (AdvicePair): Pair under test for the weighted Max problem
        problem (Problem): Structure of the family
        n (int): Longest prefix
        f (Rational): Weight ratio
        budget (int): Advice bits the algorithm may read; floor(log2 n) - 1 by default
    Returns:
        LowerBoundWitness: x and colliding_x are the prefix lengths (as strings)
    """
    started = time.time()
    budget = default_prefix_budget(n) if budget is None else budget
    if budget < 0 or (1 << budget) >= n:
        raise VerifierInapplicable(f"{n} prefixes fit into 2^{budget} advice classes without collision")

    family = geometric_prefix_family(problem, n, f)
    classes: Dict[str, List[Tuple[int, str]]] = {}
    for prefix in family:
        written = AdviceTape()
        pair.write_advice(prefix, written)
        reader = written.replay(limit=budget)
        output = run_online(pair.make_algorithm(reader), prefix.requests)
        classes.setdefault(written.prefix(reader.bits_read()), []).append((prefix.n, output))

    best: Optional[LowerBoundWitness] = None
    for advice in sorted(classes):
        members = classes[advice]
        for (short, out_short), (long, out_long) in zip(members, members[1:]):
            if out_long[:short] != out_short:
                raise ContractError(
                    f"{pair.name} answered prefixes {short} and {long} differently under identical advice"
                )
            for length, output, other in ((long, out_long, short), (short, out_short, long)):
                verdict, ratio = _log2_ratio(family[length - 1], output)
                witness = LowerBoundWitness(str(length), str(other), advice, short, verdict, ratio)
                if best is None or ranks_above(witness, best):
                    best = witness
    if best is None:
        raise VerifierInapplicable(f"No two prefixes share advice with a {budget}-bit budget")
    best.guaranteed = math.log2(Fraction(f))
    logger.info(
        "prefix_verified",
        pair=pair.name,
        problem=Problem(problem).value,
        n=n,
        budget=budget,
        verdict=best.verdict,
        log2_ratio=best.log2_ratio,
        duration_ms=elapsed_ms(started)
    )
    return best
