"""Unweighted base pairs used inside the best-bucket wrapper (maximization problems)."""

from abc import ABC, abstractmethod
from fractions import Fraction
from typing import List

from ..advice.covering import CoveringAlgorithm, Direction, build_family_greedy, write_cover_advice
from ..advice.tape import AdviceTape
from ..errors import ContractError
from ..online import OnlineAlgorithm
from ..problems.feasibility import FeasibilityChecker
from ..problems.model import Instance, Problem, Request
from ..problems.optimum import brute_force_opt

ACCEPT_MAX = 0
REJECT_MAX = 1


class UnweightedBase(ABC):
    """Strictly c-competitive pair for the unweighted version of a Max problem."""

    name: str = "base"
    c: Fraction = Fraction(1)

    @abstractmethod
    def write_advice(self, instance: Instance, tape: AdviceTape) -> None:
        ...

    @abstractmethod
    def make_algorithm(self, problem, tape: AdviceTape) -> OnlineAlgorithm:
        ...

    def advice_bits(self, n: int) -> int:
        return 0


class GreedyBase(UnweightedBase):
    """
    Accept a request whenever the accepted set stays feasible. Uses no advice;
    for Matching this is the classic 2-competitive greedy.
    """

    name = "greedy"

    def __init__(self, c=2):
        self.c = Fraction(c)

    def write_advice(self, instance: Instance, tape: AdviceTape) -> None:
        return None

    def make_algorithm(self, problem, tape: AdviceTape) -> OnlineAlgorithm:
        return GreedyAlgorithm(problem)


class GreedyAlgorithm:
    def __init__(self, problem: Problem):
        self.problem = Problem(problem)
        self.seen: List[Request] = []
        self.accepted = 0

    def decide(self, request) -> int:
        self.seen.append(request)
        # the known path only has to be long enough for the subpaths seen so far
        path_length = None
        if self.problem is Problem.DISJOINT_PATH:
            path_length = max(r.payload.end for r in self.seen)
        prefix = Instance(self.problem, tuple(self.seen), path_length=path_length)
        candidate = self.accepted | (1 << (len(self.seen) - 1))
        if FeasibilityChecker(prefix).accepts(candidate):
            self.accepted = candidate
            return ACCEPT_MAX
        return REJECT_MAX


class CoveringBase(UnweightedBase):
    """
    Covering-family base: advice is the self-delimited subsequence length and the
    index of a member covering an unweighted optimum.
    """

    name = "covering"

    def __init__(self, c=2):
        self.c = Fraction(c)
        if self.c <= 1:
            raise ContractError(f"Covering base needs c > 1, got {self.c}")

    def write_advice(self, instance: Instance, tape: AdviceTape) -> None:
        if instance.direction is not Direction.MAX:
            raise ContractError("Covering base answers maximization problems")
        opt = brute_force_opt(instance, weighted=False)
        tape.write_self_delimited(instance.n)
        write_cover_advice(build_family_greedy(instance.n, self.c, Direction.MAX), opt.output, tape)

    def make_algorithm(self, problem, tape: AdviceTape) -> OnlineAlgorithm:
        size = tape.read_self_delimited()
        return CoveringAlgorithm(build_family_greedy(size, self.c, Direction.MAX), tape)

    def advice_bits(self, n: int) -> int:
        return build_family_greedy(max(n, 1), self.c, Direction.MAX).index_width + 2 * n.bit_length() + 1
