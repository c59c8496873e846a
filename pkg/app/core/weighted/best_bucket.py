"""
Best-bucket wrapper: turns a strictly c-competitive unweighted pair into an
O(c log n)-competitive pair for the weighted maximization problem.

With s = 3/2 the oracle picks, among the ceil(log_s n^2) + 1 buckets at or below
the optimum's heaviest bucket, the one holding the most optimal weight
(lowest bucket on ties). The algorithm serves only that bucket's requests
with the base algorithm and rejects everything else.

Tape layout:
  self-delimited (j + 2)   first request of the chosen bucket (1 = optimum is empty)
  base advice for the chosen bucket's subsequence
"""

import math
from fractions import Fraction
from typing import Any, Dict, Optional

from ..advice.covering import Direction
from ..advice.tape import AdviceTape
from ..config.defaults import DEFAULT_ADVICE_K_LOG, DEFAULT_BEST_BUCKET_EPSILON
from ..errors import ContractError
from ..problems.model import Instance, Problem, SubsequenceView
from ..report import RunReport
from .bases import REJECT_MAX, GreedyBase, UnweightedBase
from .runner import WeightedPair, run_weighted_pair
from .sparsify import bucket_of, ceil_log


class BestBucketPair(WeightedPair):
    name = "best-bucket"
    direction = Direction.MAX

    def __init__(self, base: Optional[UnweightedBase] = None, problem: Optional[Problem] = None, epsilon=DEFAULT_BEST_BUCKET_EPSILON):
        super().__init__()
        self.base = base if base is not None else GreedyBase()
        self.problem = Problem(problem) if problem is not None else None
        self.epsilon = Fraction(epsilon)
        self.s = 1 + self.epsilon

    def threshold(self, n: int) -> int:
        return ceil_log(n * n, self.s)

    def chosen_bucket(self, instance: Instance) -> Optional[int]:
        """Bucket holding the most optimal weight among the important ones, or None if OPT is empty."""
        opt = self.optimum(instance)
        if not opt.accepted:
            return None
        weights = instance.weights
        top = max(bucket_of(weights[i], self.s) for i in opt.accepted)
        lowest = top - self.threshold(instance.n)
        contribution: Dict[int, Fraction] = {}
        for i in opt.accepted:
            k = bucket_of(weights[i], self.s)
            if k >= lowest:
                contribution[k] = contribution.get(k, Fraction(0)) + weights[i]
        return max(sorted(contribution), key=lambda k: (contribution[k], -k))

    def write_advice(self, instance: Instance, tape: AdviceTape) -> None:
        self.check_direction(instance)
        k = self.chosen_bucket(instance)
        if k is None:
            tape.write_self_delimited(1)
            return
        members = [i for i, w in enumerate(instance.weights) if bucket_of(w, self.s) == k]
        tape.write_self_delimited(members[0] + 2)
        self.base.write_advice(instance.subsequence(members), tape)

    def make_algorithm(self, tape: AdviceTape) -> "BestBucketAlgorithm":
        if self.problem is None:
            raise ContractError("Best-bucket algorithm needs the problem it serves")
        return BestBucketAlgorithm(self, tape)

    def ratio_bound(self, n: int) -> Fraction:
        buckets = self.threshold(n) + 1
        bound = self.base.c * self.s * buckets
        return bound if n == 1 else bound * Fraction(n, n - 1)

    def advice_bound(self, n: int) -> float:
        return self.base.advice_bits(n) + DEFAULT_ADVICE_K_LOG * math.log2(max(n, 2))

    def params(self) -> Dict[str, Any]:
        return {"base": self.base.name, "c": self.base.c, "epsilon": self.epsilon}


class BestBucketAlgorithm:
    def __init__(self, pair: BestBucketPair, tape: AdviceTape):
        self.pair = pair
        self.tape = tape
        self.position = 0
        self.started = False
        self.first: Optional[int] = None
        self.bucket: Optional[int] = None
        self.view = SubsequenceView()
        self.base_algorithm = None

    def decide(self, request) -> int:
        i = self.position
        self.position += 1
        if not self.started:
            self.started = True
            value = self.tape.read_self_delimited()
            self.first = None if value == 1 else value - 2
        if self.first is None or i < self.first:
            return REJECT_MAX
        if i == self.first:
            self.bucket = bucket_of(request.weight, self.pair.s)
            self.base_algorithm = self.pair.base.make_algorithm(self.pair.problem, self.tape)
        if bucket_of(request.weight, self.pair.s) != self.bucket:
            return REJECT_MAX
        return self.base_algorithm.decide(self.view.translate(request, i))


def run_best_bucket(instance: Instance, base: Optional[UnweightedBase] = None, tape: Optional[AdviceTape] = None) -> RunReport:
    """
    Run the best-bucket wrapper with `base` (greedy by default) on a weighted Max instance.
    """
    return run_weighted_pair(BestBucketPair(base, instance.problem), instance, tape)
