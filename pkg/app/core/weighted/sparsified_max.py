"""
Strictly (1+eps)c-competitive advice algorithm for weighted maximization AOC problems.

Tape layout:
  self-delimited n
  n < (2+2eps)/eps:  the optimal answer string verbatim (n bits)
  otherwise:         self-delimited (i' + 1)        first important request, i' = n means none
                     self-delimited (m - m' + 1)    reference bucket relative to request i'
                     per-bucket covering blocks for offsets 0..threshold
"""

import math
from fractions import Fraction
from typing import Any, Dict, Optional

from ..advice.covering import Direction, b_bound
from ..advice.tape import AdviceTape
from ..config.defaults import DEFAULT_ADVICE_K1, DEFAULT_ADVICE_K2, DEFAULT_C, DEFAULT_EPSILON
from ..errors import DomainError
from ..problems.model import Instance
from ..report import RunReport
from .runner import REJECT_MAX, BucketAnswers, WeightedPair, run_weighted_pair, write_bucket_blocks
from .sparsify import SparsifyParams, classify_weight


def check_parameters(c: Fraction, epsilon: Fraction) -> None:
    if c <= 1:
        raise DomainError(f"c must exceed 1, got {c}")
    if not 0 < epsilon <= 1:
        raise DomainError(f"epsilon must lie in (0, 1], got {epsilon}")


def writes_verbatim(n: int, epsilon: Fraction) -> bool:
    """n < (2 + 2 eps) / eps, where the sparsified bound is not yet below (1+eps)c."""
    return n * epsilon < 2 + 2 * epsilon


class SparsifiedMaxPair(WeightedPair):
    name = "sparsified-max"
    direction = Direction.MAX

    def __init__(self, c=DEFAULT_C, epsilon=DEFAULT_EPSILON):
        super().__init__()
        self.c = Fraction(c)
        self.epsilon = Fraction(epsilon)
        check_parameters(self.c, self.epsilon)

    def write_advice(self, instance: Instance, tape: AdviceTape) -> None:
        self.check_direction(instance)
        n = instance.n
        opt = self.optimum(instance)
        tape.write_self_delimited(n)
        if writes_verbatim(n, self.epsilon):
            tape.write_bits(opt.output)
            return
        if not opt.accepted:
            tape.write_self_delimited(n + 1)
            return

        weights = instance.weights
        heaviest = max(opt.accepted, key=lambda i: (weights[i], -i))
        params = SparsifyParams.create(self.epsilon, n)
        params = params.around(params.bucket(weights[heaviest]))
        classes = [classify_weight(w, params) for w in weights]
        first = next(i for i, cl in enumerate(classes) if cl.important)

        tape.write_self_delimited(first + 1)
        tape.write_self_delimited(params.m - params.bucket(weights[first]) + 1)
        write_bucket_blocks(tape, classes, opt.output, params.threshold, self.c, Direction.MAX)

    def make_algorithm(self, tape: AdviceTape) -> "SparsifiedMaxAlgorithm":
        return SparsifiedMaxAlgorithm(self, tape)

    def ratio_bound(self, n: int) -> Fraction:
        if writes_verbatim(n, self.epsilon):
            return Fraction(1)
        return (1 + self.epsilon) * self.c

    def advice_bound(self, n: int) -> float:
        log_n = math.log2(max(n, 2))
        return math.ceil(b_bound(n, self.c)) + DEFAULT_ADVICE_K1 * log_n ** 2 / float(self.epsilon) + DEFAULT_ADVICE_K2

    def params(self) -> Dict[str, Any]:
        return {"c": self.c, "epsilon": self.epsilon}


class SparsifiedMaxAlgorithm:
    def __init__(self, pair: SparsifiedMaxPair, tape: AdviceTape):
        self.pair = pair
        self.tape = tape
        self.position = 0
        self.n: Optional[int] = None
        self.verbatim = False
        self.first: Optional[int] = None
        self.offset = 0
        self.params: Optional[SparsifyParams] = None
        self.answers: Optional[BucketAnswers] = None

    def _read_header(self) -> None:
        self.n = self.tape.read_self_delimited()
        self.verbatim = writes_verbatim(self.n, self.pair.epsilon)
        if self.verbatim:
            return
        first = self.tape.read_self_delimited() - 1
        if first < self.n:
            self.first = first
            self.offset = self.tape.read_self_delimited() - 1

    def decide(self, request) -> int:
        i = self.position
        self.position += 1
        if self.n is None:
            self._read_header()
        if self.verbatim:
            return self.tape.read_bit()
        if self.first is None or i < self.first:
            return REJECT_MAX
        if i == self.first:
            params = SparsifyParams.create(self.pair.epsilon, self.n)
            self.params = params.around(params.bucket(request.weight) + self.offset)
            self.answers = BucketAnswers(self.tape, self.params.threshold, self.pair.c, Direction.MAX)
        cl = classify_weight(request.weight, self.params)
        if not cl.important:
            return REJECT_MAX
        return self.answers.answer(cl.offset)


def run_sparsified_max(instance: Instance, c=DEFAULT_C, epsilon=DEFAULT_EPSILON, tape: Optional[AdviceTape] = None) -> RunReport:
    """
    Run the sparsified maximization pair on `instance`.
    Args:
        instance (Instance): Weighted Max AOC instance (n within brute-force reach)
        c (Rational): Ratio of the per-bucket covering families
        epsilon (Rational): Sparsification parameter in (0, 1]
        tape (AdviceTape): Optional fresh tape to write and read
    Returns:
        RunReport: Scores, ratio and advice bits read
    """
    return run_weighted_pair(SparsifiedMaxPair(c, epsilon), instance, tape)
