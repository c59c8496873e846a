"""
(1+eps)c-competitive advice algorithm for weighted minimization AOC problems
whose weights lie in a known range [wmin, wmax].

Tape layout:
  self-delimited n
  n < (2+2eps)/eps:  the optimal answer string verbatim
  otherwise:         1 bit: optimum accepts nothing
                     signed (m - m')   m' = bucket of the first request's weight
                     per-bucket covering blocks for offsets 0..threshold
"""

import math
from fractions import Fraction
from typing import Any, Dict, Optional

from ..advice.covering import Direction, b_bound
from ..advice.tape import AdviceTape
from ..config.defaults import DEFAULT_ADVICE_K1, DEFAULT_ADVICE_K2, DEFAULT_ADVICE_K3, DEFAULT_C, DEFAULT_EPSILON
from ..errors import ContractError, DomainError
from ..problems.model import Instance
from ..report import RunReport
from .runner import BucketAnswers, WeightedPair, run_weighted_pair, write_bucket_blocks
from .sparsified_max import check_parameters, writes_verbatim
from .sparsify import SparsifyParams, WeightTag, classify_weight

ACCEPT_MIN = 1
REJECT_MIN = 0


class SparsifiedMinPair(WeightedPair):
    name = "sparsified-min"
    direction = Direction.MIN

    def __init__(self, c=DEFAULT_C, epsilon=DEFAULT_EPSILON, wmin=None, wmax=None):
        super().__init__()
        self.c = Fraction(c)
        self.epsilon = Fraction(epsilon)
        check_parameters(self.c, self.epsilon)
        self.wmin = Fraction(wmin) if wmin is not None else None
        self.wmax = Fraction(wmax) if wmax is not None else None
        if self.wmin is not None and self.wmin <= 0:
            raise DomainError(f"wmin must be positive, got {wmin}")
        if self.wmin is not None and self.wmax is not None and self.wmax < self.wmin:
            raise DomainError(f"wmax {wmax} is below wmin {wmin}")

    def check_weights(self, instance: Instance) -> None:
        for i, w in enumerate(instance.weights):
            if (self.wmin is not None and w < self.wmin) or (self.wmax is not None and w > self.wmax):
                raise ContractError(f"Weight {w} of request {i} lies outside [{self.wmin}, {self.wmax}]")

    def write_advice(self, instance: Instance, tape: AdviceTape) -> None:
        self.check_direction(instance)
        self.check_weights(instance)
        n = instance.n
        opt = self.optimum(instance)
        tape.write_self_delimited(n)
        if writes_verbatim(n, self.epsilon):
            tape.write_bits(opt.output)
            return
        if not opt.accepted:
            tape.write_bit(1)
            return
        tape.write_bit(0)

        weights = instance.weights
        heaviest = max(opt.accepted, key=lambda i: (weights[i], -i))
        params = SparsifyParams.create(self.epsilon, n)
        params = params.around(params.bucket(weights[heaviest]))
        tape.write_signed(params.m - params.bucket(weights[0]))
        classes = [classify_weight(w, params) for w in weights]
        write_bucket_blocks(tape, classes, opt.output, params.threshold, self.c, Direction.MIN)

    def make_algorithm(self, tape: AdviceTape) -> "SparsifiedMinAlgorithm":
        return SparsifiedMinAlgorithm(self, tape)

    def ratio_bound(self, n: int) -> Fraction:
        if writes_verbatim(n, self.epsilon):
            return Fraction(1)
        return (1 + self.epsilon) * self.c

    def advice_bound(self, n: int) -> float:
        log_n = math.log2(max(n, 2))
        spread = 1.0
        if self.wmin is not None and self.wmax is not None:
            spread = max(1.0, math.log2(float(self.wmax / self.wmin)))
        range_term = DEFAULT_ADVICE_K3 * math.log2(spread / float(self.epsilon) + 2)
        return math.ceil(b_bound(n, self.c)) + DEFAULT_ADVICE_K1 * log_n ** 2 / float(self.epsilon) + range_term + DEFAULT_ADVICE_K2

    def params(self) -> Dict[str, Any]:
        return {"c": self.c, "epsilon": self.epsilon, "wmin": self.wmin, "wmax": self.wmax}


class SparsifiedMinAlgorithm:
    def __init__(self, pair: SparsifiedMinPair, tape: AdviceTape):
        self.pair = pair
        self.tape = tape
        self.position = 0
        self.verbatim = False
        self.empty = False
        self.params: Optional[SparsifyParams] = None
        self.answers: Optional[BucketAnswers] = None

    def _start(self, first_weight: Fraction) -> None:
        n = self.tape.read_self_delimited()
        self.verbatim = writes_verbatim(n, self.pair.epsilon)
        if self.verbatim:
            return
        self.empty = self.tape.read_bit() == 1
        if self.empty:
            return
        offset = self.tape.read_signed()
        params = SparsifyParams.create(self.pair.epsilon, n)
        self.params = params.around(params.bucket(first_weight) + offset)
        self.answers = BucketAnswers(self.tape, self.params.threshold, self.pair.c, Direction.MIN)

    def decide(self, request) -> int:
        if self.position == 0:
            self._start(request.weight)
        self.position += 1
        if self.verbatim:
            return self.tape.read_bit()
        if self.empty:
            return REJECT_MIN
        cl = classify_weight(request.weight, self.params)
        if cl.tag is WeightTag.UNIMPORTANT:
            return ACCEPT_MIN
        if cl.tag is WeightTag.HUGE:
            return REJECT_MIN
        return self.answers.answer(cl.offset)


def run_sparsified_min(instance: Instance, c=DEFAULT_C, epsilon=DEFAULT_EPSILON, wmin=None, wmax=None, tape: Optional[AdviceTape] = None) -> RunReport:
    """
    Run the sparsified minimization pair. wmin/wmax default to the instance's own
    extreme weights.
    """
    weights = instance.weights
    wmin = wmin if wmin is not None else min(weights)
    wmax = wmax if wmax is not None else max(weights)
    return run_weighted_pair(SparsifiedMinPair(c, epsilon, wmin, wmax), instance, tape)
