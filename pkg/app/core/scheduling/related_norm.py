"""
(1+eps)-competitive advice algorithm for minimizing a norm on related machines.

Let j* minimize ||1_j|| / C_j (lowest index on ties) and B = ||1_j*|| / C_j*.
A job of size p is important when p*B >= s^(k-T); its type is the single
offset t = k - bucket(p*B). Unimportant jobs all go to j*. Important jobs
follow an optimal schedule of the rounded instance with sizes s^(k-t+1) / B,
so the advice needs only T + 1 counts.

Tape layout:
  self-delimited n
  n <= 2/eps:  machine index of every job of an optimal schedule
  otherwise:   self-delimited (i' + 1)      first important job, i' = n means none
               signed (k - bucket(p_i' * B))
               count of important jobs per type t = 0..T, ceil(log2(n+1)) bits each
"""

import math
from collections import Counter
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from ..advice.tape import AdviceTape
from ..config.defaults import DEFAULT_ADVICE_K_LOG, DEFAULT_EPSILON
from ..errors import ContractError, DomainError, InvariantViolation
from ..report import RunReport
from ..weighted.sparsify import bucket_of, ceil_log, power
from .model import Job, SchedulingInstance
from .runner import (
    SchedulingPair,
    check_epsilon,
    check_sandwich,
    count_width,
    machine_width,
    plan_rounded,
    run_scheduling_pair,
    take_machine,
    write_verbatim
)
from .unrelated_norm import norm_writes_verbatim


class RelatedNormPair(SchedulingPair):
    name = "related-norm"

    def __init__(self, speeds: Sequence, epsilon=DEFAULT_EPSILON, objective=None):
        super().__init__()
        self.speeds = tuple(Fraction(speed) for speed in speeds)
        if not self.speeds or any(speed <= 0 for speed in self.speeds):
            raise DomainError(f"Speeds must be positive, got {list(speeds)}")
        self.epsilon = Fraction(epsilon)
        check_epsilon(self.epsilon)
        self.s = 1 + self.epsilon / 2
        self.objective = objective

    @property
    def machines(self) -> int:
        return len(self.speeds)

    def check_objective(self, instance: SchedulingInstance) -> None:
        instance.objective.require_norm()
        if not instance.is_related or instance.speeds != self.speeds:
            raise ContractError("The related-machines pair needs an instance built from its own speeds")
        self.objective = instance.objective

    def threshold(self, n: int) -> int:
        return ceil_log(n * n, self.s)

    def reference(self):
        """(j*, B): the machine minimizing ||1_j|| / C_j and that minimum."""
        ratios = [self.objective.unit_norm(j, self.machines) / speed for j, speed in enumerate(self.speeds)]
        best = min(range(self.machines), key=lambda j: (ratios[j], j))
        return best, ratios[best]

    def size_of(self, job: Job) -> Fraction:
        return job.loads[0] * self.speeds[0]

    def job_type(self, size: Fraction, k: int, threshold: int, b: Fraction) -> Optional[int]:
        scaled = size * b
        if scaled < power(self.s, k - threshold):
            return None
        t = k - bucket_of(scaled, self.s)
        if not 0 <= t <= threshold:
            raise InvariantViolation(f"Job of size {size} has type {t} outside 0..{threshold}")
        return t

    def rounded_size(self, t: int, k: int, b: Fraction) -> Fraction:
        return power(self.s, k - t + 1) / b

    def rounded_job(self, t: int, k: int, b: Fraction) -> Job:
        size = self.rounded_size(t, k, b)
        return Job(tuple(size / speed for speed in self.speeds))

    def write_advice(self, instance: SchedulingInstance, tape: AdviceTape) -> None:
        self.check_objective(instance)
        n = instance.n
        opt = self.optimum(instance)
        tape.write_self_delimited(n)
        if norm_writes_verbatim(n, self.epsilon):
            write_verbatim(tape, opt.assignment, self.machines)
            return

        threshold = self.threshold(n)
        _, b = self.reference()
        k = self.objective.bucket(opt.loads, self.s)
        types = [self.job_type(size, k, threshold, b) for size in instance.sizes]
        important = [i for i, t in enumerate(types) if t is not None]
        if not important:
            tape.write_self_delimited(n + 1)
            return
        first = important[0]
        tape.write_self_delimited(first + 1)
        tape.write_signed(k - bucket_of(instance.sizes[first] * b, self.s))

        counts = Counter(types[i] for i in important)
        width = count_width(n)
        for t in range(threshold + 1):
            tape.write_uint_fixed(counts.get(t, 0), width)
        if sum(counts.values()) != len(important):
            raise InvariantViolation(f"Count table holds {sum(counts.values())} jobs, {len(important)} are important")

    def make_algorithm(self, tape: AdviceTape) -> "RelatedNormAlgorithm":
        if self.objective is None:
            raise ContractError("The norm algorithm needs its objective before it runs")
        return RelatedNormAlgorithm(self, tape)

    def ratio_bound(self, n: int) -> Fraction:
        if norm_writes_verbatim(n, self.epsilon):
            return Fraction(1)
        return self.s + Fraction(1, n)

    def advice_bound(self, n: int, m: int) -> float:
        return DEFAULT_ADVICE_K_LOG * math.log2(max(n, 2)) + (self.threshold(n) + 1) * count_width(n)

    def params(self) -> Dict[str, Any]:
        return {
            "epsilon": self.epsilon,
            "objective": self.objective.describe() if self.objective else None,
            "speeds": list(self.speeds),
        }


class RelatedNormAlgorithm:
    def __init__(self, pair: RelatedNormPair, tape: AdviceTape):
        self.pair = pair
        self.tape = tape
        self.position = 0
        self.n: Optional[int] = None
        self.verbatim = False
        self.first: Optional[int] = None
        self.offset = 0
        self.k: Optional[int] = None
        self.threshold = 0
        self.home, self.b = pair.reference()
        self.plan: Dict = {}

    def _read_header(self) -> None:
        self.n = self.tape.read_self_delimited()
        self.verbatim = norm_writes_verbatim(self.n, self.pair.epsilon)
        if self.verbatim:
            return
        self.threshold = self.pair.threshold(self.n)
        first = self.tape.read_self_delimited() - 1
        if first < self.n:
            self.first = first
            self.offset = self.tape.read_signed()

    def _read_counts(self, size: Fraction) -> None:
        self.k = self.offset + bucket_of(size * self.b, self.pair.s)
        width = count_width(self.n)
        rounded: List = []
        for t in range(self.threshold + 1):
            count = self.tape.read_uint_fixed(width)
            rounded += [(t, self.pair.rounded_job(t, self.k, self.b))] * count
        self.plan = plan_rounded(rounded, self.pair.objective, self.pair.machines)

    def assign(self, job: Job) -> int:
        i = self.position
        self.position += 1
        if self.n is None:
            self._read_header()
        if self.verbatim:
            return self.tape.read_uint_fixed(machine_width(self.pair.machines))
        if self.first is None or i < self.first:
            return self.home
        size = self.pair.size_of(job)
        if i == self.first:
            self._read_counts(size)
        t = self.pair.job_type(size, self.k, self.threshold, self.b)
        if t is None:
            return self.home
        machine = take_machine(self.plan, t, range(self.pair.machines))
        if machine is None:
            raise ContractError(f"Advice holds no slot for job {i} of type {t}")
        check_sandwich(size, self.pair.rounded_size(t, self.k, self.b), self.pair.s, f"job {i}")
        return machine


def run_related_norm(instance: SchedulingInstance, epsilon=DEFAULT_EPSILON, tape: Optional[AdviceTape] = None) -> RunReport:
    """
    Run the related-machines norm pair; the instance must carry sizes and speeds.
    """
    if not instance.is_related:
        raise ContractError("Related-machines run needs an instance built from sizes and speeds")
    return run_scheduling_pair(RelatedNormPair(instance.speeds, epsilon, instance.objective), instance, tape)
