"""
(1+eps)-competitive advice algorithm for maximizing a non-decreasing,
sub-homogeneous objective (minimum load being the canonical one) on unrelated
machines.

With s = 1 + eps/2 and T = ceil(log_s n^2), machine j has its own bucket k_j
from the optimal load L_j. Job i is important to j when
s^(k_j - T) <= w_i(j) < s^(k_j + 1), with offset k_j - bucket(w_i(j)).
Machines are ranked by the arrival of their first important job; phase r
opens with the first job important to the machine of rank r. Within a phase
a job's type is its offset vector over the machines opened so far, and the
oracle writes how many jobs of each type the optimal schedule puts on each
of those machines (only machines the type is important to). Unimportant
jobs, and important ones the table has no slot for, go to machine 0 (the
lowest-index allowed machine if the job may not use machine 0).

Tape layout:
  self-delimited n
  n < 2 + 2/eps:  machine index of every job of an optimal schedule
  otherwise:      machine of each rank, ceil(log2 m) bits each
                  per opened phase r:
                    self-delimited (opening index + 1)
                    self-delimited (offset of the opening job on its machine + 1)
                    counts per (type over ranks 0..r, rank), ceil(log2(n+1)) bits each
                  self-delimited (n + 1) when fewer than m phases open
"""

import math
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from ..advice.tape import AdviceTape
from ..config.defaults import DEFAULT_ADVICE_K_LOG, DEFAULT_EPSILON
from ..errors import ContractError, InvariantViolation
from ..report import RunReport
from ..weighted.sparsify import bucket_of, ceil_log, power
from .model import Job, SchedulingInstance
from .runner import (
    JobType,
    SchedulingPair,
    check_epsilon,
    check_sandwich,
    count_width,
    machine_width,
    offset_of,
    run_scheduling_pair,
    type_space,
    write_verbatim
)


def cover_writes_verbatim(n: int, epsilon: Fraction) -> bool:
    """n < 2 + 2/eps, where s * n/(n-1) exceeds 1 + eps."""
    return n * epsilon < 2 * epsilon + 2


def _cells(job_type: JobType) -> List[int]:
    return [rank for rank, delta in enumerate(job_type) if delta is not None]


class UnrelatedCoverPair(SchedulingPair):
    name = "unrelated-cover"

    def __init__(self, epsilon=DEFAULT_EPSILON, objective=None):
        super().__init__()
        self.epsilon = Fraction(epsilon)
        check_epsilon(self.epsilon)
        self.s = 1 + self.epsilon / 2
        self.objective = objective

    def check_objective(self, instance: SchedulingInstance) -> None:
        instance.objective.require_cover()
        self.objective = instance.objective

    def threshold(self, n: int) -> int:
        return ceil_log(n * n, self.s)

    def offset(self, load: Fraction, k: Optional[int], threshold: int) -> Optional[int]:
        """Offset of a load important to a machine with bucket k, else Bot."""
        if k is None:
            return None
        return offset_of(bucket_of(load, self.s), k, threshold)

    def write_advice(self, instance: SchedulingInstance, tape: AdviceTape) -> None:
        self.check_objective(instance)
        n, m = instance.n, instance.machines
        opt = self.optimum(instance)
        tape.write_self_delimited(n)
        if cover_writes_verbatim(n, self.epsilon):
            write_verbatim(tape, opt.assignment, m)
            return

        threshold = self.threshold(n)
        buckets = [bucket_of(load, self.s) if load > 0 else None for load in opt.loads]
        offsets = [
            [self.offset(job.loads[j], buckets[j], threshold) for j in range(m)]
            for job in instance.jobs
        ]
        opening: List[Optional[int]] = [
            next((i for i in range(n) if offsets[i][j] is not None), None) for j in range(m)
        ]
        order = sorted(range(m), key=lambda j: (opening[j] is None, opening[j] or 0, j))
        width = machine_width(m)
        for machine in order:
            tape.write_uint_fixed(machine, width)

        starts = [opening[machine] for machine in order if opening[machine] is not None]
        counted = 0
        for rank, start in enumerate(starts):
            tape.write_self_delimited(start + 1)
            tape.write_self_delimited(offsets[start][order[rank]] + 1)
            end = starts[rank + 1] if rank + 1 < len(starts) else n
            table: Dict[Tuple[JobType, int], int] = {}
            # a job opening several phases belongs to the last of them
            for i in range(start, end):
                job_type = tuple(offsets[i][order[r]] for r in range(rank + 1))
                placed = order.index(opt.assignment[i])
                if placed <= rank and job_type[placed] is not None:
                    table[(job_type, placed)] = table.get((job_type, placed), 0) + 1
            counted += self._write_table(tape, table, rank, threshold, count_width(n))
        if len(starts) < m:
            tape.write_self_delimited(n + 1)

        expected = sum(
            1 for i in range(n)
            if offsets[i][opt.assignment[i]] is not None
        )
        if counted != expected:
            raise InvariantViolation(f"Count tables hold {counted} jobs, the optimum places {expected} on machines they are important to")

    def _write_table(self, tape: AdviceTape, table: Dict, rank: int, threshold: int, width: int) -> int:
        written = 0
        for job_type in type_space(threshold, rank + 1):
            for cell in _cells(job_type):
                count = table.get((job_type, cell), 0)
                tape.write_uint_fixed(count, width)
                written += count
        return written

    def make_algorithm(self, tape: AdviceTape) -> "UnrelatedCoverAlgorithm":
        if self.objective is None:
            raise ContractError("The cover algorithm needs its objective before it runs")
        return UnrelatedCoverAlgorithm(self, tape)

    def ratio_bound(self, n: int) -> Fraction:
        if cover_writes_verbatim(n, self.epsilon):
            return Fraction(1)
        return self.s * Fraction(n, n - 1)

    def advice_bound(self, n: int, m: int) -> float:
        tables = sum((self.threshold(n) + 2) ** r * r for r in range(1, m + 1))
        return DEFAULT_ADVICE_K_LOG * m * math.log2(max(n, 2)) + m * machine_width(m) + tables * count_width(n)

    def params(self) -> Dict[str, Any]:
        return {"epsilon": self.epsilon, "objective": self.objective.describe() if self.objective else None}


class UnrelatedCoverAlgorithm:
    def __init__(self, pair: UnrelatedCoverPair, tape: AdviceTape):
        self.pair = pair
        self.tape = tape
        self.position = 0
        self.n: Optional[int] = None
        self.machines = 0
        self.verbatim = False
        self.threshold = 0
        self.order: List[int] = []
        self.buckets: List[Optional[int]] = []
        self.next_start: Optional[int] = None
        self.table: Dict[Tuple[JobType, int], int] = {}

    @property
    def opened(self) -> int:
        return len(self.buckets)

    def _read_header(self, job: Job) -> None:
        self.machines = job.machines
        self.n = self.tape.read_self_delimited()
        self.verbatim = cover_writes_verbatim(self.n, self.pair.epsilon)
        if self.verbatim:
            return
        self.threshold = self.pair.threshold(self.n)
        width = machine_width(self.machines)
        self.order = [self.tape.read_uint_fixed(width) for _ in range(self.machines)]
        if sorted(self.order) != list(range(self.machines)):
            raise ContractError(f"Advice ranking {self.order} is not a permutation")
        self._read_start()

    def _read_start(self) -> None:
        start = self.tape.read_self_delimited() - 1
        self.next_start = start if start < self.n else None

    def _open_phase(self, job: Job) -> None:
        machine = self.order[self.opened]
        delta = self.tape.read_self_delimited() - 1
        self.buckets.append(delta + bucket_of(job.loads[machine], self.pair.s))
        width = count_width(self.n)
        self.table = {}
        for job_type in type_space(self.threshold, self.opened):
            for cell in _cells(job_type):
                self.table[(job_type, cell)] = self.tape.read_uint_fixed(width)
        if self.opened < self.machines:
            self._read_start()
        else:
            self.next_start = None

    def assign(self, job: Job) -> int:
        i = self.position
        self.position += 1
        if self.n is None:
            self._read_header(job)
        if self.verbatim:
            return self.tape.read_uint_fixed(machine_width(self.machines))
        while self.next_start is not None and self.next_start == i:
            self._open_phase(job)
        if not self.buckets:
            return self.fallback(job)
        job_type = tuple(
            self.pair.offset(job.loads[self.order[r]], self.buckets[r], self.threshold)
            for r in range(self.opened)
        )
        for rank in _cells(job_type):
            if self.table.get((job_type, rank), 0) > 0:
                self.table[(job_type, rank)] -= 1
                machine = self.order[rank]
                rounded = power(self.pair.s, self.buckets[rank] - job_type[rank] + 1)
                check_sandwich(job.loads[machine], rounded, self.pair.s, f"job {i}, machine {machine}")
                return machine
        return self.fallback(job)

    @staticmethod
    def fallback(job: Job) -> int:
        """Machine 0, or the lowest-index machine the job may use."""
        return next(j for j in range(job.machines) if job.allowed(j))


def run_unrelated_cover(instance: SchedulingInstance, epsilon=DEFAULT_EPSILON, tape: Optional[AdviceTape] = None) -> RunReport:
    """
    Run the covering pair (maximized objective, e.g. minimum load) on unrelated machines.
    Args:
        instance (SchedulingInstance): Jobs with per-machine loads and a maximized objective
        epsilon (Rational): Accuracy in (0, 1]
        tape (AdviceTape): Optional fresh tape
    Returns:
        RunReport: Objective values, ratio (OPT/ALG) and advice bits read
    """
    return run_scheduling_pair(UnrelatedCoverPair(epsilon, instance.objective), instance, tape)
