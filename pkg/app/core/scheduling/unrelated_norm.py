"""
(1+eps)-competitive advice algorithm for minimizing a norm of the load vector
on unrelated machines.

With s = 1 + eps/2, k the bucket of the optimal norm and T = ceil(log_s n^2),
a job is unimportant when some machine j has ||w(j) 1_j|| < s^(k-T). Unimportant
jobs go to their cheapest machine. Important jobs carry a type vector of
offsets k - bucket(||w(j) 1_j||) (Bot when the job is too heavy for j) and
follow an optimal schedule of the rounded instance rebuilt from per-type counts.

Tape layout:
  self-delimited n
  n <= 2/eps:  machine index of every job of an optimal schedule, ceil(log2 m) bits each
  otherwise:   self-delimited (i' + 1)      first important job, i' = n means none
               signed (k - bucket of job i' on machine 0)
               count of important jobs per type vector, ceil(log2(n+1)) bits, types in lexicographic order
"""

import math
from collections import Counter
from fractions import Fraction
from typing import Any, Dict, List, Optional

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
    plan_rounded,
    run_scheduling_pair,
    take_machine,
    type_space,
    write_verbatim
)


def norm_writes_verbatim(n: int, epsilon: Fraction) -> bool:
    """n <= 2/eps, where s + 1/n may exceed 1 + eps."""
    return n * epsilon <= 2


class UnrelatedNormPair(SchedulingPair):
    name = "unrelated-norm"

    def __init__(self, epsilon=DEFAULT_EPSILON, objective=None):
        super().__init__()
        self.epsilon = Fraction(epsilon)
        check_epsilon(self.epsilon)
        self.s = 1 + self.epsilon / 2
        self.objective = objective

    def check_objective(self, instance: SchedulingInstance) -> None:
        instance.objective.require_norm()
        self.objective = instance.objective

    def threshold(self, n: int) -> int:
        return ceil_log(n * n, self.s)

    def unit_costs(self, machines: int) -> List[Fraction]:
        return [self.objective.unit_norm(j, machines) for j in range(machines)]

    def job_type(self, job: Job, k: int, threshold: int, units: List[Fraction]) -> Optional[JobType]:
        """Type vector of an important job, or None for an unimportant one."""
        costs = [load * unit for load, unit in zip(job.loads, units)]
        if any(cost < power(self.s, k - threshold) for cost in costs):
            return None
        return tuple(offset_of(bucket_of(cost, self.s), k, threshold) for cost in costs)

    def rounded_job(self, job_type: JobType, k: int, units: List[Fraction]) -> Job:
        return Job(tuple(
            None if delta is None else power(self.s, k - delta + 1) / unit
            for delta, unit in zip(job_type, units)
        ))

    def write_advice(self, instance: SchedulingInstance, tape: AdviceTape) -> None:
        self.check_objective(instance)
        n, m = instance.n, instance.machines
        opt = self.optimum(instance)
        tape.write_self_delimited(n)
        if norm_writes_verbatim(n, self.epsilon):
            write_verbatim(tape, opt.assignment, m)
            return

        threshold = self.threshold(n)
        units = self.unit_costs(m)
        k = self.objective.bucket(opt.loads, self.s)
        types = [self.job_type(job, k, threshold, units) for job in instance.jobs]
        important = [i for i, t in enumerate(types) if t is not None]
        if not important:
            tape.write_self_delimited(n + 1)
            return
        first = important[0]
        tape.write_self_delimited(first + 1)
        tape.write_signed(k - bucket_of(instance.jobs[first].loads[0] * units[0], self.s))

        for i in important:
            if types[i][opt.assignment[i]] is None:
                raise InvariantViolation(f"Optimal schedule puts job {i} on machine {opt.assignment[i]} where it is Bot")
        counts = Counter(types[i] for i in important)
        width = count_width(n)
        written = 0
        for job_type in type_space(threshold, m):
            tape.write_uint_fixed(counts.get(job_type, 0), width)
            written += counts.get(job_type, 0)
        if written != len(important):
            raise InvariantViolation(f"Count table holds {written} jobs, {len(important)} are important")

    def make_algorithm(self, tape: AdviceTape) -> "UnrelatedNormAlgorithm":
        if self.objective is None:
            raise ContractError("The norm algorithm needs its objective before it runs")
        return UnrelatedNormAlgorithm(self, tape)

    def ratio_bound(self, n: int) -> Fraction:
        if norm_writes_verbatim(n, self.epsilon):
            return Fraction(1)
        return self.s + Fraction(1, n)

    def advice_bound(self, n: int, m: int) -> float:
        cells = (self.threshold(n) + 2) ** m
        return DEFAULT_ADVICE_K_LOG * math.log2(max(n, 2)) + cells * count_width(n)

    def params(self) -> Dict[str, Any]:
        return {"epsilon": self.epsilon, "objective": self.objective.describe() if self.objective else None}


class UnrelatedNormAlgorithm:
    def __init__(self, pair: UnrelatedNormPair, tape: AdviceTape):
        self.pair = pair
        self.tape = tape
        self.position = 0
        self.n: Optional[int] = None
        self.machines: Optional[int] = None
        self.verbatim = False
        self.first: Optional[int] = None
        self.offset = 0
        self.k: Optional[int] = None
        self.threshold = 0
        self.units: List[Fraction] = []
        self.plan: Dict = {}

    def _read_header(self, job: Job) -> None:
        self.machines = job.machines
        self.n = self.tape.read_self_delimited()
        self.verbatim = norm_writes_verbatim(self.n, self.pair.epsilon)
        if self.verbatim:
            return
        self.threshold = self.pair.threshold(self.n)
        self.units = self.pair.unit_costs(self.machines)
        first = self.tape.read_self_delimited() - 1
        if first < self.n:
            self.first = first
            self.offset = self.tape.read_signed()

    def _read_counts(self, job: Job) -> None:
        self.k = self.offset + bucket_of(job.loads[0] * self.units[0], self.pair.s)
        width = count_width(self.n)
        rounded = []
        for job_type in type_space(self.threshold, self.machines):
            count = self.tape.read_uint_fixed(width)
            if count and all(delta is None for delta in job_type):
                raise ContractError(f"Advice announces {count} jobs that fit on no machine")
            rounded += [(job_type, self.pair.rounded_job(job_type, self.k, self.units))] * count
        self.plan = plan_rounded(rounded, self.pair.objective, self.machines)

    def _cheapest(self, job: Job) -> int:
        costs = [load * unit for load, unit in zip(job.loads, self.units or [Fraction(1)] * job.machines)]
        return min(range(job.machines), key=lambda j: (costs[j], j))

    def assign(self, job: Job) -> int:
        i = self.position
        self.position += 1
        if self.n is None:
            self._read_header(job)
        if self.verbatim:
            return self.tape.read_uint_fixed(machine_width(self.machines))
        if self.first is None or i < self.first:
            return self._cheapest(job)
        if i == self.first:
            self._read_counts(job)
        job_type = self.pair.job_type(job, self.k, self.threshold, self.units)
        if job_type is None:
            return self._cheapest(job)
        machines = [j for j, delta in enumerate(job_type) if delta is not None]
        machine = take_machine(self.plan, job_type, machines)
        if machine is None:
            raise ContractError(f"Advice holds no slot for job {i} of type {job_type}")
        rounded = self.pair.rounded_job(job_type, self.k, self.units).loads[machine]
        check_sandwich(job.loads[machine], rounded, self.pair.s, f"job {i}, machine {machine}")
        return machine


def run_unrelated_norm(instance: SchedulingInstance, epsilon=DEFAULT_EPSILON, tape: Optional[AdviceTape] = None) -> RunReport:
    """
    Run the norm-minimizing pair on an unrelated-machines instance.
    Args:
        instance (SchedulingInstance): Jobs with per-machine loads and a minimized l_p objective
        epsilon (Rational): Accuracy in (0, 1]
        tape (AdviceTape): Optional fresh tape
    Returns:
        RunReport: Objective values, ratio and advice bits read
    """
    return run_scheduling_pair(UnrelatedNormPair(epsilon, instance.objective), instance, tape)
