import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from ..errors import ContractError, DomainError
from ..problems.instance_io import format_weight
from .objective import Objective

Load = Optional[Fraction]  # None marks a machine the job may not use


def _positive(value, what: str) -> Fraction:
    number = Fraction(value)
    if number <= 0:
        raise DomainError(f"{what} must be positive, got {value}")
    return number


@dataclass(frozen=True)
class Job:
    """Per-machine load of one job; None (rounded instances only) forbids that machine."""
    loads: Tuple[Load, ...]

    def __post_init__(self):
        loads = tuple(None if load is None else _positive(load, "Job load") for load in self.loads)
        if not loads:
            raise ContractError("A job needs at least one machine")
        if all(load is None for load in loads):
            raise ContractError("A job must fit on some machine")
        object.__setattr__(self, "loads", loads)

    @property
    def machines(self) -> int:
        return len(self.loads)

    def allowed(self, machine: int) -> bool:
        return self.loads[machine] is not None


@dataclass(frozen=True)
class SchedulingInstance:
    """
    Jobs on m machines. Related instances keep the sizes and speeds they were
    built from; job i then loads machine j with sizes[i] / speeds[j].
    """
    machines: int
    jobs: Tuple[Job, ...]
    objective: Objective
    sizes: Optional[Tuple[Fraction, ...]] = None
    speeds: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "jobs", tuple(self.jobs))
        if self.machines < 1:
            raise DomainError(f"Need at least one machine, got {self.machines}")
        if not self.jobs:
            raise ContractError("A scheduling instance needs at least one job")
        for i, job in enumerate(self.jobs):
            if job.machines != self.machines:
                raise ContractError(f"Job {i} has {job.machines} loads for {self.machines} machines")

    @classmethod
    def unrelated(cls, loads: Sequence[Sequence], objective: Objective) -> "SchedulingInstance":
        jobs = tuple(Job(tuple(row)) for row in loads)
        return cls(len(jobs[0].loads) if jobs else 0, jobs, objective)

    @classmethod
    def related(cls, sizes: Sequence, speeds: Sequence, objective: Objective) -> "SchedulingInstance":
        speeds = tuple(_positive(speed, "Machine speed") for speed in speeds)
        sizes = tuple(_positive(size, "Job size") for size in sizes)
        jobs = tuple(Job(tuple(size / speed for speed in speeds)) for size in sizes)
        return cls(len(speeds), jobs, objective, sizes, speeds)

    @property
    def n(self) -> int:
        return len(self.jobs)

    @property
    def is_related(self) -> bool:
        return self.speeds is not None

    def prefix(self, length: int) -> "SchedulingInstance":
        if not 1 <= length <= self.n:
            raise ContractError(f"Prefix length {length} outside 1..{self.n}")
        sizes = self.sizes[:length] if self.sizes is not None else None
        return SchedulingInstance(self.machines, self.jobs[:length], self.objective, sizes, self.speeds)

    def loads_of(self, assignment: Sequence[int]) -> List[Fraction]:
        """Load vector of a complete assignment."""
        return load_vector(self.jobs, assignment, self.machines)

    def value_of(self, assignment: Sequence[int]):
        return self.objective.evaluate(self.loads_of(assignment))

    # -------------------------
    # JSON
    # -------------------------
    def to_dict(self) -> dict:
        data = {"machines": self.machines, "objective": self.objective.to_dict()}
        if self.is_related:
            data["speeds"] = [format_weight(speed) for speed in self.speeds]
            data["jobs"] = [format_weight(size) for size in self.sizes]
        else:
            data["jobs"] = [[format_weight(load) for load in job.loads] for job in self.jobs]
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "SchedulingInstance":
        objective = Objective.from_dict(data["objective"])
        if "speeds" in data:
            instance = cls.related([Fraction(str(v)) for v in data["jobs"]], [Fraction(str(v)) for v in data["speeds"]], objective)
        else:
            instance = cls.unrelated([[Fraction(str(v)) for v in row] for row in data["jobs"]], objective)
        if instance.machines != data["machines"]:
            raise ContractError(f"File declares {data['machines']} machines, jobs carry {instance.machines}")
        return instance


def load_vector(jobs: Sequence[Job], assignment: Sequence[int], machines: int) -> List[Fraction]:
    if len(assignment) != len(jobs):
        raise ContractError(f"Assignment covers {len(assignment)} of {len(jobs)} jobs")
    loads = [Fraction(0)] * machines
    for i, (job, machine) in enumerate(zip(jobs, assignment)):
        if not 0 <= machine < machines:
            raise ContractError(f"Job {i} assigned to machine {machine} of {machines}")
        if not job.allowed(machine):
            raise ContractError(f"Job {i} cannot run on machine {machine}")
        loads[machine] += job.loads[machine]
    return loads


def load_scheduling_instance(path: Union[str, Path]) -> SchedulingInstance:
    with open(path, "r") as f:
        return SchedulingInstance.from_dict(json.load(f))


def save_scheduling_instance(instance: SchedulingInstance, path: Union[str, Path]) -> None:
    with open(path, "w") as f:
        json.dump(instance.to_dict(), f, indent=2)
