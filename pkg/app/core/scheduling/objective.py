"""
Objectives over machine load vectors: l_p norms (minimized) and the minimum
load (maximized, machine covering).
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Union

from ..advice.covering import Direction
from ..errors import ContractError, DomainError
from ..weighted.sparsify import bucket_of

Value = Union[Fraction, float]
LoadVector = Sequence[Fraction]

INF = math.inf

# load vectors probed before an objective is trusted with the covering algorithm
_PROBES = (
    (Fraction(1), Fraction(2)),
    (Fraction(3), Fraction(1, 2)),
    (Fraction(5), Fraction(5)),
    (Fraction(0), Fraction(7)),
    (Fraction(1, 3), Fraction(9, 4)),
)


class ObjectiveKind(str, Enum):
    LP = "lp"
    MIN_LOAD = "minload"


@dataclass(frozen=True)
class Objective:
    kind: ObjectiveKind
    direction: Direction
    p: Optional[Union[Fraction, float]] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ObjectiveKind(self.kind))
        object.__setattr__(self, "direction", Direction(self.direction))
        if self.kind is ObjectiveKind.LP:
            p = self.p
            if p is None:
                raise DomainError("An l_p objective needs p")
            p = INF if p in ("inf", INF) else Fraction(p)
            if p < 1:
                raise DomainError(f"p must be at least 1, got {p}")
            object.__setattr__(self, "p", p)

    # -------------------------
    # Constructors
    # -------------------------
    @classmethod
    def lp(cls, p, direction=Direction.MIN) -> "Objective":
        return cls(ObjectiveKind.LP, direction, p)

    @classmethod
    def makespan(cls) -> "Objective":
        return cls.lp(INF)

    @classmethod
    def min_load(cls) -> "Objective":
        return cls(ObjectiveKind.MIN_LOAD, Direction.MAX)

    @classmethod
    def from_dict(cls, data: dict) -> "Objective":
        kind = ObjectiveKind(data["kind"])
        default = Direction.MIN if kind is ObjectiveKind.LP else Direction.MAX
        return cls(kind, Direction(data.get("direction", default.value)), data.get("p"))

    def to_dict(self) -> dict:
        data = {"kind": self.kind.value, "direction": self.direction.value}
        if self.kind is ObjectiveKind.LP:
            data["p"] = "inf" if self.p == INF else _plain(self.p)
        return data

    def describe(self) -> str:
        if self.kind is ObjectiveKind.MIN_LOAD:
            return "minload"
        return "linf" if self.p == INF else f"l{_plain(self.p)}"

    # -------------------------
    # Evaluation
    # -------------------------
    @property
    def minimize(self) -> bool:
        return self.direction is Direction.MIN

    @property
    def is_norm(self) -> bool:
        return self.kind is ObjectiveKind.LP and self.minimize

    def _integral_p(self) -> Optional[int]:
        if self.kind is ObjectiveKind.LP and self.p != INF and self.p.denominator == 1:
            return self.p.numerator
        return None

    def evaluate(self, loads: LoadVector) -> Value:
        """
        Objective value; exact unless an l_p root is irrational.
        Args:
            loads (LoadVector): Per-machine loads, finite and non-negative
        Returns:
            Value: Fraction when exact, float otherwise
        """
        if not loads:
            raise ContractError("Empty load vector")
        if self.kind is ObjectiveKind.MIN_LOAD:
            return min(loads)
        if self.p == INF:
            return max(loads)
        if self.p == 1:
            return sum(loads, Fraction(0))
        return float(self.key(loads)) ** (1.0 / float(self.p))

    def key(self, loads: LoadVector) -> Value:
        """Monotone surrogate of evaluate used for exact comparisons (sum of L^p for finite p)."""
        if self.kind is ObjectiveKind.MIN_LOAD:
            return min(loads)
        if self.p == INF:
            return max(loads)
        p = self._integral_p()
        if p is not None:
            return sum((Fraction(load) ** p for load in loads), Fraction(0))
        return sum(float(load) ** float(self.p) for load in loads)

    def better(self, candidate: Value, incumbent: Optional[Value]) -> bool:
        """Strict improvement of a key."""
        if incumbent is None:
            return True
        return candidate < incumbent if self.minimize else candidate > incumbent

    def bucket(self, loads: LoadVector, s: Fraction) -> int:
        """The k with s^k <= evaluate(loads) < s^(k+1), exactly for integral p."""
        p = self._integral_p()
        if p is not None:
            return bucket_of(self.key(loads), Fraction(s) ** p)
        return bucket_of(self.evaluate(loads), s)

    def unit_norm(self, machine: int, machines: int) -> Value:
        """||1_j||, the objective of a unit load on machine j alone."""
        if self.kind is ObjectiveKind.LP:
            return Fraction(1)
        return self.evaluate([Fraction(int(j == machine)) for j in range(machines)])

    # -------------------------
    # Preconditions
    # -------------------------
    def require_norm(self) -> None:
        if not self.is_norm:
            raise ContractError(f"Objective {self.describe()} ({self.direction.value}) is not a minimized norm")

    def require_cover(self) -> None:
        """Maximized, non-decreasing and f(aL) <= a f(L) on the probe vectors."""
        if self.minimize:
            raise ContractError(f"Objective {self.describe()} must be maximized")
        tolerance = 1e-9
        for loads in _PROBES:
            value = self.evaluate(loads)
            for alpha in (Fraction(0), Fraction(1, 2), Fraction(3)):
                scaled = self.evaluate([alpha * load for load in loads])
                if float(scaled) > float(alpha * Fraction(value)) + tolerance:
                    raise ContractError(f"Objective {self.describe()} is not sub-homogeneous at {loads}")
            bigger = [load + 1 for load in loads]
            if float(self.evaluate(bigger)) + tolerance < float(value):
                raise ContractError(f"Objective {self.describe()} is not non-decreasing at {loads}")


def _plain(value: Fraction):
    return value.numerator if value.denominator == 1 else float(value)
