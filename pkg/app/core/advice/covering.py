"""
Covering-family advice for unweighted AOC problems.

A family is a set of n-bit strings such that every x in {0,1}^n lies below
(bitwise) some member y with bounded score loss. The oracle writes the
member's index; the algorithm answers request i with y_i.
"""

import heapq
import math
import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Tuple, Union

from ..config.defaults import DEFAULT_MAX_FAMILY_N
from ..errors import ContractError, DomainError, ResourceLimitError
from ...logging.logger_factory import LoggerFactory, elapsed_ms
from .tape import AdviceTape

logger = LoggerFactory.get_logger(__name__, service="covering")

Rational = Union[int, Fraction, str]


class Direction(str, Enum):
    MIN = "min"
    MAX = "max"


def as_fraction(value: Rational) -> Fraction:
    """Exact conversion for ints, Fractions, decimal strings and floats."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def bit_below(x: str, y: str) -> bool:
    """x ⊑ y: every 1 in x is also a 1 in y."""
    return all(yb == "1" for xb, yb in zip(x, y) if xb == "1")


def _within_bound(direction: Direction, c: Fraction, n: int, ones_x: int, ones_y: int) -> bool:
    if direction is Direction.MIN:
        # ones(y) <= c * ones(x)
        return ones_y * c.denominator <= c.numerator * ones_x
    # zeros(y) >= zeros(x) / c
    return c.numerator * (n - ones_y) >= c.denominator * (n - ones_x)


def b_bound(n: int, c: Rational) -> float:
    """
    log2(1 + (c-1)^(c-1) / c^c) * n, the advice needed for strict c-competitiveness.
    Args:
        n (int): Sequence length
        c (Rational): Competitive ratio, at least 1
    Returns:
        float: Bits
    """
    c = as_fraction(c)
    if c < 1:
        raise DomainError(f"c must be at least 1, got {c}")
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    if c == 1:
        return float(n)
    cf = float(c)
    # log-space keeps large c from overflowing
    log_ratio = (cf - 1) * math.log(cf - 1) - cf * math.log(cf)
    return math.log2(1 + math.exp(log_ratio)) * n


@dataclass(frozen=True)
class CoveringFamily:
    n: int
    c: Fraction
    direction: Direction
    members: Tuple[str, ...]

    @property
    def index_width(self) -> int:
        return (max(1, len(self.members)) - 1).bit_length()

    def __len__(self) -> int:
        return len(self.members)

    def covers(self, x: str) -> bool:
        return any(self._covers(y, x) for y in self.members)

    def _covers(self, y: str, x: str) -> bool:
        return bit_below(x, y) and _within_bound(self.direction, self.c, self.n, x.count("1"), y.count("1"))

    def verify(self) -> bool:
        """Exhaustive check that every string of length n is covered."""
        masks = [int(y, 2) for y in self.members]
        for x in range(1 << self.n):
            ones_x = x.bit_count()
            if not any(
                x & ~y == 0 and _within_bound(self.direction, self.c, self.n, ones_x, y.bit_count())
                for y in masks
            ):
                return False
        return len(set(self.members)) == len(self.members)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "c": str(self.c),
            "direction": self.direction.value,
            "members": list(self.members)
        }

    @staticmethod
    def from_dict(data: dict) -> "CoveringFamily":
        members = tuple(data["members"])
        n = int(data["n"])
        if any(len(y) != n or set(y) - {"0", "1"} for y in members):
            raise ContractError(f"Family members must be {n}-bit strings")
        return CoveringFamily(
            n=n,
            c=Fraction(data["c"]),
            direction=Direction(data["direction"]),
            members=members
        )


def _covered_by(y: int, n: int, c: Fraction, direction: Direction) -> Iterator[int]:
    """All x ⊑ y within the direction's bound (submask enumeration)."""
    ones_y = y.bit_count()
    sub = y
    while True:
        if _within_bound(direction, c, n, sub.bit_count(), ones_y):
            yield sub
        if sub == 0:
            return
        sub = (sub - 1) & y


def build_family_greedy(n: int, c: Rational, direction: Union[Direction, str]) -> CoveringFamily:
    """
    Greedy set cover over all 2^n candidates: repeatedly add the string covering the
    most still-uncovered strings, ties to the smaller numeric value.
    Args:
        n (int): Sequence length, 1 <= n <= DEFAULT_MAX_FAMILY_N
        c (Rational): Ratio, at least 1
        direction (Direction): Min (cost) or Max (profit)
    Returns:
        CoveringFamily: Members sorted by numeric value
    """
    c = as_fraction(c)
    direction = Direction(direction)
    if c < 1:
        raise DomainError(f"c must be at least 1, got {c}")
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if n > DEFAULT_MAX_FAMILY_N:
        raise ResourceLimitError(f"Covering family for n={n} exceeds the cap of {DEFAULT_MAX_FAMILY_N}")
    return _build_cached(n, c, direction)


@lru_cache(maxsize=None)
def _build_cached(n: int, c: Fraction, direction: Direction) -> CoveringFamily:
    started = time.time()
    size = 1 << n
    covered = bytearray(size)
    remaining = size

    # Lazy greedy: stale gains only overestimate, so a popped entry whose fresh
    # gain still beats the heap top is the true greedy choice.
    heap = [(-sum(1 for _ in _covered_by(y, n, c, direction)), y) for y in range(size)]
    heapq.heapify(heap)
    chosen: List[int] = []
    while remaining:
        _, y = heapq.heappop(heap)
        gain = sum(1 for x in _covered_by(y, n, c, direction) if not covered[x])
        if gain == 0:
            continue
        if heap and (-gain, y) > heap[0]:
            heapq.heappush(heap, (-gain, y))
            continue
        for x in _covered_by(y, n, c, direction):
            if not covered[x]:
                covered[x] = 1
                remaining -= 1
        chosen.append(y)

    members = tuple(format(y, "b").zfill(n) for y in sorted(chosen))
    family = CoveringFamily(n=n, c=c, direction=direction, members=members)
    logger.info(
        "family_built",
        n=n,
        c=str(c),
        direction=direction.value,
        size=len(members),
        index_width=family.index_width,
        duration_ms=elapsed_ms(started)
    )
    return family


def lookup_cover(family: CoveringFamily, x: str) -> Tuple[int, str]:
    """
    Lowest-index member covering x.
    Args:
        family (CoveringFamily): The family
        x (str): n-bit string
    Returns:
        Tuple[int, str]: (index, member)
    """
    if len(x) != family.n:
        raise ContractError(f"Expected a {family.n}-bit string, got {len(x)} bits")
    for index, y in enumerate(family.members):
        if family._covers(y, x):
            return index, y
    raise ContractError(f"Family does not cover {x}")


class CoveringAlgorithm:
    """Online side: read the member index once, then answer with the member's bits."""

    def __init__(self, family: CoveringFamily, tape: AdviceTape):
        self.family = family
        self.tape = tape
        self.member = None
        self.position = 0

    def decide(self, request) -> int:
        if self.member is None:
            index = self.tape.read_uint_fixed(self.family.index_width)
            if index >= len(self.family.members):
                raise ContractError(f"Advice index {index} outside family of size {len(self.family)}")
            self.member = self.family.members[index]
        if self.position >= self.family.n:
            raise ContractError(f"Family covers {self.family.n} requests, got more")
        bit = 1 if self.member[self.position] == "1" else 0
        self.position += 1
        return bit


def write_cover_advice(family: CoveringFamily, optimal_x: str, tape: AdviceTape) -> str:
    index, member = lookup_cover(family, optimal_x)
    tape.write_uint_fixed(index, family.index_width)
    return member


def run_unweighted_aoc(instance, family: CoveringFamily, optimal_x: str, tape: AdviceTape):
    """
    Run the covering pair on `instance` and score it with unit weights.
    Args:
        instance (Instance): Any AOC instance of length family.n
        family (CoveringFamily): Family in the instance's direction
        optimal_x (str): An optimal output for the instance
        tape (AdviceTape): Fresh tape; the oracle writes, the algorithm then reads
    Returns:
        Outcome: Output, feasibility and unweighted score
    """
    from ..problems.feasibility import check_feasible
    from ..problems.scoring import score_output

    n = len(instance.requests)
    if family.n != n:
        raise ContractError(f"Family is for n={family.n}, instance has n={n}")
    if len(optimal_x) != n or not check_feasible(instance, optimal_x):
        raise ContractError(f"Optimal output {optimal_x!r} is not feasible for the instance")
    if family.direction.value != instance.direction.value:
        raise ContractError(f"{family.direction.value} family used for a {instance.direction.value} problem")

    write_cover_advice(family, optimal_x, tape)
    algorithm = CoveringAlgorithm(family, tape)
    output = "".join(str(algorithm.decide(request)) for request in instance.requests)
    return score_output(instance, output, weighted=False)
