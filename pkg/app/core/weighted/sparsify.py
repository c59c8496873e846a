"""
Exponential sparsification: geometric weight buckets [s^k, s^{k+1}) and the
unimportant / important / huge classification relative to a reference bucket m.
All comparisons are exact over rationals.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from ..errors import DomainError

Real = Union[int, Fraction, float, str]


@lru_cache(maxsize=4096)
def power(s: Fraction, k: int) -> Fraction:
    return s ** k


def bucket_of(w: Real, s: Real) -> int:
    """
    The unique k with s^k <= w < s^(k+1).
    Args:
        w (Real): Positive value
        s (Real): Base > 1
    Returns:
        int: Bucket index (may be negative)
    """
    w, s = Fraction(w), Fraction(s)
    if w <= 0:
        raise DomainError(f"Bucket of non-positive value {w}")
    if s <= 1:
        raise DomainError(f"Bucket base must exceed 1, got {s}")
    # float estimate, then exact correction
    try:
        k = math.floor(math.log(w) / math.log(s))
    except (OverflowError, ValueError):
        k = 0
    while power(s, k) > w:
        k -= 1
    while power(s, k + 1) <= w:
        k += 1
    return k


def ceil_log(value: Real, s: Real) -> int:
    """Smallest T >= 0 with s^T >= value."""
    value, s = Fraction(value), Fraction(s)
    if value <= 1:
        return 0
    k = bucket_of(value, s)
    return k if power(s, k) == value else k + 1


class WeightTag(str, Enum):
    UNIMPORTANT = "unimportant"
    IMPORTANT = "important"
    HUGE = "huge"


@dataclass(frozen=True)
class WeightClass:
    tag: WeightTag
    offset: Optional[int] = None

    @property
    def important(self) -> bool:
        return self.tag is WeightTag.IMPORTANT


@dataclass(frozen=True)
class SparsifyParams:
    epsilon: Fraction
    s: Fraction
    n: int
    m: int
    threshold: int

    @classmethod
    def create(cls, epsilon: Real, n: int, m: int = 0, s: Optional[Real] = None) -> "SparsifyParams":
        """
        Parameters for sequence length n around reference bucket m.
        The base defaults to s = 1 + epsilon/2.
        """
        epsilon = Fraction(epsilon)
        if not 0 < epsilon <= 1:
            raise DomainError(f"epsilon must lie in (0, 1], got {epsilon}")
        if n < 1:
            raise DomainError(f"n must be positive, got {n}")
        s = Fraction(s) if s is not None else 1 + epsilon / 2
        if s <= 1:
            raise DomainError(f"Base must exceed 1, got {s}")
        return cls(epsilon=epsilon, s=s, n=n, m=m, threshold=ceil_log(n * n, s))

    def around(self, m: int) -> "SparsifyParams":
        return SparsifyParams(self.epsilon, self.s, self.n, m, self.threshold)

    def bucket(self, w: Real) -> int:
        return bucket_of(w, self.s)


def classify_weight(w: Real, params: SparsifyParams) -> WeightClass:
    """
    Classify a weight against the reference bucket params.m.
    Args:
        w (Real): Positive weight
        params (SparsifyParams): Base, threshold and reference bucket
    Returns:
        WeightClass: Unimportant, Important(offset m - k) or Huge
    """
    if Fraction(w) <= 0:
        raise DomainError(f"Weights must be positive, got {w}")
    k = params.bucket(w)
    if k < params.m - params.threshold:
        return WeightClass(WeightTag.UNIMPORTANT)
    if k <= params.m:
        return WeightClass(WeightTag.IMPORTANT, params.m - k)
    return WeightClass(WeightTag.HUGE)
