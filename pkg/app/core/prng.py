"""
SplitMix64 counter stream.

Every seeded generator in advicebench draws from this stream so that a
(spec, params, seed) triple reproduces byte-identically on any platform.
"""

from typing import Iterator, Sequence, TypeVar

T = TypeVar("T")

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            value = self.next_u64()
            if value < limit:
                return value % bound

    def bernoulli(self, p) -> bool:
        return self.random() < float(p)

    def choice(self, items: Sequence[T]) -> T:
        return items[self.below(len(items))]

    def stream(self) -> Iterator[int]:
        while True:
            yield self.next_u64()


def trial_seed(base: int, counter: int) -> int:
    """Seed of trial `counter` in a batch started from `base`."""
    return SplitMix64(base + counter).next_u64()


def trailing_ones(value: int) -> int:
    return ((value ^ (value + 1)) >> 1).bit_length()
