"""
Randomized star adversary for weighted matching.

Edges e_1, e_2, ... of weight 2^i arrive on a common center until a random
stopping round X, drawn with Pr(X = j) = 2^-j for j < k and
Pr(X = k) = 2^-(k-1), where k = 2c - 1. Any deterministic algorithm that
commits to edge j earns 2 in expectation, while the optimum earns k + 1.
"""

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..advice.tape import AdviceTape
from ..config.defaults import DEFAULT_SEED, DEFAULT_STAR_SAMPLES
from ..errors import DomainError, InvariantViolation
from ..online import AdvicePair
from ..prng import SplitMix64, trailing_ones
from ..problems.model import Instance
from ..weighted.bases import ACCEPT_MAX, REJECT_MAX
from ...logging.logger_factory import LoggerFactory, elapsed_ms

logger = LoggerFactory.get_logger(__name__, service="adversaries")


def star_rounds(c) -> int:
    """k = 2c - 1 for integer or half-integer c >= 1."""
    c = Fraction(c)
    k = 2 * c - 1
    if c < 1 or k.denominator != 1:
        raise DomainError(f"2c - 1 must be a positive integer, got c = {c}")
    return int(k)


def stop_probability(j: int, k: int) -> Fraction:
    if not 1 <= j <= k:
        return Fraction(0)
    return Fraction(1, 2 ** (k - 1)) if j == k else Fraction(1, 2 ** j)


@dataclass(frozen=True)
class StarExpectations:
    k: int
    e_opt: Fraction
    e_det: Tuple[Fraction, ...]

    def to_dict(self) -> dict:
        return {"k": self.k, "e_opt": str(self.e_opt), "e_det": [str(v) for v in self.e_det]}


def star_expectations(c) -> StarExpectations:
    """
    Exact expected gains of the optimum and of every fixed-edge strategy.
    Args:
        c (Rational): Target ratio; 2c - 1 must be a positive integer
    Returns:
        StarExpectations: k, E[OPT] and E[DET_j] for j = 1..k
    """
    k = star_rounds(c)
    e_opt = sum((stop_probability(j, k) * 2 ** j for j in range(1, k + 1)), Fraction(0))
    e_det = []
    for j in range(1, k + 1):
        reach = sum((stop_probability(i, k) for i in range(j, k + 1)), Fraction(0))
        e_det.append(reach * 2 ** j)
    if e_opt != k + 1 or any(value != 2 for value in e_det):
        raise InvariantViolation(f"Star expectations for k={k}: E[OPT]={e_opt}, E[DET]={e_det}")
    return StarExpectations(k, e_opt, tuple(e_det))


# -------------------------
# Sampling
# -------------------------
def sample_rounds(rng: SplitMix64, k: int) -> int:
    return min(k, 1 + trailing_ones(rng.next_u64()))


def star_instance(x: int) -> Instance:
    """Star with x edges; edge i (1-based) weighs 2^i."""
    if x < 1:
        raise DomainError(f"A star needs at least one edge, got {x}")
    return Instance.from_edges([("center", f"leaf{i}") for i in range(1, x + 1)], [2 ** i for i in range(1, x + 1)])


@dataclass
class StarSample:
    k: int
    samples: int
    opt_mean: float
    opt_stderr: float
    det_means: List[float]
    det_stderrs: List[float]

    def within(self, expectations: StarExpectations, z: float = 3.0) -> bool:
        """Every empirical mean lies within z standard errors of its exact value."""
        checks = [(self.opt_mean, self.opt_stderr, expectations.e_opt)]
        checks += list(zip(self.det_means, self.det_stderrs, expectations.e_det))
        return all(abs(mean - float(exact)) <= z * err for mean, err, exact in checks)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "samples": self.samples,
            "opt_mean": self.opt_mean,
            "opt_stderr": self.opt_stderr,
            "det_means": self.det_means,
            "det_stderrs": self.det_stderrs,
        }


def _mean_and_error(counts: Dict[int, int], value, samples: int) -> Tuple[float, float]:
    mean = sum(count * value(x) for x, count in counts.items()) / samples
    second = sum(count * value(x) ** 2 for x, count in counts.items()) / samples
    variance = max(0.0, second - mean ** 2) * samples / max(1, samples - 1)
    return mean, math.sqrt(variance / samples)


def sample_star_means(c, samples: int = DEFAULT_STAR_SAMPLES, seed: int = DEFAULT_SEED) -> StarSample:
    """
    Monte-Carlo estimate of E[OPT] and E[DET_j] from `samples` draws of X.
    """
    started = time.time()
    if samples < 2:
        raise DomainError(f"Need at least two samples, got {samples}")
    k = star_rounds(c)
    rng = SplitMix64(seed)
    counts: Dict[int, int] = {}
    for _ in range(samples):
        x = sample_rounds(rng, k)
        counts[x] = counts.get(x, 0) + 1

    opt_mean, opt_err = _mean_and_error(counts, lambda x: float(2 ** x), samples)
    det_means, det_errs = [], []
    for j in range(1, k + 1):
        mean, err = _mean_and_error(counts, lambda x, j=j: float(2 ** j) if x >= j else 0.0, samples)
        det_means.append(mean)
        det_errs.append(err)
    logger.info("star_sampled", k=k, samples=samples, seed=seed, opt_mean=opt_mean, duration_ms=elapsed_ms(started))
    return StarSample(k, samples, opt_mean, opt_err, det_means, det_errs)


# -------------------------
# Strategies
# -------------------------
class FixedEdgePair(AdvicePair):
    """No advice; accepts edge j if it ever arrives."""

    name = "fixed-edge"

    def __init__(self, j: int):
        if j < 1:
            raise DomainError(f"Edge index is 1-based, got {j}")
        self.j = j

    def write_advice(self, instance, tape: AdviceTape) -> None:
        return None

    def make_algorithm(self, tape: AdviceTape):
        return _AcceptEdge(lambda: self.j)


class LastEdgePair(AdvicePair):
    """Advice is X, self-delimited; accepts the last edge, matching the optimum."""

    name = "last-edge"

    def write_advice(self, instance, tape: AdviceTape) -> None:
        tape.write_self_delimited(len(instance.requests))

    def make_algorithm(self, tape: AdviceTape):
        return _AcceptEdge(tape.read_self_delimited)


class _AcceptEdge:
    def __init__(self, target):
        self.target_source = target
        self.target: Optional[int] = None
        self.position = 0

    def decide(self, request) -> int:
        if self.target is None:
            self.target = self.target_source()
        self.position += 1
        return ACCEPT_MAX if self.position == self.target else REJECT_MAX
