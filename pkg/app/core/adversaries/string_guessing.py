"""
Weighted string guessing adversary.

Request i carries weight a^(q_i) with q_1 = 1/2 and
q_i = q_(i-1) + 2^-i if the previous secret bit was 1, q_(i-1) - 2^-i otherwise.
Weights are kept as exact dyadic exponents; a = 2^log2_a may be far too large
for any float, so every cost and ratio is reported in log2 space.

An algorithm reading fewer than n bits must give the same advice to two
secrets. Replaying both up to their first difference exposes either an
infeasible guess or a ratio of at least a^(2^-n) / n.
"""

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from ..advice.covering import CoveringAlgorithm, Direction, build_family_greedy, write_cover_advice
from ..advice.tape import AdviceTape
from ..config.defaults import DEFAULT_C, DEFAULT_GUESSING_LOG2_A
from ..errors import ContractError, DomainError, InvariantViolation, VerifierInapplicable
from ..online import AdvicePair, run_online
from ...logging.logger_factory import LoggerFactory, elapsed_ms

logger = LoggerFactory.get_logger(__name__, service="adversaries")

MAX_GUESSING_N = 12


@dataclass(frozen=True, order=True)
class ExponentWeight:
    """Weight a^q, compared through q."""
    q: Fraction

    def __post_init__(self):
        q = Fraction(self.q)
        if not 0 < q < 1:
            raise DomainError(f"Exponent must lie in (0, 1), got {q}")
        if q.denominator & (q.denominator - 1):
            raise DomainError(f"Exponent must be dyadic, got {q}")
        object.__setattr__(self, "q", q)

    def log2(self, log2_a) -> float:
        return float(self.q * Fraction(log2_a))

    def realize(self, log2_a):
        """a^q exactly when it is a power of two, otherwise as a float."""
        exponent = self.q * Fraction(log2_a)
        if exponent.denominator == 1:
            return Fraction(2) ** exponent.numerator
        return 2.0 ** float(exponent)


def exponent_weights(x: str) -> List[ExponentWeight]:
    """
    Exponents for the secret `x`; entry i depends only on x[:i].
    Args:
        x (str): Secret bit string, at least one bit
    Returns:
        List[ExponentWeight]: One weight per request
    """
    if not x or set(x) - {"0", "1"}:
        raise DomainError(f"Expected a non-empty bit string, got {x!r}")
    q = Fraction(1, 2)
    weights = [ExponentWeight(q)]
    for i in range(2, len(x) + 1):
        step = Fraction(1, 2 ** i)
        q = q + step if x[i - 2] == "1" else q - step
        weights.append(ExponentWeight(q))
    return weights


# -------------------------
# Instances and scoring
# -------------------------
@dataclass(frozen=True)
class GuessingRequest:
    revealed: Optional[int]
    weight: ExponentWeight


@dataclass(frozen=True)
class GuessingInstance:
    secret: str
    requests: Tuple[GuessingRequest, ...] = field(init=False)

    def __post_init__(self):
        weights = exponent_weights(self.secret)
        requests = tuple(
            GuessingRequest(None if i == 0 else int(self.secret[i - 1]), w) for i, w in enumerate(weights)
        )
        object.__setattr__(self, "requests", requests)

    @property
    def n(self) -> int:
        return len(self.secret)

    @property
    def exponents(self) -> List[Fraction]:
        return [r.weight.q for r in self.requests]


def log2_sum(exponents: Sequence[Fraction], log2_a) -> float:
    """log2 of sum(a^q) without leaving log space."""
    if not exponents:
        return -math.inf
    scale = Fraction(log2_a)
    top = max(exponents)
    total = sum(2.0 ** float((q - top) * scale) for q in exponents)
    return float(top * scale) + math.log2(total)


def guessing_feasible(secret: str, output: str) -> bool:
    return len(output) == len(secret) and all(o == "1" for s, o in zip(secret, output) if s == "1")


def log2_ratio(instance: GuessingInstance, output: str, log2_a) -> Optional[float]:
    """log2(ALG / OPT), or None when the output misses a 1."""
    if not guessing_feasible(instance.secret, output):
        return None
    q = instance.exponents
    alg = log2_sum([q[i] for i, o in enumerate(output) if o == "1"], log2_a)
    opt = log2_sum([q[i] for i, s in enumerate(instance.secret) if s == "1"], log2_a)
    return alg - opt


# -------------------------
# Pairs under test
# -------------------------
class GuessZerosPair(AdvicePair):
    """Reads no advice and always guesses 0."""

    name = "guess-zeros"

    def write_advice(self, instance, tape: AdviceTape) -> None:
        return None

    def make_algorithm(self, tape: AdviceTape):
        return _ConstantGuess(0)


class _ConstantGuess:
    def __init__(self, bit: int):
        self.bit = bit

    def decide(self, request) -> int:
        return self.bit


class CoveringGuessPair(AdvicePair):
    """Covering-family index of the secret; answers with the member's bits."""

    name = "covering-guess"

    def __init__(self, n: int, c=DEFAULT_C):
        self.family = build_family_greedy(n, c, Direction.MIN)

    def write_advice(self, instance, tape: AdviceTape) -> None:
        write_cover_advice(self.family, instance.secret, tape)

    def make_algorithm(self, tape: AdviceTape):
        return CoveringAlgorithm(self.family, tape)


# -------------------------
# Verifier
# -------------------------
@dataclass
class LowerBoundWitness:
    """
    Two inputs that share an advice class. `log2_ratio` is the worse of the two
    measured ratios; `verdict` is "ratio", "infeasible" or "unbounded".
    """
    x: str
    colliding_x: str
    advice_class: str
    position: int
    verdict: str
    log2_ratio: Optional[float] = None
    guaranteed: Optional[float] = None

    def meets(self, threshold: float) -> bool:
        return self.verdict != "ratio" or self.log2_ratio >= threshold

    def to_dict(self) -> dict:
        bound = self.log2_ratio if self.verdict == "ratio" else self.verdict
        return {
            "x": self.x,
            "colliding_x": self.colliding_x,
            "advice_class": self.advice_class,
            "position": self.position,
            "log2_ratio_lower_bound": bound,
            "guaranteed_log2_bound": self.guaranteed,
        }


def guaranteed_log2_bound(n: int, log2_a) -> float:
    """log2(a^(2^-n) / n)."""
    return float(Fraction(log2_a) / 2 ** n) - math.log2(n)


@dataclass(frozen=True)
class _GuessRun:
    secret: str
    output: str
    log2_ratio: Optional[float]

    def rank(self) -> float:
        return math.inf if self.log2_ratio is None else self.log2_ratio


def _advice_run(pair: AdvicePair, instance: GuessingInstance, budget: int, log2_a) -> Tuple[str, _GuessRun]:
    """Advice class is the bits the algorithm consumed, not the bits the oracle wrote."""
    written = AdviceTape()
    pair.write_advice(instance, written)
    reader = written.replay(limit=budget)
    output = run_online(pair.make_algorithm(reader), instance.requests)
    consumed = written.prefix(reader.bits_read())
    return consumed, _GuessRun(instance.secret, output, log2_ratio(instance, output, log2_a))


def _first_difference(a: str, b: str) -> int:
    return next(i for i, (u, v) in enumerate(zip(a, b)) if u != v)


def replay_position(x: str, out_x: str, y: str, out_y: str) -> int:
    """
    Index of the first request where the two secrets differ. Both runs saw the
    same advice and the same revealed bits before it, so they must have guessed
    alike up to and including it.
    """
    position = _first_difference(x, y)
    if out_x[:position + 1] != out_y[:position + 1]:
        raise InvariantViolation(f"Runs on {x} and {y} share advice but diverge before request {position}")
    return position


def verify_guessing_lower_bound(pair: AdvicePair, n: int, budget: int, log2_a=DEFAULT_GUESSING_LOG2_A) -> LowerBoundWitness:
    """
    Run `pair` on every secret of length n with at least one 1, reading at most
    `budget` advice bits, and return the worst colliding pair.
    Args:
        pair (AdvicePair): Pair under test for weighted string guessing
        n (int): Secret length, at most 12
        budget (int): Advice bits the algorithm may read
        log2_a (Rational): log2 of the weight base a
    Returns:
        LowerBoundWitness: Colliding secrets and the measured ratio
    """
    started = time.time()
    if not 1 <= n <= MAX_GUESSING_N:
        raise ContractError(f"Guessing verifier enumerates n in 1..{MAX_GUESSING_N}, got {n}")
    if Fraction(log2_a) <= 0:
        raise DomainError(f"log2_a must be positive, got {log2_a}")
    if budget >= n:
        raise VerifierInapplicable(f"A budget of {budget} bits can name every one of the 2^{n} - 1 secrets")

    classes: Dict[str, List[_GuessRun]] = {}
    for bits in product("01", repeat=n):
        x = "".join(bits)
        if "1" not in x:
            continue
        advice, run = _advice_run(pair, GuessingInstance(x), budget, log2_a)
        classes.setdefault(advice, []).append(run)

    best: Optional[LowerBoundWitness] = None
    for advice in sorted(classes):
        witness = worst_pair(classes[advice], advice)
        if witness is not None and (best is None or ranks_above(witness, best)):
            best = witness
    if best is None:
        raise VerifierInapplicable(f"No two secrets share advice with a {budget}-bit budget")
    best.guaranteed = guaranteed_log2_bound(n, log2_a)
    logger.info(
        "guessing_verified",
        pair=pair.name,
        n=n,
        budget=budget,
        classes=len(classes),
        verdict=best.verdict,
        log2_ratio=best.log2_ratio,
        duration_ms=elapsed_ms(started)
    )
    return best


def worst_pair(members: Sequence[_GuessRun], advice: str) -> Optional[LowerBoundWitness]:
    """
    Worst colliding pair over all pairs of one advice class. A pair scores the
    worse of its two runs, so it is the worst run next to the runner-up.
    Ties keep enumeration order.
    """
    if len(members) < 2:
        return None
    ranked = sorted(members, key=lambda run: -run.rank())
    worst, partner = ranked[0], ranked[1]
    position = replay_position(worst.secret, worst.output, partner.secret, partner.output)
    if worst.log2_ratio is None:
        return LowerBoundWitness(worst.secret, partner.secret, advice, position, "infeasible")
    return LowerBoundWitness(worst.secret, partner.secret, advice, position, "ratio", worst.log2_ratio)


def ranks_above(candidate: LowerBoundWitness, current: LowerBoundWitness) -> bool:
    if current.verdict != "ratio":
        return False
    if candidate.verdict != "ratio":
        return True
    return candidate.log2_ratio > current.log2_ratio
