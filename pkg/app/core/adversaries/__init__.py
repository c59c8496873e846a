"""Lower-bound constructions and their verifiers"""

from .string_guessing import (
    CoveringGuessPair,
    ExponentWeight,
    GuessingInstance,
    GuessZerosPair,
    LowerBoundWitness,
    exponent_weights,
    verify_guessing_lower_bound
)
from .geometric import DoublingGuessPair, GreedyPrefixPair, geometric_prefix_family, verify_prefix_lower_bound
from .star import FixedEdgePair, LastEdgePair, StarExpectations, sample_star_means, star_expectations, star_instance

__all__ = [
    "CoveringGuessPair",
    "DoublingGuessPair",
    "ExponentWeight",
    "FixedEdgePair",
    "GreedyPrefixPair",
    "GuessZerosPair",
    "GuessingInstance",
    "LastEdgePair",
    "LowerBoundWitness",
    "StarExpectations",
    "exponent_weights",
    "geometric_prefix_family",
    "sample_star_means",
    "star_expectations",
    "star_instance",
    "verify_guessing_lower_bound",
    "verify_prefix_lower_bound"
]
