"""Advice tape and covering-family advice"""

from .tape import AdviceTape
from .covering import (
    CoveringAlgorithm,
    CoveringFamily,
    Direction,
    b_bound,
    bit_below,
    build_family_greedy,
    lookup_cover,
    run_unweighted_aoc,
    write_cover_advice,
)
from .family_cache import FamilyCache

__all__ = [
    "AdviceTape",
    "CoveringAlgorithm",
    "CoveringFamily",
    "Direction",
    "FamilyCache",
    "b_bound",
    "bit_below",
    "build_family_greedy",
    "lookup_cover",
    "run_unweighted_aoc",
    "write_cover_advice"
]
