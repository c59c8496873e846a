"""
advicebench: simulate online algorithms with advice.
Oracles write advice tapes, online algorithms read them request by request, and
every run is scored against an exact brute-force optimum.
"""

from .core import AdvicePair, AdviceTape, Simulation, simulate

__all__ = [
    "AdvicePair",
    "AdviceTape",
    "Simulation",
    "simulate"
]

__version__ = "0.1.0"
