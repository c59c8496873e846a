"""Core advicebench functionality"""

from .advice import AdviceTape
from .online import AdvicePair, OnlineAlgorithm, Simulation, run_online, simulate
from .report import RunReport

__all__ = [
    "AdvicePair",
    "AdviceTape",
    "OnlineAlgorithm",
    "RunReport",
    "Simulation",
    "run_online",
    "simulate"
]
