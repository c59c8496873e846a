"""Experiment harness: seeded generators, single runs and batches"""

from ..core.report import RunReport
from ..core.prng import SplitMix64, trial_seed
from .generators import GENERATORS, GeneratorSpec, generate, instance_document, load_instance_document, parse_objective
from .runner import ALGORITHMS, BatchSummary, ReportWriter, batch, run_aoc_pair, run_experiment, run_instance, summarize

__all__ = [
    "ALGORITHMS",
    "BatchSummary",
    "GENERATORS",
    "GeneratorSpec",
    "ReportWriter",
    "RunReport",
    "SplitMix64",
    "batch",
    "generate",
    "instance_document",
    "load_instance_document",
    "parse_objective",
    "run_aoc_pair",
    "run_experiment",
    "run_instance",
    "summarize",
    "trial_seed"
]
