"""Weighted AOC algorithms built on exponential sparsification"""

from .sparsify import SparsifyParams, WeightClass, WeightTag, bucket_of, ceil_log, classify_weight
from .runner import BucketAnswers, WeightedPair, run_weighted_pair
from .sparsified_max import SparsifiedMaxPair, run_sparsified_max
from .sparsified_min import SparsifiedMinPair, run_sparsified_min
from .bases import CoveringBase, GreedyBase, UnweightedBase
from .best_bucket import BestBucketPair, run_best_bucket

__all__ = [
    "BestBucketPair",
    "BucketAnswers",
    "CoveringBase",
    "GreedyBase",
    "SparsifiedMaxPair",
    "SparsifiedMinPair",
    "SparsifyParams",
    "UnweightedBase",
    "WeightClass",
    "WeightTag",
    "WeightedPair",
    "bucket_of",
    "ceil_log",
    "classify_weight",
    "run_best_bucket",
    "run_sparsified_max",
    "run_sparsified_min",
    "run_weighted_pair"
]
