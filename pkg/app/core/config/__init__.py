"""Configuration module for advicebench"""

from .defaults import *

__all__ = [
    "DEFAULT_MAX_BRUTE_FORCE_N",
    "DEFAULT_MAX_ASSIGNMENTS",
    "DEFAULT_MAX_FAMILY_N",
    "DEFAULT_C",
    "DEFAULT_EPSILON",
    "DEFAULT_BEST_BUCKET_EPSILON",
    "DEFAULT_ADVICE_K1",
    "DEFAULT_ADVICE_K2",
    "DEFAULT_ADVICE_K3",
    "DEFAULT_ADVICE_K_LOG",
    "DEFAULT_WEIGHT_DECADES",
    "DEFAULT_EDGE_PROBABILITY",
    "DEFAULT_GUESSING_LOG2_A",
    "DEFAULT_GEOMETRIC_F",
    "DEFAULT_STAR_SAMPLES",
    "DEFAULT_WORKERS",
    "DEFAULT_SEED",
    "DEFAULT_CACHE_DIR"
]
