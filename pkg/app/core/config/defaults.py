from fractions import Fraction

# Brute-force and construction caps
DEFAULT_MAX_BRUTE_FORCE_N = 20
DEFAULT_MAX_ASSIGNMENTS = 10 ** 7
DEFAULT_MAX_FAMILY_N = 20

# Algorithm parameters
DEFAULT_C = Fraction(2)
DEFAULT_EPSILON = Fraction(1, 2)
DEFAULT_BEST_BUCKET_EPSILON = Fraction(1, 2)

# Constants reported next to the advice budgets (never asserted by the runners)
DEFAULT_ADVICE_K1 = 4
DEFAULT_ADVICE_K2 = 64
DEFAULT_ADVICE_K3 = 8
DEFAULT_ADVICE_K_LOG = 8

# Generators and adversaries
DEFAULT_WEIGHT_DECADES = 6
DEFAULT_EDGE_PROBABILITY = Fraction(1, 2)
DEFAULT_GUESSING_LOG2_A = 2048
DEFAULT_GEOMETRIC_F = 10
DEFAULT_STAR_SAMPLES = 10 ** 6

# Harness
DEFAULT_WORKERS = 4
DEFAULT_SEED = 1
DEFAULT_CACHE_DIR = "~/.advicebench/families"
