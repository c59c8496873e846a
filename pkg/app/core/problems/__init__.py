"""AOC problems: requests, feasibility, exact optima and reductions"""

from .model import (
    AsgBit,
    Edge,
    Instance,
    Outcome,
    Problem,
    Request,
    Subpath,
    Subset,
    SubsequenceView,
    VertexArrival,
)
from .feasibility import FeasibilityChecker, accepted_mask, check_feasible, validate_instance
from .scoring import competitive_ratio, score_output
from .optimum import brute_force_opt
from .reductions import REDUCTION_TARGETS, ReductionResult, reduce_asg, verify_reduction
from .instance_io import instance_from_dict, instance_to_dict, load_instance, save_instance

__all__ = [
    "AsgBit",
    "Edge",
    "FeasibilityChecker",
    "Instance",
    "Outcome",
    "Problem",
    "REDUCTION_TARGETS",
    "ReductionResult",
    "Request",
    "Subpath",
    "Subset",
    "SubsequenceView",
    "VertexArrival",
    "accepted_mask",
    "brute_force_opt",
    "check_feasible",
    "competitive_ratio",
    "instance_from_dict",
    "instance_to_dict",
    "load_instance",
    "reduce_asg",
    "save_instance",
    "score_output",
    "validate_instance",
    "verify_reduction"
]
