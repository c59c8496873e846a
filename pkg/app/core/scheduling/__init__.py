"""Online scheduling with advice on related and unrelated machines"""

from .objective import Objective, ObjectiveKind
from .model import Job, SchedulingInstance, load_scheduling_instance, load_vector, save_scheduling_instance
from .brute_force import Schedule, brute_force_schedule
from .runner import SchedulingPair, run_scheduling_pair
from .unrelated_norm import UnrelatedNormPair, run_unrelated_norm
from .related_norm import RelatedNormPair, run_related_norm
from .unrelated_cover import UnrelatedCoverPair, run_unrelated_cover


def evaluate(objective: Objective, loads):
    return objective.evaluate(loads)


__all__ = [
    "Job",
    "Objective",
    "ObjectiveKind",
    "RelatedNormPair",
    "Schedule",
    "SchedulingInstance",
    "SchedulingPair",
    "UnrelatedCoverPair",
    "UnrelatedNormPair",
    "brute_force_schedule",
    "evaluate",
    "load_scheduling_instance",
    "load_vector",
    "run_related_norm",
    "run_scheduling_pair",
    "run_unrelated_cover",
    "run_unrelated_norm",
    "save_scheduling_instance"
]
