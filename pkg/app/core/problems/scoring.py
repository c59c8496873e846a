import math
from fractions import Fraction
from typing import Union

from ..advice.covering import Direction
from .feasibility import accepted_mask, check_feasible, iter_bits
from .model import Instance, Outcome

Score = Union[Fraction, float]


def infeasible_score(instance: Instance) -> float:
    return math.inf if instance.direction is Direction.MIN else -math.inf


def score_output(instance: Instance, output: str, weighted: bool = True) -> Outcome:
    """
    Score an answer string: total accepted weight (cost for Min, profit for Max).
    With weighted=False every weight counts as 1, so the score is ones(y) for Min
    and zeros(y) for Max.
    """
    mask = accepted_mask(instance, output)
    accepted = tuple(iter_bits(mask))
    if not check_feasible(instance, output):
        return Outcome(output=output, feasible=False, score=infeasible_score(instance), accepted=accepted)
    if weighted:
        score = sum((instance.requests[i].weight for i in accepted), Fraction(0))
    else:
        score = Fraction(len(accepted))
    return Outcome(output=output, feasible=True, score=score, accepted=accepted)


def competitive_ratio(direction: Direction, alg: Score, opt: Score) -> Score:
    """ALG/OPT for Min, OPT/ALG for Max; 1 when both are 0, inf when ALG is infeasible or 0 against a positive OPT."""
    if isinstance(alg, float) and math.isinf(alg):
        return math.inf
    if direction is Direction.MIN:
        if opt == 0:
            return Fraction(1) if alg == 0 else math.inf
        return Fraction(alg) / Fraction(opt)
    if alg == 0:
        return Fraction(1) if opt == 0 else math.inf
    return Fraction(opt) / Fraction(alg)
