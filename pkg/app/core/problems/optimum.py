import time
from fractions import Fraction
from typing import List, Optional

from ..advice.covering import Direction
from ..config.defaults import DEFAULT_MAX_BRUTE_FORCE_N
from ..errors import ContractError, ResourceLimitError
from ...logging.logger_factory import LoggerFactory, elapsed_ms
from .feasibility import FeasibilityChecker, iter_bits, output_from_mask
from .model import Instance, Outcome

logger = LoggerFactory.get_logger(__name__, service="brute-force")


def brute_force_opt(instance: Instance, weighted: bool = True) -> Outcome:
    """
    Exact offline optimum by exhaustive search over all 2^n outputs.

    Outputs are visited in lexicographic order and only strictly better ones
    replace the incumbent, so ties go to the lexicographically smallest output.
    Branches are cut when the most permissive completion is already infeasible
    (accept everything left for Min problems, nothing left for Max problems) or
    when the score bound cannot beat the incumbent.
    Args:
        instance (Instance): Instance with n <= DEFAULT_MAX_BRUTE_FORCE_N
        weighted (bool): Use the request weights, or unit weights
    Returns:
        Outcome: The optimal feasible outcome
    """
    n = instance.n
    if n > DEFAULT_MAX_BRUTE_FORCE_N:
        raise ResourceLimitError(f"Brute force over 2^{n} outputs exceeds the cap of n={DEFAULT_MAX_BRUTE_FORCE_N}")
    started = time.time()
    checker = FeasibilityChecker(instance)
    weights: List[Fraction] = instance.weights if weighted else [Fraction(1)] * n
    minimize = instance.direction is Direction.MIN
    suffix = [Fraction(0)] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + weights[i]
    rest = [((1 << n) - 1) & ~((1 << i) - 1) for i in range(n + 1)]

    best_mask: Optional[int] = None
    best_score: Optional[Fraction] = None

    def visit(i: int, accepted: int, score: Fraction) -> None:
        nonlocal best_mask, best_score
        if minimize:
            if best_score is not None and score >= best_score:
                return
            if not checker.accepts(accepted | rest[i]):
                return
        else:
            if best_score is not None and score + suffix[i] <= best_score:
                return
            if not checker.accepts(accepted):
                return
        if i == n:
            best_mask, best_score = accepted, score
            return
        # answer bit 0 first keeps the visiting order lexicographic
        if minimize:
            visit(i + 1, accepted, score)
            visit(i + 1, accepted | (1 << i), score + weights[i])
        else:
            visit(i + 1, accepted | (1 << i), score + weights[i])
            visit(i + 1, accepted, score)

    visit(0, 0, Fraction(0))
    if best_mask is None:
        raise ContractError(f"{instance.problem.value} instance admits no feasible output")

    logger.debug(
        "brute_force_opt",
        problem=instance.problem.value,
        n=n,
        score=str(best_score),
        duration_ms=elapsed_ms(started)
    )
    return Outcome(
        output=output_from_mask(instance, best_mask),
        feasible=True,
        score=best_score,
        accepted=tuple(iter_bits(best_mask))
    )
