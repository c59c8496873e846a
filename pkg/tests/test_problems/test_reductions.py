from itertools import product

from app.core.advice.covering import Direction, build_family_greedy, run_unweighted_aoc
from app.core.advice.tape import AdviceTape
from app.core.errors import ContractError
from app.core.problems.model import Instance, Problem
from app.core.problems.optimum import brute_force_opt
from app.core.problems.reductions import REDUCTION_TARGETS, reduce_asg, verify_reduction
from app.core.problems.scoring import score_output

import pytest


def covering_target_run(result, family):
    """Covering pair on the transformed instance; accept everything when it has no feasible output."""
    transformed = result.transformed
    try:
        opt = brute_force_opt(transformed, weighted=False)
    except ContractError:
        return score_output(transformed, "1" * transformed.n)
    return run_unweighted_aoc(transformed, family, opt.output, AdviceTape())


def check_all_secrets(n):
    family = build_family_greedy(n, 2, Direction.MIN)
    for bits in product("01", repeat=n):
        source = Instance.min_asg("".join(bits))
        for target in REDUCTION_TARGETS:
            result = reduce_asg(source, target)
            assert result.transformed.n == source.n
            assert result.transformed.problem is target
            assert verify_reduction(source, covering_target_run(result, family), result)


def test_reductions_hold_for_six_bits():
    check_all_secrets(6)


@pytest.mark.slow
def test_reductions_hold_for_ten_bits():
    check_all_secrets(10)


def test_reduction_budgets():
    source = Instance.min_asg("0110")
    width = source.n.bit_length()
    assert reduce_asg(source, Problem.VERTEX_COVER).g_budget == width
    assert reduce_asg(source, Problem.CYCLE_FINDING).g_budget == 1 + 2 * width
    assert reduce_asg(source, Problem.SET_COVER).g_budget == 2 + 2 * width


def test_degenerate_reductions():
    assert reduce_asg(Instance.min_asg("0100"), Problem.CYCLE_FINDING).degenerate
    assert not reduce_asg(Instance.min_asg("1101"), Problem.CYCLE_FINDING).degenerate
    assert reduce_asg(Instance.min_asg("0000"), Problem.DOMINATING_SET).degenerate
    assert not reduce_asg(Instance.min_asg("0000"), Problem.VERTEX_COVER).degenerate


def test_reduction_contract_errors():
    with pytest.raises(ContractError, match="start from min_asg"):
        reduce_asg(Instance.from_edges([("a", "b")]), Problem.VERTEX_COVER)
    with pytest.raises(ContractError, match="No reduction"):
        reduce_asg(Instance.min_asg("01"), Problem.MATCHING)
