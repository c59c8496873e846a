import math

from app.core.adversaries.geometric import (
    DoublingGuessPair,
    GreedyPrefixPair,
    default_prefix_budget,
    geometric_prefix_family,
    verify_prefix_lower_bound,
)
from app.core.errors import ContractError, DomainError, VerifierInapplicable
from app.core.problems.model import Problem
from app.core.problems.feasibility import check_feasible
from app.core.problems.optimum import brute_force_opt

import pytest


@pytest.mark.parametrize("problem", [Problem.INDEPENDENT_SET, Problem.CLIQUE, Problem.MATCHING, Problem.DISJOINT_PATH])
def test_prefix_optimum_is_the_last_request(problem):
    family = geometric_prefix_family(problem, 5, 10)
    assert [prefix.n for prefix in family] == [1, 2, 3, 4, 5]
    for i, prefix in enumerate(family, start=1):
        assert brute_force_opt(prefix).score == 10 ** i


def test_family_guards():
    with pytest.raises(ContractError):
        geometric_prefix_family(Problem.VERTEX_COVER, 3)
    with pytest.raises(DomainError):
        geometric_prefix_family(Problem.MATCHING, 3, 1)
    with pytest.raises(DomainError):
        geometric_prefix_family(Problem.MATCHING, 0)


def test_greedy_loses_a_factor_of_f():
    witness = verify_prefix_lower_bound(GreedyPrefixPair(Problem.MATCHING), Problem.MATCHING, 8, 10)
    assert witness.verdict == "ratio"
    assert witness.log2_ratio == pytest.approx(7 * math.log2(10))
    assert witness.meets(witness.guaranteed)


def test_doubling_guess_loses_a_factor_of_f():
    witness = verify_prefix_lower_bound(DoublingGuessPair(2), Problem.INDEPENDENT_SET, 8, 10)
    assert witness.verdict == "ratio"
    assert witness.log2_ratio == pytest.approx(3 * math.log2(10))
    assert witness.meets(math.log2(10))


def test_prefix_budget():
    assert default_prefix_budget(8) == 2
    with pytest.raises(VerifierInapplicable):
        verify_prefix_lower_bound(DoublingGuessPair(3), Problem.MATCHING, 8, budget=3)


@pytest.mark.parametrize("problem", [Problem.INDEPENDENT_SET, Problem.CLIQUE, Problem.MATCHING, Problem.DISJOINT_PATH])
def test_prefixes_nest_and_optima_grow_to_eight(problem):
    family = geometric_prefix_family(problem, 8, 10)
    for shorter, longer in zip(family, family[1:]):
        assert longer.requests[:-1] == shorter.requests
    assert brute_force_opt(family[-1]).score == 10 ** 8
    # any two requests together are infeasible
    assert not check_feasible(family[1], "00")
