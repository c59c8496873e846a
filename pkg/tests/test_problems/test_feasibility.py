import math
from fractions import Fraction

from app.core.errors import ContractError, DomainError
from app.core.problems.feasibility import accepted_mask, check_feasible, validate_instance
from app.core.problems.model import (
    Edge,
    Instance,
    Problem,
    Request,
    Subpath,
    Subset,
    VertexArrival,
)
from app.core.problems.scoring import competitive_ratio, score_output
from app.core.advice.covering import Direction

import pytest


def path_graph(problem, weights=None):
    return Instance.from_graph(problem, 3, [(0, 1), (1, 2)], weights)


def test_vertex_cover_feasibility():
    instance = path_graph(Problem.VERTEX_COVER)
    assert check_feasible(instance, "010")
    assert check_feasible(instance, "111")
    assert not check_feasible(instance, "100")


def test_independent_set_feasibility():
    triangle = Instance.from_graph(Problem.INDEPENDENT_SET, 3, [(0, 1), (1, 2), (0, 2)])
    # Max problems accept with 0
    assert check_feasible(triangle, "110")
    assert check_feasible(triangle, "111")
    assert not check_feasible(triangle, "010")


def test_clique_feasibility():
    empty = Instance.from_graph(Problem.CLIQUE, 3, [])
    assert check_feasible(empty, "011")
    assert not check_feasible(empty, "001")
    triangle = Instance.from_graph(Problem.CLIQUE, 3, [(0, 1), (1, 2), (0, 2)])
    assert check_feasible(triangle, "000")


def test_matching_feasibility():
    instance = Instance.from_edges([("a", "b"), ("b", "c"), ("c", "d")])
    assert check_feasible(instance, "010")
    assert not check_feasible(instance, "001")


def test_disjoint_path_feasibility():
    apart = Instance(Problem.DISJOINT_PATH, (Request(Subpath(1, 3)), Request(Subpath(3, 5))), path_length=5)
    assert check_feasible(apart, "00")
    overlapping = Instance(Problem.DISJOINT_PATH, (Request(Subpath(1, 3)), Request(Subpath(2, 4))), path_length=5)
    assert not check_feasible(overlapping, "00")
    assert check_feasible(overlapping, "01")


def test_cycle_finding_feasibility():
    triangle = Instance.from_graph(Problem.CYCLE_FINDING, 3, [(0, 1), (1, 2), (0, 2)])
    assert check_feasible(triangle, "111")
    assert not check_feasible(triangle, "110")


def test_dominating_set_feasibility():
    star = Instance.from_graph(Problem.DOMINATING_SET, 3, [(0, 1), (0, 2)])
    assert check_feasible(star, "100")
    assert check_feasible(star, "011")
    assert not check_feasible(star, "010")


def test_set_cover_feasibility():
    subsets = [{1, 2}, {3}, {2, 3}]
    instance = Instance(Problem.SET_COVER, tuple(Request(Subset(frozenset(s))) for s in subsets), universe_size=3)
    assert check_feasible(instance, "110")
    assert check_feasible(instance, "101")
    assert not check_feasible(instance, "011")


def test_string_guessing_feasibility():
    instance = Instance.min_asg("101")
    assert check_feasible(instance, "111")
    assert check_feasible(instance, "101")
    assert not check_feasible(instance, "001")


def test_instance_rejects_bad_requests():
    with pytest.raises(ContractError, match="not arrived"):
        Instance(Problem.VERTEX_COVER, (Request(VertexArrival((1,))),))
    with pytest.raises(ContractError, match="self-loop"):
        Instance.from_edges([("a", "a")])
    with pytest.raises(ContractError, match="at least one request"):
        Instance(Problem.MATCHING, ())
    with pytest.raises(ContractError, match="carries"):
        Instance(Problem.MATCHING, (Request(VertexArrival()),))
    with pytest.raises(DomainError):
        Request(Edge("a", "b"), 0)


def test_accepted_mask_checks_length():
    instance = Instance.min_asg("10")
    assert accepted_mask(instance, "11") == 0b11
    with pytest.raises(ContractError, match="3 bits"):
        accepted_mask(instance, "110")


def test_validate_instance():
    no_cycle = Instance.from_graph(Problem.CYCLE_FINDING, 3, [(0, 1), (1, 2)])
    with pytest.raises(ContractError, match="no feasible output"):
        validate_instance(no_cycle)
    assert validate_instance(path_graph(Problem.VERTEX_COVER)).n == 3


def test_score_output_weighted_and_unit():
    triangle = Instance.from_graph(Problem.INDEPENDENT_SET, 3, [(0, 1), (1, 2), (0, 2)], [1, 2, 3])
    assert score_output(triangle, "110").score == 3
    assert score_output(triangle, "110", weighted=False).score == 1
    infeasible = score_output(triangle, "000")
    assert not infeasible.feasible
    assert infeasible.score == -math.inf


def test_competitive_ratio_edges():
    assert competitive_ratio(Direction.MIN, Fraction(0), Fraction(0)) == 1
    assert competitive_ratio(Direction.MIN, Fraction(3), Fraction(2)) == Fraction(3, 2)
    assert competitive_ratio(Direction.MAX, Fraction(2), Fraction(3)) == Fraction(3, 2)
    assert competitive_ratio(Direction.MAX, Fraction(0), Fraction(5)) == math.inf
    assert competitive_ratio(Direction.MIN, math.inf, Fraction(5)) == math.inf


def test_subsequence_reindexes_vertices():
    instance = Instance.from_graph(Problem.INDEPENDENT_SET, 3, [(0, 2), (1, 2)], [1, 2, 3])
    sub = instance.subsequence([0, 2])
    assert sub.n == 2
    assert sub.requests[1].payload == VertexArrival((0,))
    assert sub.weights == [1, 3]
