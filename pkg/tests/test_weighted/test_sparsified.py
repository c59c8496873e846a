from fractions import Fraction

from app.core.advice.tape import AdviceTape
from app.core.errors import ContractError, DomainError
from app.core.online import run_online
from app.core.problems.model import Instance, Problem
from app.core.weighted.sparsified_max import SparsifiedMaxPair, run_sparsified_max, writes_verbatim
from app.core.weighted.sparsified_min import SparsifiedMinPair, run_sparsified_min
from app.harness.generators import GeneratorSpec, generate

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st


def complete_graph(problem, weights):
    n = len(weights)
    return Instance.from_graph(problem, n, [(i, j) for j in range(n) for i in range(j)], weights)


def test_verbatim_threshold():
    assert writes_verbatim(3, Fraction(1))
    assert not writes_verbatim(4, Fraction(1))
    assert writes_verbatim(5, Fraction(1, 2))
    assert not writes_verbatim(6, Fraction(1, 2))


def test_small_instance_is_answered_verbatim():
    instance = complete_graph(Problem.INDEPENDENT_SET, [10, 100, 1000])
    report = run_sparsified_max(instance, c=2, epsilon=1)
    assert report.feasible
    assert report.ratio == 1
    assert report.extra["output"] == "110"
    # self-delimited 3 (5 bits) plus three answer bits
    assert report.bits_read == 8


def test_clique_verbatim():
    report = run_sparsified_max(complete_graph(Problem.CLIQUE, [10, 100, 1000]), c=2, epsilon=1)
    assert report.ratio == 1
    assert report.alg_score == 1110


@pytest.mark.parametrize("seed", range(8))
def test_sparsified_max_on_random_independent_sets(seed):
    spec = GeneratorSpec(kind="random_graph", n=10, seed=seed, weight_decades=3, problem="independent_set")
    instance = generate(spec)
    report = run_sparsified_max(instance, c=2, epsilon=Fraction(1, 2))
    assert report.feasible
    assert report.ratio <= 3
    assert report.extra["ratio_bound"] == 3
    assert report.bits_read <= report.advice_bound


@pytest.mark.parametrize("seed", range(8))
def test_sparsified_min_on_random_vertex_covers(seed):
    spec = GeneratorSpec(kind="random_graph", n=10, seed=seed, weight_low=1, weight_high=100, problem="vertex_cover")
    instance = generate(spec)
    report = run_sparsified_min(instance, c=2, epsilon=1)
    assert report.feasible
    assert report.ratio <= 4
    assert report.alg_score <= 4 * report.opt_score


def test_sparsified_min_accepts_all_unimportant_requests():
    # one heavy edge endpoint pair and many feather-light vertices
    weights = [Fraction(1, 10 ** 6)] * 8 + [1000, 1000]
    edges = [(8, 9)] + [(i, i + 1) for i in range(7)]
    instance = Instance.from_graph(Problem.VERTEX_COVER, 10, edges, weights)
    report = run_sparsified_min(instance, c=2, epsilon=1)
    assert report.feasible
    assert report.extra["output"][:8] == "11111111"
    assert report.ratio <= 4


def test_direction_mismatch():
    vc = Instance.from_graph(Problem.VERTEX_COVER, 2, [(0, 1)])
    with pytest.raises(ContractError, match="needs a max problem, got vertex_cover"):
        run_sparsified_max(vc)
    independent = Instance.from_graph(Problem.INDEPENDENT_SET, 2, [(0, 1)])
    with pytest.raises(ContractError, match="needs a min problem"):
        run_sparsified_min(independent)


def test_parameter_checks():
    with pytest.raises(DomainError):
        SparsifiedMaxPair(c=1)
    with pytest.raises(DomainError):
        SparsifiedMaxPair(epsilon=2)
    with pytest.raises(DomainError):
        SparsifiedMinPair(wmin=0)
    with pytest.raises(DomainError):
        SparsifiedMinPair(wmin=5, wmax=2)


def test_weights_outside_the_announced_range():
    vc = Instance.from_graph(Problem.VERTEX_COVER, 2, [(0, 1)], [1, 3])
    with pytest.raises(ContractError, match="outside"):
        run_sparsified_min(vc, wmin=2, wmax=10)


def test_ratio_bounds():
    assert SparsifiedMaxPair(2, Fraction(1, 2)).ratio_bound(12) == 3
    assert SparsifiedMaxPair(2, Fraction(1, 2)).ratio_bound(4) == 1
    assert SparsifiedMinPair(3, 1).ratio_bound(10) == 6


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32), st.integers(min_value=1, max_value=9))
def test_decisions_only_depend_on_the_prefix(seed, k):
    instance = generate(GeneratorSpec(kind="random_graph", n=9, seed=seed, weight_decades=4, problem="independent_set"))
    pair = SparsifiedMaxPair(2, Fraction(1, 2))
    tape = AdviceTape()
    pair.write_advice(instance, tape)
    full = run_online(pair.make_algorithm(tape.replay()), instance.requests)
    prefix = run_online(pair.make_algorithm(tape.replay()), instance.requests[:k])
    assert full[:k] == prefix
