from fractions import Fraction

from app.core.advice.tape import AdviceTape
from app.core.errors import ContractError
from app.core.problems.model import Instance, Problem
from app.core.weighted.bases import CoveringBase, GreedyBase
from app.core.weighted.best_bucket import BestBucketPair, run_best_bucket
from app.harness.generators import GeneratorSpec, generate

import pytest


def test_heavy_edge_bucket_is_chosen():
    star = Instance.from_edges([("c", "a"), ("c", "b")], [1, 100])
    pair = BestBucketPair(problem=Problem.MATCHING)
    assert pair.chosen_bucket(star) == 11
    report = run_best_bucket(star)
    assert report.extra["output"] == "10"
    assert report.ratio == 1


def test_ratio_bound():
    pair = BestBucketPair(problem=Problem.MATCHING)
    # 2 * 3/2 * 15 buckets * 16/15
    assert pair.ratio_bound(16) == 48
    assert pair.threshold(16) == 14


def test_best_bucket_header_for_the_first_request():
    star = Instance.from_edges([("c", "a"), ("c", "b")], [100, 1])
    tape = AdviceTape()
    BestBucketPair(problem=Problem.MATCHING).write_advice(star, tape)
    # greedy base writes nothing, so the tape is self-delimited 2
    assert tape.bits == "11010"


@pytest.mark.parametrize("seed", range(10))
def test_greedy_best_bucket_on_random_matchings(seed):
    instance = generate(GeneratorSpec(kind="random_matching", n=12, seed=seed, weight_decades=6))
    report = run_best_bucket(instance)
    assert report.feasible
    assert report.ratio <= report.extra["ratio_bound"]


@pytest.mark.parametrize("seed", range(5))
def test_covering_best_bucket_on_random_independent_sets(seed):
    instance = generate(GeneratorSpec(kind="random_graph", n=10, seed=seed, weight_decades=4, problem="independent_set"))
    report = run_best_bucket(instance, base=CoveringBase(2))
    assert report.feasible
    assert report.ratio <= report.extra["ratio_bound"]


@pytest.mark.slow
def test_best_bucket_over_eight_decades():
    for seed in range(100):
        instance = generate(GeneratorSpec(kind="random_matching", n=16, seed=seed, weight_decades=8))
        report = run_best_bucket(instance)
        assert report.feasible
        assert report.ratio <= 48


def test_algorithm_needs_the_problem():
    with pytest.raises(ContractError, match="needs the problem"):
        BestBucketPair().make_algorithm(AdviceTape())


def test_min_problems_are_rejected():
    vc = Instance.from_graph(Problem.VERTEX_COVER, 2, [(0, 1)])
    with pytest.raises(ContractError, match="needs a max problem"):
        run_best_bucket(vc)


def test_covering_base_checks_c():
    with pytest.raises(ContractError):
        CoveringBase(1)
    assert GreedyBase().c == Fraction(2)
