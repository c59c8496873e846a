from fractions import Fraction

from app.core.adversaries.string_guessing import GuessingInstance
from app.core.errors import ContractError, DomainError
from app.core.problems.model import Problem
from app.core.scheduling.model import SchedulingInstance
from app.core.scheduling.objective import Objective
from app.harness.generators import (
    GENERATORS,
    GeneratorSpec,
    generate,
    instance_document,
    load_instance_document,
    parse_objective,
)

import pytest


@pytest.mark.parametrize("kind", sorted(GENERATORS))
def test_generators_are_deterministic(kind):
    spec = GeneratorSpec(kind=kind, n=5, seed=11)
    first, second = generate(spec), generate(spec)
    assert instance_document(first) == instance_document(second)


def test_seeds_change_the_instance():
    a = generate(GeneratorSpec(kind="random_graph", n=10, seed=1))
    b = generate(GeneratorSpec(kind="random_graph", n=10, seed=2))
    assert instance_document(a) != instance_document(b)


def test_uniform_weight_range():
    star = generate(GeneratorSpec(kind="star", n=30, weight_low=1, weight_high=5))
    assert all(w.denominator == 1 and 1 <= w <= 5 for w in star.weights)
    with pytest.raises(DomainError):
        generate(GeneratorSpec(kind="star", n=3, weight_low=5, weight_high=1))


def test_log_uniform_weights_span_the_decades():
    star = generate(GeneratorSpec(kind="star", n=50, weight_decades=2))
    assert all(1 <= w <= 100 for w in star.weights)


def test_guessing_secret_always_has_a_one():
    for seed in range(20):
        instance = generate(GeneratorSpec(kind="guessing_adversary", n=3, seed=seed, p=Fraction(1, 10)))
        assert isinstance(instance, GuessingInstance)
        assert "1" in instance.secret


def test_geometric_prefix_is_the_full_family_member():
    instance = generate(GeneratorSpec(kind="geometric_prefix", n=4))
    assert instance.problem is Problem.MATCHING
    assert instance.weights == [10, 100, 1000, 10000]


def test_star_adversary_stops_within_k_rounds():
    for seed in range(20):
        instance = generate(GeneratorSpec(kind="star_adversary", n=1, seed=seed, c=2))
        assert 1 <= instance.n <= 3
        assert instance.weights == [2 ** i for i in range(1, instance.n + 1)]


def test_scheduling_kinds():
    unrelated = generate(GeneratorSpec(kind="random_unrelated", n=4, m=3, objective="l2"))
    assert unrelated.machines == 3 and unrelated.objective == Objective.lp(2)
    related = generate(GeneratorSpec(kind="random_related", n=4, m=2))
    assert related.is_related
    identical = generate(GeneratorSpec(kind="identical_jobs", n=4, m=2, objective="minload"))
    assert len({job.loads for job in identical.jobs}) == 1


def test_parse_objective():
    assert parse_objective("linf") == Objective.makespan()
    assert parse_objective("L1") == Objective.lp(1)
    assert parse_objective("lp:3/2").p == Fraction(3, 2)
    assert parse_objective("minload") == Objective.min_load()
    with pytest.raises(DomainError):
        parse_objective("median")


def test_generate_guards():
    with pytest.raises(ContractError, match="Unknown generator kind"):
        generate(GeneratorSpec(kind="hypercube", n=3))
    with pytest.raises(DomainError):
        generate(GeneratorSpec(kind="path", n=0))


def test_spec_dict_round_trip():
    spec = GeneratorSpec(kind="random_graph", n=6, seed=9, p=Fraction(1, 3), problem="clique")
    assert GeneratorSpec.from_dict(spec.to_dict()) == spec
    assert spec.to_dict()["p"] == "1/3"


@pytest.mark.parametrize("spec", [
    GeneratorSpec(kind="asg_random", n=6),
    GeneratorSpec(kind="path", n=4),
    GeneratorSpec(kind="random_related", n=3),
    GeneratorSpec(kind="guessing_adversary", n=4),
])
def test_documents_load_back(spec):
    instance = generate(spec)
    loaded = load_instance_document(instance_document(instance))
    assert type(loaded) is type(instance)
    assert instance_document(loaded) == instance_document(instance)
    if isinstance(instance, SchedulingInstance):
        assert loaded.jobs == instance.jobs
