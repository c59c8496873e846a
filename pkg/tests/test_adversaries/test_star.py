from fractions import Fraction

from app.core.adversaries.star import (
    FixedEdgePair,
    LastEdgePair,
    sample_rounds,
    sample_star_means,
    star_expectations,
    star_instance,
    star_rounds,
    stop_probability,
)
from app.core.errors import DomainError
from app.core.online import simulate
from app.core.prng import SplitMix64
from app.core.problems.optimum import brute_force_opt
from app.core.problems.scoring import score_output

import pytest


def test_expectations_for_ratio_two():
    expectations = star_expectations(2)
    assert expectations.k == 3
    assert expectations.e_opt == 4
    assert expectations.e_det == (2, 2, 2)


@pytest.mark.parametrize("c", [Fraction(c, 2) for c in range(2, 21)])
def test_expectations_hold_for_every_ratio(c):
    expectations = star_expectations(c)
    assert expectations.e_opt == expectations.k + 1
    assert all(value == 2 for value in expectations.e_det)


def test_stop_probabilities_sum_to_one():
    for k in range(1, 12):
        assert sum(stop_probability(j, k) for j in range(1, k + 1)) == 1
    assert stop_probability(0, 3) == 0


def test_rounds_guard():
    assert star_rounds(Fraction(3, 2)) == 2
    with pytest.raises(DomainError):
        star_rounds(Fraction(5, 4))
    with pytest.raises(DomainError):
        star_rounds(Fraction(1, 2))


def test_sampled_rounds_stay_in_range():
    rng = SplitMix64(7)
    draws = [sample_rounds(rng, 3) for _ in range(1000)]
    assert set(draws) <= {1, 2, 3}
    assert 1 in draws and 3 in draws


def test_sampled_means_match():
    sample = sample_star_means(2, samples=20000, seed=1)
    assert sample.k == 3
    assert sample.within(star_expectations(2), z=4.0)


@pytest.mark.slow
def test_sampled_means_match_with_a_million_draws():
    assert sample_star_means(2).within(star_expectations(2), z=4.0)
    assert sample_star_means(3, seed=2).within(star_expectations(3), z=4.0)


def test_last_edge_matches_the_optimum():
    instance = star_instance(3)
    result = simulate(LastEdgePair(), instance)
    assert result.output == brute_force_opt(instance).output == "110"
    assert result.bits_read == 5


def test_fixed_edge_strategy():
    assert simulate(FixedEdgePair(2), star_instance(3)).output == "101"
    missed = simulate(FixedEdgePair(2), star_instance(1))
    assert score_output(star_instance(1), missed.output).score == 0
    with pytest.raises(DomainError):
        FixedEdgePair(0)
    with pytest.raises(DomainError):
        star_instance(0)
