"""Seeded acceptance batches; run with `pytest -m slow`."""

from fractions import Fraction

from app.harness.generators import GeneratorSpec
from app.harness.runner import batch

import pytest

pytestmark = pytest.mark.slow


def test_sparsified_max_on_independent_sets():
    spec = GeneratorSpec(kind="random_graph", n=18, seed=1, problem="independent_set", weight_decades=6)
    summary = batch([spec], "sparsified-max", {"c": 2, "epsilon": "1/2"}, trials=200)
    assert summary.errors == 0
    assert summary.max_ratio <= 3
    assert summary.per_n[18].fitted_k1 is not None


def test_sparsified_min_on_vertex_covers():
    spec = GeneratorSpec(kind="random_graph", n=16, seed=1, problem="vertex_cover", weight_low=1, weight_high=100)
    summary = batch([spec], "sparsified-min", {"c": 2, "epsilon": 1}, trials=200)
    assert summary.errors == 0
    assert summary.max_ratio <= 4


def test_best_bucket_on_matchings():
    spec = GeneratorSpec(kind="random_matching", n=16, seed=1, weight_decades=8)
    summary = batch([spec], "best-bucket", {"c": 2}, trials=100)
    assert summary.errors == 0
    assert summary.max_ratio <= 48
    assert summary.per_n[16].fitted_k is not None


def test_best_bucket_bits_per_size():
    specs = [GeneratorSpec(kind="random_matching", n=n, seed=1, weight_decades=8) for n in (8, 12, 16, 20)]
    summary = batch(specs, "best-bucket", {"c": 2}, trials=5)
    assert sorted(summary.per_n) == [8, 12, 16, 20]
    assert all(row.fitted_k is not None for row in summary.per_n.values())


@pytest.mark.parametrize("kind,objective,algorithm,n", [
    ("random_unrelated", "linf", "unrelated-norm", 12),
    ("random_unrelated", "l2", "unrelated-norm", 12),
    ("random_related", "l2", "related-norm", 12),
    ("random_unrelated", "minload", "unrelated-cover", 10),
])
def test_scheduling_pairs(kind, objective, algorithm, n):
    spec = GeneratorSpec(kind=kind, n=n, m=2, seed=1, weight_decades=2, objective=objective)
    summary = batch([spec], algorithm, {"epsilon": 1}, trials=100)
    assert summary.errors == 0
    assert summary.max_ratio <= 1 + Fraction(1)


def test_covering_on_string_guessing():
    specs = [GeneratorSpec(kind="asg_random", n=n, seed=1) for n in (6, 8, 10)]
    summary = batch(specs, "covering", {"c": 2}, trials=50)
    assert summary.errors == 0
    assert summary.max_ratio <= 2
