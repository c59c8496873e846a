import math
from fractions import Fraction
from itertools import product

from app.core.advice.covering import (
    CoveringFamily,
    Direction,
    b_bound,
    bit_below,
    build_family_greedy,
    lookup_cover,
    run_unweighted_aoc,
)
from app.core.advice.family_cache import FamilyCache
from app.core.advice.tape import AdviceTape
from app.core.errors import ContractError, DomainError, ResourceLimitError
from app.core.problems.model import Instance

import pytest


def all_strings(n):
    return ["".join(bits) for bits in product("01", repeat=n)]


def test_b_bound_values():
    assert b_bound(10, 1) == 10.0
    assert b_bound(10, 2) == pytest.approx(10 * math.log2(1.25))
    assert b_bound(0, 3) == 0.0
    with pytest.raises(DomainError):
        b_bound(4, Fraction(1, 2))


def test_b_bound_is_decreasing_in_c():
    assert b_bound(12, 2) > b_bound(12, 3) > b_bound(12, 10)


def test_bit_below():
    assert bit_below("0101", "0111")
    assert not bit_below("1000", "0111")
    assert bit_below("0000", "0000")


@pytest.mark.parametrize("c,size", [(1, 16), (2, 4), (4, 2)])
def test_family_sizes_for_four_bits(c, size):
    family = build_family_greedy(4, c, Direction.MIN)
    assert len(family) == size
    assert family.index_width == (size - 1).bit_length()
    assert family.verify()


@pytest.mark.parametrize("direction", [Direction.MIN, Direction.MAX])
@pytest.mark.parametrize("n", [1, 3, 6, 8])
def test_family_covers_everything(direction, n):
    family = build_family_greedy(n, 2, direction)
    assert family.verify()
    assert list(family.members) == sorted(family.members, key=lambda y: int(y, 2))


def test_family_argument_checks():
    with pytest.raises(DomainError):
        build_family_greedy(4, Fraction(1, 2), Direction.MIN)
    with pytest.raises(DomainError):
        build_family_greedy(0, 2, Direction.MIN)
    with pytest.raises(ResourceLimitError):
        build_family_greedy(21, 2, Direction.MIN)


def test_lookup_cover_respects_the_bound():
    family = build_family_greedy(6, 2, "max")
    for x in all_strings(6):
        _, y = lookup_cover(family, x)
        assert bit_below(x, y)
        # zeros(y) >= zeros(x) / 2
        assert 2 * y.count("0") >= x.count("0")
    with pytest.raises(ContractError, match="6-bit"):
        lookup_cover(family, "0101")


def test_family_round_trips_through_dict():
    family = build_family_greedy(5, Fraction(3, 2), Direction.MIN)
    assert CoveringFamily.from_dict(family.to_dict()) == family


@pytest.mark.parametrize("n", [6, 8])
def test_covering_run_is_strict_for_string_guessing(n):
    family = build_family_greedy(n, 2, Direction.MIN)
    for secret in all_strings(n):
        tape = AdviceTape()
        outcome = run_unweighted_aoc(Instance.min_asg(secret), family, secret, tape)
        assert outcome.feasible
        assert outcome.score <= 2 * secret.count("1")
        assert tape.bits_read() == family.index_width


@pytest.mark.slow
def test_covering_run_is_strict_for_ten_bits():
    family = build_family_greedy(10, 2, Direction.MIN)
    for secret in all_strings(10):
        outcome = run_unweighted_aoc(Instance.min_asg(secret), family, secret, AdviceTape())
        assert outcome.feasible
        assert outcome.score <= 2 * secret.count("1")


def test_covering_run_rejects_mismatches():
    family = build_family_greedy(4, 2, Direction.MIN)
    with pytest.raises(ContractError, match="n=4"):
        run_unweighted_aoc(Instance.min_asg("101"), family, "101", AdviceTape())
    with pytest.raises(ContractError, match="not feasible"):
        run_unweighted_aoc(Instance.min_asg("1010"), family, "0010", AdviceTape())


def test_family_cache_persists(tmp_path):
    cache = FamilyCache(str(tmp_path))
    built = cache.get_or_build(5, 2, "min")
    path = cache.path_for(5, Fraction(2), Direction.MIN)
    assert (tmp_path / path.split("/")[-1]).exists()
    loaded = FamilyCache(str(tmp_path)).load(5, "2", Direction.MIN)
    assert loaded == built


def test_family_cache_rejects_a_bad_file(tmp_path):
    cache = FamilyCache(str(tmp_path))
    path = cache.path_for(3, Fraction(2), Direction.MIN)
    with open(path, "w") as f:
        f.write('{"n": 3, "c": "2", "direction": "min", "members": ["111"]}')
    assert cache.load(3, 2, "min") is None
