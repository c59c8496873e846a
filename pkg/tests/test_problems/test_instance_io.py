import json
from fractions import Fraction

from app.core.errors import ContractError
from app.core.problems.instance_io import instance_from_dict, instance_to_dict, load_instance, save_instance
from app.core.problems.model import Instance, Problem, Request, Subpath, Subset

import pytest


def test_instance_dict_round_trip():
    instance = Instance(
        Problem.DISJOINT_PATH,
        (Request(Subpath(1, 3), Fraction(7, 3)), Request(Subpath(2, 5), 4)),
        path_length=5
    )
    data = instance_to_dict(instance)
    assert data["requests"][0]["weight"] == "7/3"
    assert data["requests"][1]["weight"] == "4"
    assert instance_from_dict(data) == instance


def test_instance_file_round_trip(tmp_path):
    instance = Instance(Problem.SET_COVER, (Request(Subset(frozenset({1, 2}))), Request(Subset(frozenset({2})))), universe_size=2)
    path = str(tmp_path / "cover.json")
    save_instance(instance, path)
    with open(path) as f:
        assert json.load(f)["universe_size"] == 2
    assert load_instance(path) == instance


def test_decimal_weights_stay_exact():
    data = {"problem": "min_asg", "secret": "1", "requests": [{"payload": {"revealed": None}, "weight": "2.5"}]}
    assert instance_from_dict(data).weights == [Fraction(5, 2)]


def test_unknown_problem():
    with pytest.raises(ContractError, match="Unknown or missing problem"):
        instance_from_dict({"problem": "knapsack", "requests": []})
