import json
from fractions import Fraction
from typing import Any, Dict

from ..errors import ContractError
from .model import AsgBit, Edge, Instance, Problem, Request, Subpath, Subset, VertexArrival


def format_weight(weight: Fraction) -> str:
    return str(weight.numerator) if weight.denominator == 1 else str(weight)


def payload_to_dict(payload) -> Dict[str, Any]:
    if isinstance(payload, AsgBit):
        return {"revealed": payload.revealed}
    if isinstance(payload, VertexArrival):
        return {"neighbors": list(payload.neighbors)}
    if isinstance(payload, Edge):
        return {"u": payload.u, "v": payload.v}
    if isinstance(payload, Subpath):
        return {"start": payload.start, "end": payload.end}
    if isinstance(payload, Subset):
        return {"elements": sorted(payload.elements)}
    raise ContractError(f"Unknown payload {payload!r}")


def payload_from_dict(problem: Problem, data: Dict[str, Any]):
    if problem is Problem.MIN_ASG:
        return AsgBit(data.get("revealed"))
    if problem is Problem.MATCHING:
        return Edge(str(data["u"]), str(data["v"]))
    if problem is Problem.DISJOINT_PATH:
        return Subpath(int(data["start"]), int(data["end"]))
    if problem is Problem.SET_COVER:
        return Subset(frozenset(int(e) for e in data["elements"]))
    return VertexArrival(tuple(int(j) for j in data.get("neighbors", [])))


def instance_to_dict(instance: Instance) -> Dict[str, Any]:
    data: Dict[str, Any] = {"problem": instance.problem.value}
    if instance.universe_size is not None:
        data["universe_size"] = instance.universe_size
    if instance.path_length is not None:
        data["path_length"] = instance.path_length
    if instance.secret is not None:
        data["secret"] = instance.secret
    data["requests"] = [
        {"payload": payload_to_dict(r.payload), "weight": format_weight(r.weight)}
        for r in instance.requests
    ]
    return data


def instance_from_dict(data: Dict[str, Any]) -> Instance:
    """
    Build an instance from its JSON document. Weights may be numbers or strings
    ("2.5", "7/3"); strings keep full precision.
    """
    try:
        problem = Problem(data["problem"])
    except (KeyError, ValueError) as e:
        raise ContractError(f"Unknown or missing problem: {e}") from e
    requests = tuple(
        Request(payload_from_dict(problem, r.get("payload", {})), Fraction(str(r.get("weight", 1))))
        for r in data.get("requests", [])
    )
    return Instance(
        problem=problem,
        requests=requests,
        universe_size=data.get("universe_size"),
        path_length=data.get("path_length"),
        secret=data.get("secret")
    )


def load_instance(path: str) -> Instance:
    with open(path, "r") as f:
        return instance_from_dict(json.load(f))


def save_instance(instance: Instance, path: str) -> None:
    with open(path, "w") as f:
        json.dump(instance_to_dict(instance), f, indent=2)
