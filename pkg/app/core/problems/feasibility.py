from typing import Callable, Dict, List

import networkx as nx

from ..advice.covering import Direction
from ..errors import ContractError
from .model import Instance, Problem


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def accepted_mask(instance: Instance, output: str) -> int:
    """Bit i set iff request i is accepted (1 for Min problems, 0 for Max problems)."""
    if len(output) != instance.n:
        raise ContractError(f"Output has {len(output)} bits, instance has {instance.n} requests")
    accept = "1" if instance.direction is Direction.MIN else "0"
    mask = 0
    for i, ch in enumerate(output):
        if ch not in "01":
            raise ContractError(f"Output {output!r} is not a bit string")
        if ch == accept:
            mask |= 1 << i
    return mask


def output_from_mask(instance: Instance, mask: int) -> str:
    accept, reject = ("1", "0") if instance.direction is Direction.MIN else ("0", "1")
    return "".join(accept if mask >> i & 1 else reject for i in range(instance.n))


def vertex_edges(instance: Instance) -> List[tuple]:
    return [(j, i) for i, r in enumerate(instance.requests) for j in r.payload.neighbors]


class FeasibilityChecker:
    """
    Feasibility of accepted sets (bitmasks over request positions) for one instance.
    Structures are precomputed so that `accepts` can run inside exhaustive search.
    """

    def __init__(self, instance: Instance):
        self.instance = instance
        builder = _BUILDERS[instance.problem]
        self._accepts: Callable[[int], bool] = builder(instance)

    def accepts(self, mask: int) -> bool:
        return self._accepts(mask)


def _min_asg(instance: Instance):
    secret = int(instance.secret[::-1], 2)
    return lambda mask: secret & ~mask == 0


def _adjacency(instance: Instance) -> List[int]:
    adj = [0] * instance.n
    for a, b in vertex_edges(instance):
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return adj


def _vertex_cover(instance: Instance):
    edges = [(1 << a) | (1 << b) for a, b in vertex_edges(instance)]
    return lambda mask: all(e & mask for e in edges)


def _dominating_set(instance: Instance):
    closed = [a | (1 << v) for v, a in enumerate(_adjacency(instance))]
    return lambda mask: all(nbhd & mask for nbhd in closed)


def _cycle_finding(instance: Instance):
    graph = nx.Graph()
    graph.add_nodes_from(range(instance.n))
    graph.add_edges_from(vertex_edges(instance))

    def accepts(mask: int) -> bool:
        nodes = list(iter_bits(mask))
        if len(nodes) < 3:
            return False
        return not nx.is_forest(graph.subgraph(nodes))

    return accepts


def _set_cover(instance: Instance):
    full = (1 << instance.universe_size) - 1
    subsets = [sum(1 << (e - 1) for e in r.payload.elements) for r in instance.requests]

    def accepts(mask: int) -> bool:
        union = 0
        for i in iter_bits(mask):
            union |= subsets[i]
        return union == full

    return accepts


def _independent_set(instance: Instance):
    adj = _adjacency(instance)
    return lambda mask: all(adj[v] & mask == 0 for v in iter_bits(mask))


def _clique(instance: Instance):
    adj = _adjacency(instance)
    return lambda mask: all((mask & ~(1 << v)) & ~adj[v] == 0 for v in iter_bits(mask))


def _disjoint_resources(resources: List[int]):
    def accepts(mask: int) -> bool:
        used = 0
        for i in iter_bits(mask):
            if resources[i] & used:
                return False
            used |= resources[i]
        return True

    return accepts


def _matching(instance: Instance):
    names: Dict[str, int] = {}
    resources = []
    for r in instance.requests:
        u = names.setdefault(r.payload.u, len(names))
        v = names.setdefault(r.payload.v, len(names))
        resources.append((1 << u) | (1 << v))
    return _disjoint_resources(resources)


def _disjoint_path(instance: Instance):
    # path edge k joins vertices k and k+1 (1-based) and owns bit k-1
    resources = [((1 << (r.payload.end - 1)) - 1) & ~((1 << (r.payload.start - 1)) - 1) for r in instance.requests]
    return _disjoint_resources(resources)


_BUILDERS = {
    Problem.MIN_ASG: _min_asg,
    Problem.VERTEX_COVER: _vertex_cover,
    Problem.DOMINATING_SET: _dominating_set,
    Problem.CYCLE_FINDING: _cycle_finding,
    Problem.SET_COVER: _set_cover,
    Problem.INDEPENDENT_SET: _independent_set,
    Problem.CLIQUE: _clique,
    Problem.MATCHING: _matching,
    Problem.DISJOINT_PATH: _disjoint_path,
}


def check_feasible(instance: Instance, output: str) -> bool:
    """
    Whether `output` is feasible for `instance`.
    Args:
        instance (Instance): The instance
        output (str): n-bit answer string (1 = accept for Min problems, 0 = accept for Max problems)
    Returns:
        bool: Feasibility
    """
    return FeasibilityChecker(instance).accepts(accepted_mask(instance, output))


def validate_instance(instance: Instance) -> Instance:
    """Raise unless some output is feasible: accept-all for Min problems, reject-all for Max."""
    checker = FeasibilityChecker(instance)
    everything = (1 << instance.n) - 1
    if not checker.accepts(everything if instance.direction is Direction.MIN else 0):
        raise ContractError(f"{instance.problem.value} instance admits no feasible output")
    return instance
