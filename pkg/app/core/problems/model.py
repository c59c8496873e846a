from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from ..advice.covering import Direction
from ..errors import ContractError, DomainError


class Problem(str, Enum):
    MIN_ASG = "min_asg"
    VERTEX_COVER = "vertex_cover"
    DOMINATING_SET = "dominating_set"
    CYCLE_FINDING = "cycle_finding"
    SET_COVER = "set_cover"
    INDEPENDENT_SET = "independent_set"
    CLIQUE = "clique"
    MATCHING = "matching"
    DISJOINT_PATH = "disjoint_path"

    @property
    def direction(self) -> Direction:
        return Direction.MIN if self in _MIN_PROBLEMS else Direction.MAX


_MIN_PROBLEMS = {
    Problem.MIN_ASG,
    Problem.VERTEX_COVER,
    Problem.DOMINATING_SET,
    Problem.CYCLE_FINDING,
    Problem.SET_COVER,
}


# -------------------------
# Request payloads
# -------------------------
@dataclass(frozen=True)
class AsgBit:
    """String guessing round; reveals the correct answer of the previous round."""
    revealed: Optional[int] = None


@dataclass(frozen=True)
class VertexArrival:
    """A vertex arriving with its edges to earlier vertices (0-based request indices)."""
    neighbors: Tuple[int, ...] = ()


@dataclass(frozen=True)
class Edge:
    u: str
    v: str


@dataclass(frozen=True)
class Subpath:
    """Subpath from vertex `start` to vertex `end` (1-based) of the known path."""
    start: int
    end: int


@dataclass(frozen=True)
class Subset:
    elements: FrozenSet[int]


Payload = Union[AsgBit, VertexArrival, Edge, Subpath, Subset]

PAYLOAD_TYPES: Dict[Problem, type] = {
    Problem.MIN_ASG: AsgBit,
    Problem.VERTEX_COVER: VertexArrival,
    Problem.DOMINATING_SET: VertexArrival,
    Problem.CYCLE_FINDING: VertexArrival,
    Problem.INDEPENDENT_SET: VertexArrival,
    Problem.CLIQUE: VertexArrival,
    Problem.SET_COVER: Subset,
    Problem.MATCHING: Edge,
    Problem.DISJOINT_PATH: Subpath,
}


def to_weight(value) -> Fraction:
    """Exact weight from an int, Fraction, decimal string or float."""
    weight = value if isinstance(value, Fraction) else Fraction(value)
    if weight <= 0:
        raise DomainError(f"Weights must be positive, got {value}")
    return weight


@dataclass(frozen=True)
class Request:
    payload: Payload
    weight: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "weight", to_weight(self.weight))


@dataclass(frozen=True)
class Instance:
    problem: Problem
    requests: Tuple[Request, ...]
    universe_size: Optional[int] = None
    path_length: Optional[int] = None
    secret: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "problem", Problem(self.problem))
        object.__setattr__(self, "requests", tuple(self.requests))
        if not self.requests:
            raise ContractError("An instance needs at least one request")
        expected = PAYLOAD_TYPES[self.problem]
        for index, request in enumerate(self.requests):
            if not isinstance(request.payload, expected):
                raise ContractError(
                    f"Request {index} of a {self.problem.value} instance carries {type(request.payload).__name__}"
                )
            self._check_payload(index, request.payload)
        if self.problem is Problem.MIN_ASG:
            self._check_secret()

    def _check_payload(self, index: int, payload: Payload) -> None:
        if isinstance(payload, VertexArrival):
            if any(j < 0 or j >= index for j in payload.neighbors):
                raise ContractError(f"Vertex {index} lists a neighbor that has not arrived yet")
        elif isinstance(payload, Edge):
            if payload.u == payload.v:
                raise ContractError(f"Edge {index} is a self-loop on {payload.u}")
        elif isinstance(payload, Subpath):
            if self.path_length is None:
                raise ContractError("Disjoint path instances need path_length")
            if not 1 <= payload.start < payload.end <= self.path_length:
                raise ContractError(
                    f"Subpath {index} ({payload.start},{payload.end}) outside path of {self.path_length} vertices"
                )
        elif isinstance(payload, Subset):
            if self.universe_size is None:
                raise ContractError("Set cover instances need universe_size")
            if any(e < 1 or e > self.universe_size for e in payload.elements):
                raise ContractError(f"Subset {index} has elements outside 1..{self.universe_size}")

    def _check_secret(self) -> None:
        if self.secret is None or len(self.secret) != self.n or set(self.secret) - {"0", "1"}:
            raise ContractError("String guessing instances need an n-bit secret")
        for index, request in enumerate(self.requests):
            want = None if index == 0 else int(self.secret[index - 1])
            if request.payload.revealed != want:
                raise ContractError(f"Request {index} reveals {request.payload.revealed}, expected {want}")

    # -------------------------
    # Views
    # -------------------------
    @property
    def n(self) -> int:
        return len(self.requests)

    @property
    def direction(self) -> Direction:
        return self.problem.direction

    @property
    def weights(self) -> List[Fraction]:
        return [r.weight for r in self.requests]

    def with_weights(self, weights: Sequence) -> "Instance":
        if len(weights) != self.n:
            raise ContractError(f"Expected {self.n} weights, got {len(weights)}")
        requests = tuple(Request(r.payload, w) for r, w in zip(self.requests, weights))
        return Instance(self.problem, requests, self.universe_size, self.path_length, self.secret)

    def unit_weights(self) -> "Instance":
        return self.with_weights([1] * self.n)

    def prefix(self, length: int) -> "Instance":
        if not 1 <= length <= self.n:
            raise ContractError(f"Prefix length {length} outside 1..{self.n}")
        secret = self.secret[:length] if self.secret is not None else None
        return Instance(self.problem, self.requests[:length], self.universe_size, self.path_length, secret)

    def subsequence(self, indices: Iterable[int]) -> "Instance":
        """Requests at `indices` (increasing), with vertex arrivals re-indexed to the induced subgraph."""
        if self.problem is Problem.MIN_ASG:
            raise ContractError("String guessing instances have no meaningful subsequence")
        view = SubsequenceView()
        requests = [view.translate(self.requests[i], i) for i in sorted(indices)]
        return Instance(self.problem, tuple(requests), self.universe_size, self.path_length)

    # -------------------------
    # Constructors
    # -------------------------
    @classmethod
    def min_asg(cls, secret: str, weights: Optional[Sequence] = None) -> "Instance":
        weights = weights if weights is not None else [1] * len(secret)
        requests = tuple(
            Request(AsgBit(None if i == 0 else int(secret[i - 1])), w)
            for i, w in enumerate(weights)
        )
        return cls(Problem.MIN_ASG, requests, secret=secret)

    @classmethod
    def from_graph(cls, problem: Problem, n: int, edges: Iterable[Tuple[int, int]], weights: Optional[Sequence] = None) -> "Instance":
        """Vertex-arrival instance for an offline edge list over vertices 0..n-1."""
        earlier: List[List[int]] = [[] for _ in range(n)]
        for a, b in edges:
            lo, hi = min(a, b), max(a, b)
            if lo != hi and lo not in earlier[hi]:
                earlier[hi].append(lo)
        weights = weights if weights is not None else [1] * n
        requests = tuple(Request(VertexArrival(tuple(sorted(earlier[i]))), weights[i]) for i in range(n))
        return cls(Problem(problem), requests)

    @classmethod
    def from_edges(cls, edges: Sequence[Tuple[str, str]], weights: Optional[Sequence] = None) -> "Instance":
        weights = weights if weights is not None else [1] * len(edges)
        return cls(Problem.MATCHING, tuple(Request(Edge(u, v), w) for (u, v), w in zip(edges, weights)))


class SubsequenceView:
    """
    Online re-indexing of a chosen subsequence: vertex arrivals keep only
    neighbors that were themselves kept, renumbered in arrival order.
    """

    def __init__(self):
        self.mapping: Dict[int, int] = {}

    def translate(self, request: Request, original_index: int) -> Request:
        payload = request.payload
        if isinstance(payload, VertexArrival):
            payload = VertexArrival(tuple(self.mapping[j] for j in payload.neighbors if j in self.mapping))
        self.mapping[original_index] = len(self.mapping)
        return Request(payload, request.weight)


@dataclass(frozen=True)
class Outcome:
    output: str
    feasible: bool
    score: Union[Fraction, float]
    accepted: Tuple[int, ...] = field(default=())
