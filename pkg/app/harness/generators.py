"""
Seeded instance generators. Every random draw comes from a SplitMix64 stream
seeded with GeneratorSpec.seed, so a spec always yields the same instance.
"""

from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Union

from ..core.adversaries.geometric import geometric_prefix_family
from ..core.adversaries.star import sample_rounds, star_instance, star_rounds
from ..core.adversaries.string_guessing import GuessingInstance
from ..core.config.defaults import (
    DEFAULT_C,
    DEFAULT_EDGE_PROBABILITY,
    DEFAULT_GEOMETRIC_F,
    DEFAULT_SEED,
    DEFAULT_WEIGHT_DECADES
)
from ..core.errors import ContractError, DomainError
from ..core.prng import SplitMix64
from ..core.problems.instance_io import instance_from_dict, instance_to_dict
from ..core.problems.model import Instance, Problem, Request, Subpath
from ..core.scheduling.model import SchedulingInstance
from ..core.scheduling.objective import Objective

GeneratedInstance = Union[Instance, SchedulingInstance, GuessingInstance]

# weights are rounded to this many parts per unit so they stay small rationals
WEIGHT_RESOLUTION = 100


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    m: int = 2
    seed: int = DEFAULT_SEED
    weight_decades: int = DEFAULT_WEIGHT_DECADES
    problem: Optional[str] = None
    p: Fraction = DEFAULT_EDGE_PROBABILITY
    f: Fraction = Fraction(DEFAULT_GEOMETRIC_F)
    c: Fraction = DEFAULT_C
    weight_low: Optional[int] = None
    weight_high: Optional[int] = None
    objective: str = "linf"

    def with_seed(self, seed: int) -> "GeneratorSpec":
        return replace(self, seed=seed)

    def to_dict(self) -> dict:
        data = asdict(self)
        for key in ("p", "f", "c"):
            value = Fraction(data[key])
            data[key] = value.numerator if value.denominator == 1 else str(value)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "GeneratorSpec":
        fields = dict(data)
        for key in ("p", "f", "c"):
            if key in fields:
                fields[key] = Fraction(str(fields[key]))
        return cls(**fields)


# -------------------------
# Random ingredients
# -------------------------
def draw_weight(rng: SplitMix64, spec: GeneratorSpec) -> Fraction:
    """Uniform integer in [weight_low, weight_high] if set, else log-uniform over weight_decades decades."""
    if spec.weight_low is not None and spec.weight_high is not None:
        if not 0 < spec.weight_low <= spec.weight_high:
            raise DomainError(f"Bad weight range [{spec.weight_low}, {spec.weight_high}]")
        return Fraction(spec.weight_low + rng.below(spec.weight_high - spec.weight_low + 1))
    exponent = rng.random() * spec.weight_decades
    return Fraction(max(1, round(10 ** exponent * WEIGHT_RESOLUTION)), WEIGHT_RESOLUTION)


def draw_weights(rng: SplitMix64, spec: GeneratorSpec, count: int) -> List[Fraction]:
    return [draw_weight(rng, spec) for _ in range(count)]


def parse_objective(text: str) -> Objective:
    """'linf', 'l1', 'l2', 'lp:<p>' or 'minload'."""
    text = text.lower()
    if text == "minload":
        return Objective.min_load()
    if text == "linf":
        return Objective.makespan()
    if text.startswith("lp:"):
        return Objective.lp(Fraction(text[3:]))
    if text.startswith("l") and text[1:].isdigit():
        return Objective.lp(int(text[1:]))
    raise DomainError(f"Unknown objective {text!r}")


def _problem(spec: GeneratorSpec, default: Problem) -> Problem:
    return Problem(spec.problem) if spec.problem else default


# -------------------------
# Kinds
# -------------------------
def _random_graph(spec: GeneratorSpec, rng: SplitMix64) -> Instance:
    edges = [(i, j) for j in range(spec.n) for i in range(j) if rng.bernoulli(spec.p)]
    return Instance.from_graph(_problem(spec, Problem.INDEPENDENT_SET), spec.n, edges, draw_weights(rng, spec, spec.n))


def _clique(spec: GeneratorSpec, rng: SplitMix64) -> Instance:
    weights = [spec.f ** i for i in range(1, spec.n + 1)]
    edges = [(i, j) for j in range(spec.n) for i in range(j)]
    return Instance.from_graph(_problem(spec, Problem.INDEPENDENT_SET), spec.n, edges, weights)


def _star(spec: GeneratorSpec, rng: SplitMix64) -> Instance:
    edges = [("center", f"leaf{i}") for i in range(1, spec.n + 1)]
    return Instance.from_edges(edges, draw_weights(rng, spec, spec.n))


def _random_matching(spec: GeneratorSpec, rng: SplitMix64) -> Instance:
    vertices = max(3, spec.n // 2 + 2)
    edges = []
    while len(edges) < spec.n:
        u, v = rng.below(vertices), rng.below(vertices)
        if u != v:
            edges.append((f"v{min(u, v)}", f"v{max(u, v)}"))
    return Instance.from_edges(edges, draw_weights(rng, spec, spec.n))


def _path(spec: GeneratorSpec, rng: SplitMix64) -> Instance:
    length = spec.n + 1
    requests = []
    for _ in range(spec.n):
        start = 1 + rng.below(length - 1)
        end = start + 1 + rng.below(length - start)
        requests.append(Request(Subpath(start, end), draw_weight(rng, spec)))
    return Instance(Problem.DISJOINT_PATH, tuple(requests), path_length=length)


def _asg_random(spec: GeneratorSpec, rng: SplitMix64) -> Instance:
    secret = "".join("1" if rng.bernoulli(spec.p) else "0" for _ in range(spec.n))
    return Instance.min_asg(secret)


def _random_unrelated(spec: GeneratorSpec, rng: SplitMix64) -> SchedulingInstance:
    loads = [[draw_weight(rng, spec) for _ in range(spec.m)] for _ in range(spec.n)]
    return SchedulingInstance.unrelated(loads, parse_objective(spec.objective))


def _random_related(spec: GeneratorSpec, rng: SplitMix64) -> SchedulingInstance:
    speeds = [Fraction(1 + rng.below(4)) for _ in range(spec.m)]
    sizes = draw_weights(rng, spec, spec.n)
    return SchedulingInstance.related(sizes, speeds, parse_objective(spec.objective))


def _identical_jobs(spec: GeneratorSpec, rng: SplitMix64) -> SchedulingInstance:
    weight = draw_weight(rng, spec)
    return SchedulingInstance.unrelated([[weight] * spec.m for _ in range(spec.n)], parse_objective(spec.objective))


def _guessing(spec: GeneratorSpec, rng: SplitMix64) -> GuessingInstance:
    while True:
        secret = "".join("1" if rng.bernoulli(spec.p) else "0" for _ in range(spec.n))
        if "1" in secret:
            return GuessingInstance(secret)


def _geometric(spec: GeneratorSpec, rng: SplitMix64) -> Instance:
    return geometric_prefix_family(_problem(spec, Problem.MATCHING), spec.n, spec.f)[-1]


def _star_adversary(spec: GeneratorSpec, rng: SplitMix64) -> Instance:
    return star_instance(sample_rounds(rng, star_rounds(spec.c)))


GENERATORS: Dict[str, Callable[[GeneratorSpec, SplitMix64], GeneratedInstance]] = {
    "random_graph": _random_graph,
    "clique": _clique,
    "star": _star,
    "random_matching": _random_matching,
    "path": _path,
    "asg_random": _asg_random,
    "random_unrelated": _random_unrelated,
    "random_related": _random_related,
    "identical_jobs": _identical_jobs,
    "guessing_adversary": _guessing,
    "geometric_prefix": _geometric,
    "star_adversary": _star_adversary,
}


def generate(spec: GeneratorSpec) -> GeneratedInstance:
    """
    Build the instance described by `spec`.
    Args:
        spec (GeneratorSpec): Kind, size and seed
    Returns:
        GeneratedInstance: AOC, scheduling or string guessing instance
    """
    if spec.kind not in GENERATORS:
        raise ContractError(f"Unknown generator kind {spec.kind!r}; known: {', '.join(sorted(GENERATORS))}")
    if spec.n < 1:
        raise DomainError(f"n must be positive, got {spec.n}")
    return GENERATORS[spec.kind](spec, SplitMix64(spec.seed))


def instance_document(instance: GeneratedInstance) -> dict:
    """JSON document for any generated instance, in the matching file format."""
    if isinstance(instance, Instance):
        return instance_to_dict(instance)
    if isinstance(instance, SchedulingInstance):
        return instance.to_dict()
    return {"problem": "string_guessing", "secret": instance.secret}


def load_instance_document(data: dict) -> GeneratedInstance:
    if "machines" in data:
        return SchedulingInstance.from_dict(data)
    if data.get("problem") == "string_guessing":
        return GuessingInstance(data["secret"])
    return instance_from_dict(data)
