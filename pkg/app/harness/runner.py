"""
Experiment runner: one seeded run per (spec, algorithm, params), and batches
of them over derived seeds with a per-n summary.
"""

import csv
import json
import math
import os
import threading
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

from ..core.adversaries.star import FixedEdgePair, LastEdgePair
from ..core.advice.covering import Direction, b_bound, build_family_greedy, run_unweighted_aoc
from ..core.advice.tape import AdviceTape
from ..core.config.defaults import DEFAULT_BEST_BUCKET_EPSILON, DEFAULT_C, DEFAULT_EPSILON, DEFAULT_WORKERS
from ..core.errors import AdviceBenchError, BatchAborted, ContractError, DomainError
from ..core.online import AdvicePair, simulate
from ..core.prng import trial_seed
from ..core.problems.model import Instance
from ..core.problems.optimum import brute_force_opt
from ..core.problems.scoring import competitive_ratio, score_output
from ..core.report import RunReport, additive_slack
from ..core.scheduling.model import SchedulingInstance
from ..core.scheduling.related_norm import run_related_norm
from ..core.scheduling.unrelated_cover import run_unrelated_cover
from ..core.scheduling.unrelated_norm import run_unrelated_norm
from ..core.weighted.bases import CoveringBase, GreedyBase
from ..core.weighted.best_bucket import BestBucketPair
from ..core.weighted.runner import run_weighted_pair
from ..core.weighted.sparsified_max import run_sparsified_max
from ..core.weighted.sparsified_min import run_sparsified_min
from ..logging.logger_factory import LoggerFactory, elapsed_ms
from .generators import GeneratedInstance, GeneratorSpec, generate

logger = LoggerFactory.get_logger(__name__, service="harness")

RUN_NAMESPACE = uuid.uuid5(uuid.NAMESPACE_URL, "advicebench/run")


# -------------------------
# Parameters
# -------------------------
def fraction_param(params: Dict[str, Any], key: str, default) -> Fraction:
    value = params.get(key)
    return Fraction(str(value)) if value is not None else Fraction(default)


def _aoc(instance: GeneratedInstance, algorithm: str) -> Instance:
    if not isinstance(instance, Instance):
        raise ContractError(f"{algorithm} runs on AOC instances, got {type(instance).__name__}")
    return instance


def _scheduling(instance: GeneratedInstance, algorithm: str) -> SchedulingInstance:
    if not isinstance(instance, SchedulingInstance):
        raise ContractError(f"{algorithm} runs on scheduling instances, got {type(instance).__name__}")
    return instance


# -------------------------
# Adapters
# -------------------------
def run_aoc_pair(pair: AdvicePair, instance: Instance, advice_bound: float = 0.0, params: Optional[Dict[str, Any]] = None) -> RunReport:
    """
    Score any accept/reject pair against the weighted brute-force optimum.
    Args:
        pair (AdvicePair): Pair whose algorithm answers with decide()
        instance (Instance): AOC instance
        advice_bound (float): Budget reported next to bits_read
        params (dict): Parameters copied into the report
    Returns:
        RunReport: Scores, ratio and bits read
    """
    started = time.time()
    sim = simulate(pair, instance)
    outcome = score_output(instance, sim.output)
    opt = brute_force_opt(instance)
    minimize = instance.direction is Direction.MIN
    return RunReport(
        problem=instance.problem.value,
        n=instance.n,
        algorithm=pair.name,
        params=dict(params or {}),
        alg_score=outcome.score,
        opt_score=opt.score,
        ratio=competitive_ratio(instance.direction, outcome.score, opt.score),
        additive_alpha=additive_slack(minimize, outcome.score, opt.score, 1),
        bits_read=sim.bits_read,
        advice_bound=advice_bound,
        feasible=outcome.feasible,
        runtime_ms=elapsed_ms(started),
        tape_hex=sim.tape.to_hex(),
        extra={"output": sim.output, "opt_output": opt.output}
    )


def _run_covering(instance, params) -> RunReport:
    """Unit-weight covering pair: scores and the optimum both count requests, not weight."""
    instance = _aoc(instance, "covering")
    started = time.time()
    c = fraction_param(params, "c", DEFAULT_C)
    opt = brute_force_opt(instance, weighted=False)
    family = build_family_greedy(instance.n, c, instance.direction.value)
    tape = AdviceTape()
    outcome = run_unweighted_aoc(instance, family, opt.output, tape)
    minimize = instance.direction is Direction.MIN
    return RunReport(
        problem=instance.problem.value,
        n=instance.n,
        algorithm="covering",
        params={"c": c},
        alg_score=outcome.score,
        opt_score=opt.score,
        ratio=competitive_ratio(instance.direction, outcome.score, opt.score),
        additive_alpha=additive_slack(minimize, outcome.score, opt.score, c),
        bits_read=tape.bits_read(),
        advice_bound=math.ceil(b_bound(instance.n, c)) + math.log2(max(instance.n, 2)),
        feasible=outcome.feasible,
        runtime_ms=elapsed_ms(started),
        tape_hex=tape.to_hex(),
        extra={"output": outcome.output, "opt_output": opt.output, "ratio_bound": c, "family_size": len(family)}
    )


def _run_sparsified_max(instance, params) -> RunReport:
    return run_sparsified_max(
        _aoc(instance, "sparsified-max"),
        fraction_param(params, "c", DEFAULT_C),
        fraction_param(params, "epsilon", DEFAULT_EPSILON)
    )


def _run_sparsified_min(instance, params) -> RunReport:
    wmin, wmax = params.get("wmin"), params.get("wmax")
    return run_sparsified_min(
        _aoc(instance, "sparsified-min"),
        fraction_param(params, "c", DEFAULT_C),
        fraction_param(params, "epsilon", DEFAULT_EPSILON),
        Fraction(str(wmin)) if wmin is not None else None,
        Fraction(str(wmax)) if wmax is not None else None
    )


def _run_best_bucket(instance, params) -> RunReport:
    instance = _aoc(instance, "best-bucket")
    c = fraction_param(params, "c", DEFAULT_C)
    kind = params.get("base", "greedy")
    if kind == "greedy":
        base = GreedyBase(c)
    elif kind == "covering":
        base = CoveringBase(c)
    else:
        raise ContractError(f"Unknown base {kind!r}; expected greedy or covering")
    pair = BestBucketPair(base, instance.problem, fraction_param(params, "epsilon", DEFAULT_BEST_BUCKET_EPSILON))
    return run_weighted_pair(pair, instance)


def _run_unrelated_norm(instance, params) -> RunReport:
    return run_unrelated_norm(_scheduling(instance, "unrelated-norm"), fraction_param(params, "epsilon", DEFAULT_EPSILON))


def _run_related_norm(instance, params) -> RunReport:
    return run_related_norm(_scheduling(instance, "related-norm"), fraction_param(params, "epsilon", DEFAULT_EPSILON))


def _run_unrelated_cover(instance, params) -> RunReport:
    return run_unrelated_cover(_scheduling(instance, "unrelated-cover"), fraction_param(params, "epsilon", DEFAULT_EPSILON))


def _run_last_edge(instance, params) -> RunReport:
    instance = _aoc(instance, "last-edge")
    return run_aoc_pair(LastEdgePair(), instance, 2 * instance.n.bit_length() + 1)


def _run_fixed_edge(instance, params) -> RunReport:
    j = int(params.get("j", 1))
    return run_aoc_pair(FixedEdgePair(j), _aoc(instance, "fixed-edge"), params={"j": j})


ALGORITHMS: Dict[str, Callable[[GeneratedInstance, Dict[str, Any]], RunReport]] = {
    "covering": _run_covering,
    "sparsified-max": _run_sparsified_max,
    "sparsified-min": _run_sparsified_min,
    "best-bucket": _run_best_bucket,
    "unrelated-norm": _run_unrelated_norm,
    "related-norm": _run_related_norm,
    "unrelated-cover": _run_unrelated_cover,
    "last-edge": _run_last_edge,
    "fixed-edge": _run_fixed_edge,
}

# star adversary strategies, exempt from the batch abort
LOWER_BOUND_STRATEGIES = frozenset({"last-edge", "fixed-edge"})


# -------------------------
# Single runs
# -------------------------
def run_id_for(spec_data: Dict[str, Any], algorithm: str, params: Dict[str, Any]) -> str:
    """Deterministic run id: a name-based uuid over the canonical run description."""
    key = json.dumps({"spec": spec_data, "algorithm": algorithm, "params": params}, sort_keys=True, default=str)
    return str(uuid.uuid5(RUN_NAMESPACE, key))


def _problem_tag(instance: Optional[GeneratedInstance], fallback: str) -> str:
    if isinstance(instance, Instance):
        return instance.problem.value
    if isinstance(instance, SchedulingInstance):
        return f"{'related' if instance.is_related else 'unrelated'}-{instance.objective.describe()}"
    return fallback


def run_instance(instance: GeneratedInstance, algorithm: str, params: Optional[Dict[str, Any]] = None, run_id: str = "") -> RunReport:
    """
    Run `algorithm` on a ready-made instance. Errors raised by the run come back
    as a failed report with the error message; nothing propagates.
    """
    params = dict(params or {})
    log = LoggerFactory.for_run(logger, run_id, algorithm=algorithm)
    try:
        if algorithm not in ALGORITHMS:
            raise ContractError(f"Unknown algorithm {algorithm!r}; known: {', '.join(sorted(ALGORITHMS))}")
        report = ALGORITHMS[algorithm](instance, params)
    except AdviceBenchError as e:
        log.error("run_failed", error_type=type(e).__name__, message=str(e))
        n = getattr(instance, "n", 0)
        return RunReport.failed(_problem_tag(instance, "unknown"), n, algorithm, params, f"{type(e).__name__}: {e}", run_id)
    report.run_id = run_id
    return report


def run_experiment(spec: GeneratorSpec, algorithm: str, params: Optional[Dict[str, Any]] = None) -> RunReport:
    """
    Generate the instance for `spec`, run the pair on a fresh tape and score it
    against the brute-force optimum.
    Args:
        spec (GeneratorSpec): Instance kind, size and seed
        algorithm (str): Key of ALGORITHMS
        params (dict): Algorithm parameters (c, epsilon, base, j, wmin, wmax)
    Returns:
        RunReport: Filled report; failures carry `error` instead of raising
    """
    params = dict(params or {})
    run_id = run_id_for(spec.to_dict(), algorithm, params)
    try:
        instance = generate(spec)
    except AdviceBenchError as e:
        logger.error("generate_failed", run_id=run_id, kind=spec.kind, n=spec.n, message=str(e))
        return RunReport.failed(spec.kind, spec.n, algorithm, params, f"{type(e).__name__}: {e}", run_id)
    report = run_instance(instance, algorithm, params, run_id)
    report.params = {**report.params, "kind": spec.kind, "seed": spec.seed}
    return report


# -------------------------
# Batches
# -------------------------
class ReportWriter:
    """JSON-lines sink shared by batch workers; each report is one atomic line."""

    def __init__(self, path: Optional[str] = None):
        self.path = path
        self.write_lock = threading.RLock()
        self._file = open(path, "w") if path else None

    def write(self, report: RunReport) -> None:
        if self._file is None:
            return
        line = json.dumps(report.to_dict(), sort_keys=True)
        with self.write_lock:
            self._file.write(line + "\n")
            self._file.flush()

    def close(self) -> None:
        with self.write_lock:
            if self._file is not None:
                self._file.close()
                self._file = None

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        self.close()


@dataclass
class SizeRow:
    runs: int = 0
    max_ratio: Optional[float] = None
    max_bits: int = 0
    bound: Optional[float] = None
    fitted_k: Optional[float] = None
    fitted_k1: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "runs": self.runs,
            "max_ratio": self.max_ratio,
            "max_bits": self.max_bits,
            "bound": self.bound,
            "fitted_k": self.fitted_k,
            "fitted_k1": self.fitted_k1,
        }


@dataclass
class BatchSummary:
    algorithm: str
    runs: int = 0
    errors: int = 0
    max_ratio: Optional[float] = None
    max_bits: Optional[int] = None
    per_n: Dict[int, SizeRow] = field(default_factory=dict)
    reports: List[RunReport] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "runs": self.runs,
            "errors": self.errors,
            "max_ratio": self.max_ratio,
            "max_bits": self.max_bits,
            "per_n": {str(n): row.to_dict() for n, row in sorted(self.per_n.items())},
        }

    def write_csv(self, path: str) -> None:
        headers = ["n", "runs", "max_ratio", "max_bits", "bound", "fitted_k", "fitted_k1"]
        with open(path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(headers)
            for n, row in sorted(self.per_n.items()):
                data = row.to_dict()
                writer.writerow([n] + ["" if data[h] is None else data[h] for h in headers[1:]])


def worker_cap(requested: Optional[int] = None) -> int:
    """Requested workers (default DEFAULT_WORKERS), capped by ADVICEBENCH_WORKERS when set."""
    workers = requested if requested is not None else DEFAULT_WORKERS
    env = os.getenv("ADVICEBENCH_WORKERS")
    if env:
        try:
            workers = min(workers, int(env))
        except ValueError:
            raise DomainError(f"ADVICEBENCH_WORKERS must be an integer, got {env!r}")
    return max(1, workers)


def _fitted_k1(n: int, bits: int, params: Dict[str, Any]) -> Optional[float]:
    """Smallest K1 with bits <= ceil(B(n,c)) + K1 * log2(n)^2 / eps, for the sparsified pairs."""
    if "c" not in params or "epsilon" not in params or n < 2:
        return None
    c, epsilon = Fraction(str(params["c"])), Fraction(str(params["epsilon"]))
    if c < 1:
        return None
    extra = max(0, bits - math.ceil(b_bound(n, c)))
    return round(extra * float(epsilon) / math.log2(n) ** 2, 4)


def summarize(algorithm: str, reports: Sequence[RunReport]) -> BatchSummary:
    summary = BatchSummary(algorithm=algorithm, reports=list(reports))
    for report in reports:
        summary.runs += 1
        if report.error is not None:
            summary.errors += 1
            continue
        ratio = report.ratio_value
        row = summary.per_n.setdefault(report.n, SizeRow())
        row.runs += 1
        row.max_ratio = ratio if row.max_ratio is None else max(row.max_ratio, ratio)
        row.max_bits = max(row.max_bits, report.bits_read)
        bound = report.extra.get("ratio_bound")
        if bound is not None:
            row.bound = float(bound) if row.bound is None else max(row.bound, float(bound))
        summary.max_ratio = ratio if summary.max_ratio is None else max(summary.max_ratio, ratio)
        summary.max_bits = report.bits_read if summary.max_bits is None else max(summary.max_bits, report.bits_read)
    for n, row in summary.per_n.items():
        if n >= 2:
            row.fitted_k = round(row.max_bits / math.log2(n), 4)
        sample = next(r for r in reports if r.n == n and r.error is None)
        row.fitted_k1 = _fitted_k1(n, row.max_bits, sample.params)
    return summary


def batch(specs: Sequence[GeneratorSpec], algorithm: str, params: Optional[Dict[str, Any]] = None, trials: int = 1,
          workers: Optional[int] = None, out: Optional[str] = None, csv_path: Optional[str] = None) -> BatchSummary:
    """
    Run every spec `trials` times with seeds trial_seed(spec.seed, t), t = 0..trials-1.
    Args:
        specs (list): Generator specs
        algorithm (str): Key of ALGORITHMS
        params (dict): Algorithm parameters shared by every run
        trials (int): Runs per spec, at least 1
        workers (int): Worker threads, capped by ADVICEBENCH_WORKERS
        out (str): Optional JSON-lines report file
        csv_path (str): Optional per-n CSV summary file
    Returns:
        BatchSummary: Per-n table plus overall maxima
    Raises:
        BatchAborted: An upper-bound run ended infeasible, through a bad output or a raised error
    """
    if trials < 1:
        raise DomainError(f"trials must be at least 1, got {trials}")
    if algorithm not in ALGORITHMS:
        raise ContractError(f"Unknown algorithm {algorithm!r}; known: {', '.join(sorted(ALGORITHMS))}")
    started = time.time()
    runs = [spec.with_seed(trial_seed(spec.seed, t)) for spec in specs for t in range(trials)]
    cap = worker_cap(workers)
    logger.info("batch_started", algorithm=algorithm, runs=len(runs), workers=cap)

    reports: List[RunReport] = []
    with ReportWriter(out) as writer, ThreadPoolExecutor(max_workers=cap) as pool:
        futures = [pool.submit(run_experiment, spec, algorithm, params) for spec in runs]
        # submission order keeps the abort seed independent of thread timing
        for spec, future in zip(runs, futures):
            report = future.result()
            writer.write(report)
            if not report.feasible and algorithm not in LOWER_BOUND_STRATEGIES:
                for pending in futures:
                    pending.cancel()
                logger.error("batch_aborted", algorithm=algorithm, seed=spec.seed, n=spec.n, kind=spec.kind, error=report.error)
                reason = report.error or "an infeasible output"
                raise BatchAborted(f"{algorithm} hit {reason} on {spec.kind} n={spec.n} seed={spec.seed}", spec.seed, report.error)
            reports.append(report)

    summary = summarize(algorithm, reports)
    if csv_path:
        summary.write_csv(csv_path)
    logger.info(
        "batch_complete",
        algorithm=algorithm,
        runs=summary.runs,
        errors=summary.errors,
        max_ratio=summary.max_ratio,
        max_bits=summary.max_bits,
        duration_ms=elapsed_ms(started)
    )
    return summary
