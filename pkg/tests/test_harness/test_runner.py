import csv
import json
import math
from fractions import Fraction

from app.core.errors import BatchAborted, ContractError, DomainError, InvariantViolation
from app.core.prng import trial_seed
from app.core.report import RunReport
from app.harness import runner
from app.harness.generators import GeneratorSpec
from app.harness.runner import ReportWriter, batch, run_experiment, summarize, worker_cap

import pytest


def test_covering_run_on_string_guessing():
    report = run_experiment(GeneratorSpec(kind="asg_random", n=8, seed=3), "covering", {"c": 2})
    assert report.error is None
    assert report.feasible
    assert report.ratio <= 2
    assert report.bits_read == (report.extra["family_size"] - 1).bit_length()
    assert report.params["kind"] == "asg_random"


def test_clique_is_answered_exactly():
    report = run_experiment(GeneratorSpec(kind="clique", n=3), "sparsified-max", {"c": 2, "epsilon": 1})
    assert report.ratio == 1
    assert report.alg_score == 1000


def test_last_edge_matches_the_optimum():
    report = run_experiment(GeneratorSpec(kind="star_adversary", n=1, seed=5, c=2), "last-edge")
    assert report.ratio == 1
    assert report.bits_read == report.advice_bound


def test_fixed_edge_reports_its_edge():
    report = run_experiment(GeneratorSpec(kind="star_adversary", n=1, seed=5, c=2), "fixed-edge", {"j": 1})
    assert report.feasible
    assert report.params["j"] == 1


def test_sparsified_min_with_uniform_weights():
    spec = GeneratorSpec(kind="random_graph", n=8, problem="vertex_cover", weight_low=1, weight_high=100)
    report = run_experiment(spec, "sparsified-min", {"c": 2, "epsilon": 1})
    assert report.feasible
    assert report.ratio <= 4


def test_run_ids_are_deterministic():
    spec = GeneratorSpec(kind="asg_random", n=5, seed=1)
    first = run_experiment(spec, "covering", {"c": 2})
    again = run_experiment(spec, "covering", {"c": 2})
    other = run_experiment(spec.with_seed(2), "covering", {"c": 2})
    assert first.run_id == again.run_id
    assert first.run_id != other.run_id
    assert first.to_dict(include_timing=False) == again.to_dict(include_timing=False)


def test_failures_come_back_as_reports():
    unknown = run_experiment(GeneratorSpec(kind="asg_random", n=4), "quantum")
    assert unknown.error.startswith("ContractError: Unknown algorithm")
    wrong_input = run_experiment(GeneratorSpec(kind="random_unrelated", n=3), "covering")
    assert "runs on AOC instances" in wrong_input.error
    bad_spec = run_experiment(GeneratorSpec(kind="path", n=0), "best-bucket")
    assert bad_spec.error.startswith("DomainError")
    assert not bad_spec.feasible


def test_batch_writes_reports_and_csv(tmp_path):
    out, table = tmp_path / "runs.jsonl", tmp_path / "summary.csv"
    spec = GeneratorSpec(kind="asg_random", n=8, seed=1)
    summary = batch([spec], "covering", {"c": 2}, trials=5, workers=2, out=str(out), csv_path=str(table))
    assert summary.runs == 5 and summary.errors == 0
    assert summary.per_n[8].runs == 5
    assert summary.max_ratio <= 2
    assert summary.per_n[8].fitted_k == round(summary.per_n[8].max_bits / 3, 4)

    lines = [json.loads(line) for line in out.read_text().splitlines()]
    assert [line["params"]["seed"] for line in lines] == [trial_seed(1, t) for t in range(5)]
    assert all(line["run_id"] for line in lines)

    with open(table, newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["n", "runs", "max_ratio", "max_bits", "bound", "fitted_k", "fitted_k1"]
    assert rows[1][:2] == ["8", "5"]


def test_batch_fits_the_sparsification_constant():
    spec = GeneratorSpec(kind="random_graph", n=8, weight_decades=3)
    summary = batch([spec], "sparsified-max", {"c": 2, "epsilon": "1/2"}, trials=3, workers=1)
    assert summary.per_n[8].fitted_k1 is not None
    assert summary.to_dict()["per_n"]["8"]["runs"] == 3


def test_batch_aborts_on_an_infeasible_output(monkeypatch):
    def broken(instance, params):
        return RunReport(
            problem="min_asg", n=instance.n, algorithm="broken", params={}, alg_score=math.inf,
            opt_score=1, ratio=math.inf, additive_alpha=0, bits_read=0, advice_bound=0, feasible=False
        )

    monkeypatch.setitem(runner.ALGORITHMS, "broken", broken)
    spec = GeneratorSpec(kind="asg_random", n=4, seed=7)
    with pytest.raises(BatchAborted) as e:
        batch([spec], "broken", trials=3, workers=2)
    assert e.value.seed == trial_seed(7, 0)


def test_batch_aborts_when_a_run_raises(monkeypatch):
    def drifting(instance, params):
        raise InvariantViolation("count table out of step")

    monkeypatch.setitem(runner.ALGORITHMS, "sparsified-max", drifting)
    spec = GeneratorSpec(kind="random_graph", n=6, seed=11)
    with pytest.raises(BatchAborted) as e:
        batch([spec], "sparsified-max", trials=3, workers=2)
    assert e.value.seed == trial_seed(11, 0)
    assert e.value.error.startswith("InvariantViolation")


def test_star_strategies_do_not_abort(monkeypatch):
    def failing(instance, params):
        raise ContractError("no edge to accept")

    monkeypatch.setitem(runner.ALGORITHMS, "fixed-edge", failing)
    summary = batch([GeneratorSpec(kind="star_adversary", n=4)], "fixed-edge", trials=2, workers=1)
    assert summary.runs == 2 and summary.errors == 2


def test_batch_rejects_unknown_algorithms():
    with pytest.raises(ContractError, match="Unknown algorithm"):
        batch([GeneratorSpec(kind="asg_random", n=4)], "quantum")


def test_batch_guards():
    with pytest.raises(DomainError):
        batch([GeneratorSpec(kind="asg_random", n=4)], "covering", trials=0)
    empty = batch([], "covering")
    assert empty.runs == 0 and empty.max_ratio is None


def test_summary_counts_errors():
    good = run_experiment(GeneratorSpec(kind="asg_random", n=4), "covering", {"c": 2})
    bad = run_experiment(GeneratorSpec(kind="asg_random", n=4), "quantum")
    summary = summarize("covering", [good, bad])
    assert summary.runs == 2 and summary.errors == 1
    assert summary.per_n[4].runs == 1


def test_worker_cap(monkeypatch):
    monkeypatch.delenv("ADVICEBENCH_WORKERS", raising=False)
    assert worker_cap(3) == 3
    monkeypatch.setenv("ADVICEBENCH_WORKERS", "2")
    assert worker_cap(8) == 2
    assert worker_cap(0) == 1
    monkeypatch.setenv("ADVICEBENCH_WORKERS", "many")
    with pytest.raises(DomainError):
        worker_cap(4)


def test_report_writer_without_a_path():
    with ReportWriter() as writer:
        writer.write(run_experiment(GeneratorSpec(kind="asg_random", n=3), "covering", {"c": Fraction(3, 2)}))
