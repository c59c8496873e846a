from fractions import Fraction

from app.core.advice.tape import AdviceTape
from app.core.errors import ContractError
from app.core.scheduling.objective import Objective
from app.core.scheduling.model import Job, SchedulingInstance
from app.core.scheduling.related_norm import RelatedNormPair, run_related_norm
from app.core.scheduling.unrelated_cover import UnrelatedCoverPair, run_unrelated_cover
from app.core.scheduling.unrelated_norm import UnrelatedNormPair, norm_writes_verbatim, run_unrelated_norm
from app.harness.generators import GeneratorSpec, generate

import pytest

EPSILON = Fraction(1, 2)


def scheduling_spec(kind, seed, objective="linf", n=8, m=2):
    return GeneratorSpec(kind=kind, n=n, m=m, seed=seed, weight_decades=2, objective=objective)


def test_short_sequences_are_written_verbatim():
    assert norm_writes_verbatim(4, EPSILON)
    instance = SchedulingInstance.unrelated([[1, 2], [2, 1], [3, 3], [1, 4]], Objective.makespan())
    report = run_unrelated_norm(instance, EPSILON)
    assert report.ratio == 1
    # self-delimited 4 plus one machine bit per job
    assert report.bits_read == 7 + 4


@pytest.mark.parametrize("objective", ["linf", "l2"])
@pytest.mark.parametrize("seed", range(4))
def test_unrelated_norm_within_bound(seed, objective):
    report = run_unrelated_norm(generate(scheduling_spec("random_unrelated", seed, objective)), EPSILON)
    assert report.extra["ratio_bound"] == Fraction(11, 8)
    assert report.ratio <= 1 + EPSILON


@pytest.mark.parametrize("seed", range(4))
def test_related_norm_within_bound(seed):
    report = run_related_norm(generate(scheduling_spec("random_related", seed)), EPSILON)
    assert report.ratio <= 1 + EPSILON
    assert report.params["m"] == 2


@pytest.mark.parametrize("seed", range(4))
def test_unrelated_cover_within_bound(seed):
    report = run_unrelated_cover(generate(scheduling_spec("random_unrelated", seed, "minload")), EPSILON)
    assert report.extra["ratio_bound"] == Fraction(10, 7)
    assert report.ratio <= 1 + EPSILON


def test_identical_jobs_on_three_machines():
    instance = generate(scheduling_spec("identical_jobs", 3, n=7, m=3))
    report = run_unrelated_norm(instance, EPSILON)
    assert report.ratio <= 1 + EPSILON


def test_related_reference_machine():
    pair = RelatedNormPair([2, 1], EPSILON, Objective.makespan())
    assert pair.reference() == (0, Fraction(1, 2))


def test_objective_mismatch():
    makespan = generate(scheduling_spec("random_unrelated", 1))
    with pytest.raises(ContractError, match="must be maximized"):
        run_unrelated_cover(makespan)
    min_load = generate(scheduling_spec("random_unrelated", 1, "minload"))
    with pytest.raises(ContractError, match="not a minimized norm"):
        run_unrelated_norm(min_load)
    with pytest.raises(ContractError, match="sizes and speeds"):
        run_related_norm(makespan)


def test_algorithms_need_an_objective():
    with pytest.raises(ContractError):
        UnrelatedNormPair(EPSILON).make_algorithm(None)
    with pytest.raises(ContractError):
        UnrelatedCoverPair(EPSILON).make_algorithm(None)



def test_cover_fallback_is_machine_zero():
    # machine 1 ranks first and no phase ever opens
    tape = AdviceTape().write_self_delimited(6).write_uint_fixed(1, 1).write_uint_fixed(0, 1).write_self_delimited(7)
    algorithm = UnrelatedCoverPair(EPSILON, Objective.min_load()).make_algorithm(tape)
    jobs = [Job((Fraction(2), Fraction(3))), Job((None, Fraction(3))), Job((Fraction(5), Fraction(1)))]
    assert [algorithm.assign(job) for job in jobs] == [0, 1, 0]
    assert algorithm.order == [1, 0]


@pytest.mark.slow
@pytest.mark.parametrize("kind,objective,run", [
    ("random_unrelated", "linf", run_unrelated_norm),
    ("random_related", "l2", run_related_norm),
    ("random_unrelated", "minload", run_unrelated_cover),
])
def test_fifty_seeds_per_pair(kind, objective, run):
    for seed in range(50):
        report = run(generate(scheduling_spec(kind, seed, objective, n=10)), EPSILON)
        assert report.ratio <= report.extra["ratio_bound"]
