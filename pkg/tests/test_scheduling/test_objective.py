from fractions import Fraction

from app.core.errors import ContractError, DomainError, ResourceLimitError
from app.core.scheduling.brute_force import brute_force_schedule
from app.core.scheduling.model import Job, SchedulingInstance, load_scheduling_instance, save_scheduling_instance
from app.core.scheduling.objective import Objective

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st


def test_norm_values():
    assert Objective.lp(2).evaluate([3, 4]) == pytest.approx(5.0)
    assert Objective.lp(2).key([3, 4]) == 25
    assert Objective.lp(1).evaluate([Fraction(1, 2), 3]) == Fraction(7, 2)
    assert Objective.makespan().evaluate([1, 3]) == 3
    assert Objective.min_load().evaluate([1, 3]) == 1


def test_norm_bucket_is_exact():
    # ||(3, 4)||_2 = 5 lies in [2^2, 2^3)
    assert Objective.lp(2).bucket([Fraction(3), Fraction(4)], Fraction(2)) == 2
    assert Objective.makespan().bucket([Fraction(3), Fraction(4)], Fraction(2)) == 2


def test_objective_guards():
    with pytest.raises(DomainError):
        Objective.lp(Fraction(1, 2))
    with pytest.raises(ContractError, match="not a minimized norm"):
        Objective.min_load().require_norm()
    with pytest.raises(ContractError, match="must be maximized"):
        Objective.makespan().require_cover()
    Objective.min_load().require_cover()
    Objective.lp(3).require_norm()


def test_objective_descriptions():
    assert Objective.makespan().describe() == "linf"
    assert Objective.lp(2).describe() == "l2"
    assert Objective.min_load().describe() == "minload"
    assert Objective.from_dict(Objective.lp(3).to_dict()) == Objective.lp(3)


def test_brute_force_schedule():
    jobs = [Job((1, 2)), Job((2, 1))]
    best = brute_force_schedule(jobs, Objective.makespan())
    assert best.assignment == (0, 1)
    assert best.value == 1


def test_unit_jobs_on_three_machines():
    jobs = [Job((1, 1, 1))] * 8
    assert brute_force_schedule(jobs, Objective.makespan()).value == 3
    assert brute_force_schedule(jobs, Objective.min_load()).value == 2


def test_ties_go_to_the_smallest_assignment():
    jobs = [Job((1, 1))] * 2
    assert brute_force_schedule(jobs, Objective.makespan()).assignment == (0, 1)


def test_forbidden_machines_are_skipped():
    jobs = [Job((None, 1)), Job((1, 5))]
    assert brute_force_schedule(jobs, Objective.makespan()).assignment == (1, 0)
    with pytest.raises(ContractError):
        Job((None, None))


def test_brute_force_cap():
    with pytest.raises(ResourceLimitError):
        brute_force_schedule([Job((1, 1))] * 24, Objective.makespan())


def test_instances_round_trip(tmp_path):
    related = SchedulingInstance.related([3, Fraction(1, 2)], [2, 1], Objective.lp(2))
    path = tmp_path / "related.json"
    save_scheduling_instance(related, path)
    loaded = load_scheduling_instance(path)
    assert loaded.is_related
    assert loaded.jobs == related.jobs
    assert loaded.jobs[0].loads == (Fraction(3, 2), Fraction(3))


def test_instance_guards():
    with pytest.raises(ContractError):
        SchedulingInstance(2, (Job((1,)),), Objective.makespan())
    with pytest.raises(DomainError):
        SchedulingInstance.related([1], [0], Objective.makespan())
    instance = SchedulingInstance.unrelated([[1, 2], [3, 4]], Objective.makespan())
    with pytest.raises(ContractError):
        instance.loads_of([0, 2])


loads = st.lists(st.fractions(min_value=0, max_value=1000), min_size=3, max_size=3)


@settings(max_examples=100, deadline=None)
@given(loads, loads, st.sampled_from([1, 2, 3, "inf"]))
def test_norm_axioms(a, b, p):
    norm = Objective.lp(p)
    total = [x + y for x, y in zip(a, b)]
    assert float(norm.evaluate(total)) <= float(norm.evaluate(a)) + float(norm.evaluate(b)) + 1e-6
    assert float(norm.evaluate([3 * x for x in a])) == pytest.approx(3 * float(norm.evaluate(a)))
    assert float(norm.evaluate(total)) + 1e-9 >= float(norm.evaluate(a))


@settings(max_examples=50, deadline=None)
@given(loads)
def test_min_load_is_homogeneous_and_monotone(a):
    cover = Objective.min_load()
    assert cover.evaluate([2 * x for x in a]) == 2 * cover.evaluate(a)
    assert cover.evaluate([x + 1 for x in a]) >= cover.evaluate(a)
