import random

import pytest
from hypothesis import given, settings

from calsched import (
    brute_force_optimal,
    build_instance,
    check_canonical_form,
    color_changes,
    enumerate_pareto,
    normalize,
    temperature_span,
    total_temperature_change,
)
from calsched.oracle import OracleSizeError, oracle_job_limit
from conftest import THREE_COLOR_OPTIMUM, make_two_color, two_color_instances


class TestThreeColorInstance:
    def test_capped_optimum_is_unique_up_to_reversal(self, ten_job_three_color):
        result = brute_force_optimal(ten_job_three_color, 4, mode="subset_dp")
        assert result.optimal_total_change == 7000
        assert not result.truncated
        orders = {s.order for s in result.optimal_schedules}
        assert orders == {THREE_COLOR_OPTIMUM, tuple(reversed(THREE_COLOR_OPTIMUM))}
        for s in result.optimal_schedules:
            assert color_changes(s) <= 4
            assert total_temperature_change(s) == 7000

    def test_same_color_blocks_need_opposite_orientations(self, ten_job_three_color):
        # the capped optimum cannot be rebuilt from ascending-only inner
        # blocks of one color: its two inner color-0 blocks run oppositely
        result = brute_force_optimal(ten_job_three_color, 4)
        lookup = {j.id: j for j in ten_job_three_color.jobs}
        seq = [lookup[i] for i in result.optimal_schedules[0].order]
        runs = []
        for job in seq:
            if runs and runs[-1][0] == job.color:
                runs[-1][1].append(job.temperature)
            else:
                runs.append((job.color, [job.temperature]))
        inner = [temps for _, temps in runs[1:-1]]
        directions = {
            temps[0] < temps[-1] for temps in inner if len(temps) > 1
        }
        assert directions == {True, False}

    def test_pareto_contains_capped_entry(self, ten_job_three_color):
        table = dict(enumerate_pareto(ten_job_three_color))
        assert table[4] == 7000
        assert table[9] == temperature_span(ten_job_three_color.jobs)


class TestModes:
    @given(two_color_instances(max_jobs=7, max_temp=20))
    @settings(max_examples=30, deadline=None)
    def test_permutation_and_dp_agree(self, instance):
        for cap in range(0, len(instance.jobs)):
            a = brute_force_optimal(instance, cap, mode="permutation")
            b = brute_force_optimal(instance, cap, mode="subset_dp")
            assert a.optimal_total_change == b.optimal_total_change
            if not (a.truncated or b.truncated):
                assert {s.order for s in a.optimal_schedules} == {
                    s.order for s in b.optimal_schedules
                }

    def test_unknown_mode_rejected(self):
        inst = make_two_color([1], [2])
        with pytest.raises(ValueError):
            brute_force_optimal(inst, 1, mode="magic")


class TestSizeLimits:
    def test_permutation_cap(self):
        inst = make_two_color(list(range(1, 9)), list(range(1, 5)))
        with pytest.raises(OracleSizeError):
            brute_force_optimal(inst, 3, mode="permutation")

    def test_dp_cap_and_env_override(self, monkeypatch):
        inst = make_two_color(list(range(1, 9)), list(range(1, 5)))
        monkeypatch.setenv("CALSCHED_ORACLE_MAX_N", "10")
        assert oracle_job_limit() == 10
        with pytest.raises(OracleSizeError):
            brute_force_optimal(inst, 3, mode="subset_dp")
        monkeypatch.setenv("CALSCHED_ORACLE_MAX_N", "12")
        assert brute_force_optimal(inst, 3).feasible


class TestSmallInstances:
    def test_budget_one(self):
        inst = make_two_color([1, 4], [2, 3])
        assert brute_force_optimal(inst, 1).optimal_total_change == 5000

    def test_generous_budget_reaches_span(self):
        inst = make_two_color([9, 2, 5], [4, 7])
        result = brute_force_optimal(inst, len(inst.jobs) - 1)
        assert result.optimal_total_change == temperature_span(inst.jobs)

    def test_zero_budget_two_colors_infeasible(self):
        inst = make_two_color([1], [2])
        result = brute_force_optimal(inst, 0)
        assert not result.feasible
        assert result.optimal_schedules == ()

    def test_input_order_invariance(self):
        records = [("a", 4, 0), ("b", 1, 1), ("c", 7, 0), ("d", 3, 1), ("e", 9, 0)]
        base = brute_force_optimal(build_instance(records), 2)
        rng = random.Random(3)
        for _ in range(5):
            shuffled = records[:]
            rng.shuffle(shuffled)
            other = brute_force_optimal(build_instance(shuffled), 2)
            assert other.optimal_total_change == base.optimal_total_change

    @given(two_color_instances(max_jobs=7, max_temp=15))
    @settings(max_examples=25, deadline=None)
    def test_two_color_optimum_has_canonical_witness(self, instance):
        cap = max(1, len(instance.jobs) // 2)
        result = brute_force_optimal(instance, cap)
        witness = normalize(result.optimal_schedules[0])
        assert total_temperature_change(witness) == result.optimal_total_change
        assert color_changes(witness) <= cap
        ok, violations = check_canonical_form(witness)
        assert ok, violations


class TestParetoTable:
    def test_example_table(self):
        inst = make_two_color([1, 4], [2, 3])
        table = enumerate_pareto(inst)
        assert table[0] == (0, None)
        assert table[1:] == [(1, 5000), (2, 3000), (3, 3000)]

    def test_single_job(self):
        inst = build_instance([("a", 5, 0)])
        assert enumerate_pareto(inst) == [(0, 0)]

    def test_values_non_increasing(self):
        inst = make_two_color([3, 11, 19], [6, 14])
        values = [v for _, v in enumerate_pareto(inst) if v is not None]
        assert values == sorted(values, reverse=True)

    def test_merged_duplicates_extend_table(self):
        inst = build_instance([("a", 1, 0), ("b", 1, 0), ("c", 2, 1)])
        table = enumerate_pareto(inst)
        assert [k for k, _ in table] == [0, 1, 2]
        assert table[1][1] == table[2][1] == 1000
