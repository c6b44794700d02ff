"""
Tests for the benchmark grid.
"""

import numpy as np
import pytest

from core.bench import (ALL_METHODS, BenchPlan, ProblemInstance, build_tasks, generate_starts,
                        plan_hash, run_grid, run_summary, status_counts)
from core.errors import InvalidParameter
from core.function_registry import get_function
from core.functions.base_function import TestFunction
from core.relaxation import RelaxationKind
from core.results_io import format_line, write_records
from core.verify import audit_trace
from utils.event_bus import EventType, event_bus
from utils.prng import instance_seed


class PinnedPoint(TestFunction):
    """A function whose box is a single point."""
    key = "pinned_point"
    display_name = "Pinned Point"
    default_dim = 2

    def bounds(self):
        return self._box(1.5, 1.5)

    def value(self, x):
        return float(np.sum(x ** 2))

    def gradient(self, x):
        return 2.0 * x


def small_plan(**overrides):
    values = dict(functions=("griewank", "bohachevsky_1"), starts_per_function=2,
                  budget_simplex_gradients=5)
    values.update(overrides)
    return BenchPlan(**values)


class TestBenchPlan:
    def test_presets(self):
        assert BenchPlan.full_preset().starts_per_function == 360
        assert BenchPlan.desk_preset().starts_per_function == 30
        assert BenchPlan.desk_preset().budget_simplex_gradients == 100

    def test_methods_are_parsed_and_ordered(self):
        plan = BenchPlan(methods=("nm4", "m"))
        assert plan.methods == (RelaxationKind.MONOTONE, RelaxationKind.MODIFIED_METROPOLIS)

    def test_budget_in_simplex_gradients(self):
        plan = BenchPlan()
        assert plan.f_budget(get_function("rastrigin").dim) == 1100
        assert plan.solve_config(RelaxationKind.GLL, 2).f_budget == 300

    @pytest.mark.parametrize("overrides", [
        {"methods": ()},
        {"starts_per_function": 0},
        {"budget_simplex_gradients": 0},
        {"parallelism": 0},
        {"master_seed": -1},
    ])
    def test_rejects_invalid_values(self, overrides):
        with pytest.raises(InvalidParameter):
            BenchPlan(**overrides)

    def test_from_mapping(self):
        plan = BenchPlan.from_mapping({"methods": "nm3,nm4", "starts_per_function": 3})
        assert plan.methods == (RelaxationKind.METROPOLIS, RelaxationKind.MODIFIED_METROPOLIS)
        with pytest.raises(InvalidParameter):
            BenchPlan.from_mapping({"workers": 3})

    def test_plan_hash_ignores_parallelism(self):
        plan = small_plan()
        assert plan_hash(plan) == plan_hash(plan.with_overrides(parallelism=4))
        assert plan_hash(plan) != plan_hash(plan.with_overrides(master_seed=7))
        assert len(plan_hash(plan)) == 16


class TestStarts:
    def test_deterministic_and_inside_the_box(self):
        fn = get_function("rastrigin")
        first = generate_starts(fn, 360, 42)
        second = generate_starts(fn, 360, 42)
        lower, upper = fn.bounds()
        assert len(first) == 360
        for a, b in zip(first, second):
            np.testing.assert_array_equal(a.x0, b.x0)
            assert np.all(a.x0 >= lower) and np.all(a.x0 <= upper)
        assert [inst.start_index for inst in first] == list(range(360))
        assert first[3].seed == instance_seed(42, "rastrigin", 3)

    def test_distinct_seeds_give_distinct_starts(self):
        fn = get_function("easom")
        a = generate_starts(fn, 5, 1)
        b = generate_starts(fn, 5, 2)
        assert not np.array_equal(a[0].x0, b[0].x0)
        assert not np.array_equal(a[0].x0, a[1].x0)

    def test_degenerate_box(self):
        for instance in generate_starts(PinnedPoint(), 4, 42):
            np.testing.assert_array_equal(instance.x0, [1.5, 1.5])

    def test_problem_key(self):
        instance = ProblemInstance("easom", 4, np.zeros(2), 1)
        assert instance.problem == ("easom", 4)


class TestRunGrid:
    def test_cardinality_and_order(self):
        plan = small_plan()
        records = run_grid(plan)
        assert len(records) == 2 * 2 * len(ALL_METHODS)
        keys = [(r.function, r.start_index, r.method) for r in records]
        expected = [(f, s, m) for f in ("bohachevsky_1", "griewank") for s in range(2)
                    for m in ALL_METHODS]
        assert keys == expected

    def test_budget_is_never_exceeded(self):
        plan = small_plan()
        for record in run_grid(plan):
            assert record.f_evals <= plan.f_budget(get_function(record.function).dim)

    def test_methods_share_starting_points(self):
        plan = small_plan(keep_traces=True)
        tasks = build_tasks(plan, [get_function("griewank")])
        starts = {}
        for fn, instance, config, keep in tasks:
            starts.setdefault(instance.start_index, []).append(instance.x0)
        for x0s in starts.values():
            assert all(np.array_equal(x0s[0], x0) for x0 in x0s)

    def test_reruns_are_identical(self):
        plan = small_plan()
        first = [format_line(r) for r in run_grid(plan)]
        second = [format_line(r) for r in run_grid(plan)]
        assert first == second

    def test_parallel_matches_sequential(self):
        plan = small_plan()
        sequential = [format_line(r) for r in run_grid(plan)]
        parallel = [format_line(r) for r in run_grid(plan.with_overrides(parallelism=2))]
        assert parallel == sequential

    def test_traces_are_dropped_unless_requested(self):
        assert all(r.iterates == [] for r in run_grid(small_plan()))
        assert any(r.iterates for r in run_grid(small_plan(keep_traces=True)))

    def test_custom_suite(self):
        plan = BenchPlan(methods=("m",), starts_per_function=1, budget_simplex_gradients=3)
        records = run_grid(plan, suite=[PinnedPoint()])
        assert len(records) == 1
        assert records[0].breakpoints[0] == (1, 4.5)

    def test_unknown_function_in_plan(self):
        with pytest.raises(InvalidParameter):
            run_grid(small_plan(functions=("griewank", "nowhere")))

    def test_progress_events(self):
        seen = []
        event_bus.subscribe(EventType.RUN_FINISHED)(lambda event: seen.append(event.data))
        finished = []
        event_bus.subscribe(EventType.BENCH_FINISHED)(lambda event: finished.append(event.data))
        records = run_grid(small_plan())
        assert len(seen) == len(records)
        assert finished[0]["total"] == len(records)

    def test_run_events_carry_a_summary_not_the_record(self):
        seen = []
        event_bus.subscribe(EventType.RUN_FINISHED)(lambda event: seen.append(event.data))
        records = run_grid(small_plan(keep_traces=True))
        assert seen == [run_summary(r) for r in records]
        assert all(set(data) == {"method", "function", "start_index", "status"} for data in seen)
        assert seen[0]["method"] == records[0].method.label
        assert seen[0]["status"] == records[0].status.value

    def test_status_counts(self):
        records = run_grid(small_plan(methods=("m",)))
        counts = status_counts(records)
        assert list(counts) == ["M"]
        assert sum(counts["M"].values()) == 4


class TestSeededGrid:
    """A small seeded grid that exercises every method end to end."""

    def plan(self, **overrides):
        return small_plan(functions=("griewank", "shubert", "bohachevsky_1"),
                          budget_simplex_gradients=10, master_seed=42, keep_traces=True,
                          **overrides)

    def test_results_file_is_byte_identical_across_runs(self, tmp_path):
        plan = self.plan()
        first, second = tmp_path / "first.txt", tmp_path / "second.txt"
        write_records(str(first), run_grid(plan), plan.master_seed, plan_hash(plan))
        parallel = plan.with_overrides(parallelism=2)
        write_records(str(second), run_grid(parallel), plan.master_seed, plan_hash(parallel))
        assert first.read_bytes() == second.read_bytes()

    def test_every_trace_passes_the_audit(self):
        plan = self.plan()
        records = run_grid(plan)
        assert {r.method for r in records} == set(ALL_METHODS)
        assert any(r.iterates for r in records)
        for record in records:
            assert audit_trace(record, plan.params) == [], (record.function, record.method)
