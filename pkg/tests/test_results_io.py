"""
Tests for the line-delimited results format.
"""

import math

import pytest

from core.bench import BenchPlan, plan_hash, run_grid
from core.errors import SchemaMismatch
from core.records import RunStatus, RunSummary
from core.relaxation import RelaxationKind
from core.results_io import (format_header, format_line, parse_line, read_records,
                             write_records)


def summary(**overrides):
    values = dict(method=RelaxationKind.GLL, function="easom", start_index=3,
                  status=RunStatus.BUDGET_EXHAUSTED, best_f=-0.1 / 3, f_evals=300, g_evals=41,
                  breakpoints=[(1, 0.5), (7, 0.1 / 3), (12, -0.1 / 3)])
    values.update(overrides)
    return RunSummary(**values)


def test_header_layout():
    assert format_header(42, "abc123") == "#nmls-results v1 seed=42 plan=abc123"


def test_line_layout():
    line = format_line(summary())
    fields = line.split(" ")
    assert fields[:4] == ["NM1", "easom", "3", "BudgetExhausted"]
    assert fields[5:7] == ["300", "41"]
    assert fields[7].startswith("1:0.5,7:")


def test_reals_survive_exactly():
    run = summary()
    parsed = parse_line(format_line(run))
    assert parsed == run
    assert parsed.best_f == -0.1 / 3


def test_empty_trace_uses_placeholder():
    run = summary(breakpoints=[], best_f=math.inf, status=RunStatus.NON_FINITE_ENCOUNTERED)
    line = format_line(run)
    assert line.endswith(" -")
    parsed = parse_line(line)
    assert parsed.breakpoints == []
    assert parsed.best_f == math.inf


def test_empty_file_has_header_only(tmp_path):
    path = tmp_path / "results.txt"
    assert write_records(str(path), [], master_seed=7, plan="00ff") == 0
    assert path.read_text() == "#nmls-results v1 seed=7 plan=00ff\n"
    results = read_records(str(path))
    assert len(results) == 0
    assert results.master_seed == 7 and results.plan == "00ff"


def test_write_then_read(tmp_path):
    plan = BenchPlan(functions=("easom",), starts_per_function=2, budget_simplex_gradients=5)
    records = run_grid(plan)
    path = tmp_path / "out" / "results.txt"
    write_records(str(path), records, plan.master_seed, plan_hash(plan))
    results = read_records(str(path))
    assert results.records == [r.summary() for r in records]
    assert results.plan == plan_hash(plan)


def test_same_plan_writes_identical_bytes(tmp_path):
    plan = BenchPlan(functions=("shubert",), starts_per_function=2, budget_simplex_gradients=5)
    paths = [tmp_path / "a.txt", tmp_path / "b.txt"]
    for path in paths:
        write_records(str(path), run_grid(plan), plan.master_seed, plan_hash(plan))
    assert paths[0].read_bytes() == paths[1].read_bytes()


@pytest.mark.parametrize("header", [
    "",
    "#other-results v1 seed=1 plan=ab\n",
    "#nmls-results v2 seed=1 plan=ab\n",
    "#nmls-results v1 seed=x plan=ab\n",
])
def test_foreign_headers_are_rejected(tmp_path, header):
    path = tmp_path / "results.txt"
    path.write_text(header)
    with pytest.raises(SchemaMismatch):
        read_records(str(path))


@pytest.mark.parametrize("line", [
    "NM1 easom 3 BudgetExhausted 0.5 300 41",
    "NM9 easom 3 BudgetExhausted 0.5 300 41 -",
    "NM1 easom 3 Finished 0.5 300 41 -",
    "NM1 easom three BudgetExhausted 0.5 300 41 -",
    "NM1 easom 3 BudgetExhausted 0.5 300 41 1;0.5",
])
def test_malformed_lines_are_rejected(line):
    with pytest.raises(SchemaMismatch):
        parse_line(line)
