"""
Benchmark grid: seeded starting points, fan-out of every method over every
(function, start) instance, and deterministic collection of the records.
"""

import hashlib
import json
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from core.errors import InvalidParameter
from core.function_registry import make_suite
from core.functions.base_function import TestFunction
from core.params import LineSearchParams, SolveConfig
from core.records import RunRecord
from core.relaxation import RelaxationKind
from core.solver import LineSearchSolver
from utils.event_bus import Event, EventType, publish
from utils.prng import MASK64, instance_seed, uniform_in_box

logger = logging.getLogger(__name__)

ALL_METHODS: Tuple[RelaxationKind, ...] = tuple(RelaxationKind)


@dataclass(frozen=True)
class ProblemInstance:
    """One (function, start) pair of the grid."""
    function: str
    start_index: int
    x0: np.ndarray = field(compare=False)
    seed: int

    @property
    def problem(self) -> Tuple[str, int]:
        return (self.function, self.start_index)


@dataclass(frozen=True)
class BenchPlan:
    """
    What to run: methods, starts, budget, seed and worker count.

    The budget is in simplex gradients; a problem of dimension n gets
    budget_simplex_gradients * (n + 1) scalar function evaluations.
    """
    methods: Tuple[RelaxationKind, ...] = ALL_METHODS
    starts_per_function: int = 30
    budget_simplex_gradients: int = 100
    master_seed: int = 42
    parallelism: int = 1
    charge_gradients: bool = False
    keep_traces: bool = False
    params: LineSearchParams = field(default_factory=LineSearchParams)
    functions: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        methods = tuple(RelaxationKind.parse(m) if isinstance(m, str) else m for m in self.methods)
        if not methods:
            raise InvalidParameter("at least one method is required")
        object.__setattr__(self, "methods", tuple(RelaxationKind.ordered(methods)))
        if self.functions is not None:
            object.__setattr__(self, "functions", tuple(self.functions))
        if self.starts_per_function < 1:
            raise InvalidParameter("starts_per_function must be positive")
        if self.budget_simplex_gradients < 1:
            raise InvalidParameter("budget_simplex_gradients must be positive")
        if not 0 <= self.master_seed <= MASK64:
            raise InvalidParameter("master_seed must be a 64-bit unsigned integer")
        if self.parallelism < 1:
            raise InvalidParameter("parallelism must be positive")

    @classmethod
    def full_preset(cls, **overrides) -> "BenchPlan":
        """360 starts per function, 100 simplex gradients."""
        return cls(starts_per_function=360, budget_simplex_gradients=100, **overrides)

    @classmethod
    def desk_preset(cls, **overrides) -> "BenchPlan":
        """30 starts per function, 100 simplex gradients."""
        return cls(starts_per_function=30, budget_simplex_gradients=100, **overrides)

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any],
                     params: Optional[LineSearchParams] = None) -> "BenchPlan":
        """
        Build a plan from a configuration section.

        Raises:
            InvalidParameter: on unknown keys or invalid values
        """
        known = {f.name for f in fields(cls)} - {"params"}
        unknown = set(values) - known
        if unknown:
            raise InvalidParameter(f"Unknown bench keys: {sorted(unknown)}")
        kwargs = dict(values)
        if "methods" in kwargs:
            methods = kwargs["methods"]
            if isinstance(methods, str):
                methods = methods.split(",")
            kwargs["methods"] = tuple(RelaxationKind.parse(m) for m in methods)
        if params is not None:
            kwargs["params"] = params
        return cls(**kwargs)

    def with_overrides(self, **overrides) -> "BenchPlan":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def f_budget(self, dim: int) -> int:
        return self.budget_simplex_gradients * (dim + 1)

    def solve_config(self, kind: RelaxationKind, dim: int) -> SolveConfig:
        return SolveConfig(kind=kind, params=self.params, f_budget=self.f_budget(dim),
                           charge_gradients=self.charge_gradients)

    def canonical(self) -> Dict[str, Any]:
        """Everything that determines the results; parallelism is excluded."""
        return {
            "methods": [m.label for m in self.methods],
            "starts_per_function": self.starts_per_function,
            "budget_simplex_gradients": self.budget_simplex_gradients,
            "master_seed": self.master_seed,
            "charge_gradients": self.charge_gradients,
            "functions": list(self.functions) if self.functions is not None else None,
            "params": self.params.to_mapping(),
        }


def plan_hash(plan: BenchPlan) -> str:
    """Short sha256 of the canonical JSON form of the plan."""
    text = json.dumps(plan.canonical(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def generate_starts(fn: TestFunction, count: int, master_seed: int) -> List[ProblemInstance]:
    """
    Draw ``count`` starting points uniformly from the function's box.

    Args:
        fn: Benchmark function
        count: Number of starts
        master_seed: 64-bit master seed

    Returns:
        Instances with start_index 0..count-1, identical for identical inputs
    """
    if count < 1:
        raise InvalidParameter("count must be positive")
    lower, upper = fn.bounds()
    instances = []
    for start_index in range(count):
        seed = instance_seed(master_seed, fn.key, start_index)
        instances.append(ProblemInstance(function=fn.key, start_index=start_index,
                                         x0=uniform_in_box(seed, lower, upper), seed=seed))
    return instances


def _select_suite(plan: BenchPlan, suite: Optional[Sequence[TestFunction]]) -> List[TestFunction]:
    suite = list(suite) if suite is not None else make_suite()
    if plan.functions is None:
        return suite
    wanted = list(plan.functions)
    selected = [fn for fn in suite if any(fn.matches(name) for name in wanted)]
    if len(selected) != len(wanted):
        raise InvalidParameter(f"plan names functions outside the suite: {wanted}")
    return selected


def _run_task(task) -> RunRecord:
    """Worker entry point; takes only picklable arguments."""
    fn, instance, config, keep_traces = task
    record = LineSearchSolver(config).solve(fn.objective(), instance.x0,
                                            function=fn.key, start_index=instance.start_index)
    if not keep_traces:
        record.iterates = []
    return record


def run_summary(record: RunRecord) -> Dict[str, Any]:
    """Identity and status of a finished run, without its trace."""
    return {
        "method": record.method.label,
        "function": record.function,
        "start_index": record.start_index,
        "status": record.status.value,
    }


def build_tasks(plan: BenchPlan, suite: Iterable[TestFunction]) -> List[tuple]:
    """Tasks in the fixed (function, start, method) order."""
    tasks = []
    for fn in suite:
        for instance in generate_starts(fn, plan.starts_per_function, plan.master_seed):
            for kind in plan.methods:
                tasks.append((fn, instance, plan.solve_config(kind, fn.dim), plan.keep_traces))
    return tasks


def run_grid(plan: BenchPlan, suite: Optional[Sequence[TestFunction]] = None) -> List[RunRecord]:
    """
    Run every method on every instance of the grid.

    Args:
        plan: Bench plan
        suite: Functions to use; defaults to the full 20-function suite

    Returns:
        One record per (function, start, method), in that order regardless of
        how many workers ran them
    """
    functions = _select_suite(plan, suite)
    tasks = build_tasks(plan, functions)
    digest = plan_hash(plan)
    logger.info(f"Bench plan {digest}: {len(functions)} functions x "
                f"{plan.starts_per_function} starts x {len(plan.methods)} methods "
                f"= {len(tasks)} runs on {plan.parallelism} worker(s)")
    publish(Event(EventType.BENCH_STARTED, data={"total": len(tasks), "plan": digest},
                  source=__name__))

    records: List[RunRecord] = []
    if plan.parallelism == 1:
        results = map(_run_task, tasks)
        for record in results:
            records.append(record)
            publish(Event(EventType.RUN_FINISHED, data=run_summary(record), source=__name__))
    else:
        chunksize = max(1, len(tasks) // (plan.parallelism * 8))
        with ProcessPoolExecutor(max_workers=plan.parallelism) as pool:
            for record in pool.map(_run_task, tasks, chunksize=chunksize):
                records.append(record)
                publish(Event(EventType.RUN_FINISHED, data=run_summary(record), source=__name__))

    counts = status_counts(records)
    logger.info(f"Bench plan {digest} finished: {len(records)} records")
    publish(Event(EventType.BENCH_FINISHED, data={"total": len(records), "counts": counts},
                  source=__name__))
    return records


def status_counts(records: Iterable[RunRecord]) -> Dict[str, Dict[str, int]]:
    """Per-method counts of final statuses."""
    counts: Dict[str, Counter] = {}
    for record in records:
        counts.setdefault(record.method.label, Counter())[record.status.value] += 1
    return {method: dict(sorted(c.items())) for method, c in counts.items()}
