"""
Data profiles over a grid of benchmark runs.

A problem p counts as solved by method s within t evaluations when the
best value found after t evaluations is at most

    f_L + tau * (f0 - f_L),

with f_L the best value any compared method reached on p. The profile
d_s(alpha) is the fraction of problems solved within alpha * (n_p + 1)
evaluations, alpha = 0..max_alpha simplex gradients.
"""

import json
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from core.errors import InvalidParameter, MissingProblem, SchemaMismatch
from core.function_registry import get_function
from core.records import RunRecord, RunSummary
from core.relaxation import RelaxationKind

logger = logging.getLogger(__name__)

Run = Union[RunRecord, RunSummary]
Problem = Tuple[str, int]

DEFAULT_TAU = 1e-7
MAX_ALPHA = 100

# method sets of the two published comparisons
FIGURE_METHODS = {
    1: (RelaxationKind.MONOTONE, RelaxationKind.GLL, RelaxationKind.ZHANG_HAGER,
        RelaxationKind.METROPOLIS),
    2: (RelaxationKind.METROPOLIS, RelaxationKind.MODIFIED_METROPOLIS),
}


@dataclass
class DataProfile:
    """Fraction of problems solved against budget for one method."""
    method: RelaxationKind
    alphas: np.ndarray
    values: np.ndarray

    def at(self, alpha: int) -> float:
        return float(self.values[int(alpha)])

    @property
    def label(self) -> str:
        return self.method.label


@dataclass
class ProfileResult:
    """Profiles of all compared methods plus problem accounting."""
    tau: float
    profiles: List[DataProfile]
    problems: int
    degenerate: int
    solve_times: Dict[str, Dict[Problem, Optional[int]]] = field(default_factory=dict, repr=False)

    def by_method(self) -> Dict[RelaxationKind, DataProfile]:
        return {p.method: p for p in self.profiles}

    def summary(self) -> Dict[str, object]:
        return {
            "tau": self.tau,
            "problems": self.problems,
            "degenerate": self.degenerate,
            "final": {p.label: p.values[-1].item() for p in self.profiles},
        }


def group_by_problem(records: Iterable[Run]) -> Dict[Problem, Dict[RelaxationKind, Run]]:
    grouped: Dict[Problem, Dict[RelaxationKind, Run]] = {}
    for record in records:
        grouped.setdefault(record.problem, {})[record.method] = record
    return grouped


def compute_fL(records: Iterable[Run],
               methods: Optional[Sequence[RelaxationKind]] = None) -> Dict[Problem, float]:
    """
    Best value found by any compared method on each problem.

    Args:
        records: Runs of the grid
        methods: Methods to compare; defaults to every method present

    Raises:
        MissingProblem: if a problem has no record for one of the methods
    """
    grouped = group_by_problem(records)
    if methods is None:
        methods = RelaxationKind.ordered(m for runs in grouped.values() for m in runs)
    f_L = {}
    for problem, runs in grouped.items():
        missing = [m.label for m in methods if m not in runs]
        if missing:
            raise MissingProblem(f"{problem[0]}[{problem[1]}] has no record for {', '.join(missing)}")
        f_L[problem] = min(runs[m].best_f for m in methods)
    return f_L


def solve_time(record: Run, f_L: float, tau: float, f0: Optional[float] = None) -> Optional[int]:
    """
    First evaluation count at which the run met the convergence test.

    Args:
        record: A run with its breakpoint trace
        f_L: Reference value of the problem
        tau: Tolerance in (0, 1)
        f0: Starting value; defaults to the first breakpoint of the trace

    Returns:
        0 when the start already meets the test, the evaluation count of the
        first qualifying breakpoint, or None
    """
    f0 = record.f0 if f0 is None else f0
    threshold = f_L + tau * (f0 - f_L)
    if f0 <= threshold:
        return 0
    for evals, best in record.breakpoints:
        if best <= threshold:
            return evals
    return None


def data_profile_from_times(times: Sequence[Optional[int]], dims: Sequence[int],
                            max_alpha: int = MAX_ALPHA) -> np.ndarray:
    """
    d(alpha) = |{p : t_p <= alpha (n_p + 1)}| / |P| for alpha = 0..max_alpha.

    Args:
        times: Solve time per problem, None when unsolved
        dims: Dimension per problem
        max_alpha: Largest budget in simplex gradients
    """
    if len(times) != len(dims):
        raise InvalidParameter("times and dims must have the same length")
    alphas = np.arange(max_alpha + 1)
    if not times:
        return np.zeros(len(alphas))
    # unsolved problems get an infinite time and never count
    solved_at = np.array([math.inf if t is None else t for t in times], dtype=float)
    budgets = np.outer(alphas, np.asarray(dims, dtype=float) + 1.0)
    return (solved_at[None, :] <= budgets).sum(axis=1) / len(times)


def _dimension_lookup(dims: Optional[Mapping[str, int]]):
    cache: Dict[str, int] = dict(dims or {})

    def dimension(function: str) -> int:
        if function not in cache:
            cache[function] = get_function(function).dim
        return cache[function]
    return dimension


def data_profile(records: Iterable[Run], tau: float = DEFAULT_TAU,
                 methods: Optional[Sequence[RelaxationKind]] = None,
                 dims: Optional[Mapping[str, int]] = None,
                 max_alpha: int = MAX_ALPHA) -> ProfileResult:
    """
    Data profiles of the compared methods.

    Problems where no method improved on the start (f0 == f_L) are left out
    of |P| and counted in ``degenerate``.

    Args:
        records: Runs of the grid
        tau: Convergence tolerance
        methods: Methods to compare; f_L is taken over these only
        dims: Dimension per function name; looked up in the registry otherwise
        max_alpha: Largest budget in simplex gradients

    Raises:
        MissingProblem: propagated from compute_fL
    """
    if not 0 < tau < 1:
        raise InvalidParameter("tau must lie in (0, 1)")
    records = list(records)
    if methods is None:
        methods = RelaxationKind.ordered(r.method for r in records)
    else:
        methods = RelaxationKind.ordered(methods)
    records = [r for r in records if r.method in methods]
    f_L = compute_fL(records, methods)
    grouped = group_by_problem(records)
    dimension = _dimension_lookup(dims)

    problems = []
    degenerate = 0
    for problem in sorted(grouped):
        f0 = next(iter(grouped[problem].values())).f0
        if not f0 > f_L[problem]:
            degenerate += 1
            continue
        problems.append(problem)
    if degenerate:
        logger.warning(f"{degenerate} degenerate problem(s) with f0 == f_L left out of the profiles")
    if not problems:
        logger.warning("No non-degenerate problems; all profiles are zero")

    problem_dims = [dimension(function) for function, _ in problems]
    alphas = np.arange(max_alpha + 1)
    profiles = []
    times_by_method: Dict[str, Dict[Problem, Optional[int]]] = {}
    for method in methods:
        times = {p: solve_time(grouped[p][method], f_L[p], tau) for p in problems}
        times_by_method[method.label] = times
        values = data_profile_from_times([times[p] for p in problems], problem_dims, max_alpha)
        profiles.append(DataProfile(method=method, alphas=alphas, values=values))
    return ProfileResult(tau=tau, profiles=profiles, problems=len(problems),
                         degenerate=degenerate, solve_times=times_by_method)


def emit_csv(profiles: Sequence[DataProfile], path: str) -> None:
    """Write ``alpha,<method>,...`` with one row per alpha."""
    if not profiles:
        raise InvalidParameter("no profiles to write")
    _ensure_parent(path)
    alphas = profiles[0].alphas
    table = np.column_stack([alphas] + [p.values for p in profiles])
    header = ",".join(["alpha"] + [p.label for p in profiles])
    np.savetxt(path, table, fmt=["%d"] + ["%.17g"] * len(profiles), delimiter=",",
               header=header, comments="")
    logger.info(f"Wrote data profiles to {path}")


def read_csv(path: str) -> List[DataProfile]:
    """
    Read profiles written by ``emit_csv``.

    Raises:
        SchemaMismatch: if the header is not ``alpha,<method>,...``
    """
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().strip().split(",")
    if not header or header[0] != "alpha":
        raise SchemaMismatch(f"{path}: expected an 'alpha' first column")
    table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    alphas = table[:, 0].astype(int)
    return [DataProfile(method=RelaxationKind.parse(label), alphas=alphas, values=table[:, j])
            for j, label in enumerate(header[1:], start=1)]


def emit_plot(profiles: Sequence[DataProfile], path: str, title: Optional[str] = None) -> None:
    """Draw the profiles as step curves into a self-contained SVG."""
    if not profiles:
        raise InvalidParameter("no profiles to plot")
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    _ensure_parent(path)
    with matplotlib.rc_context({"svg.fonttype": "path", "svg.hashsalt": "nmls"}):
        fig, ax = plt.subplots(figsize=(6.4, 4.8))
        for profile in profiles:
            ax.step(profile.alphas, profile.values, where="post", label=profile.label)
        ax.set_xlabel("simplex gradients")
        ax.set_ylabel("fraction solved")
        ax.set_xlim(0, int(profiles[0].alphas[-1]))
        ax.set_ylim(0.0, 1.0)
        ax.grid(True, alpha=0.3)
        ax.legend(loc="lower right")
        if title:
            ax.set_title(title)
        fig.savefig(path, format="svg", bbox_inches="tight", metadata={"Date": None})
        plt.close(fig)
    logger.info(f"Wrote profile plot to {path}")


def write_summary(result: ProfileResult, path: str) -> None:
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(result.summary(), f, indent=2)
        f.write("\n")


def _ensure_parent(path: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
