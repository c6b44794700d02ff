"""
Theoretical bounds of the modified Metropolis line search and the
harnesses that check them against instrumented runs.

Under Lipschitz gradients (constant L), a lower bound f_low and directions
with <g, d> <= -c1 |g|^2 and |d| <= c2 |g|, every run satisfies

    min_{k<T} |grad f(x_k)|^2 <= [L~ (f0 - f_low) + L~ sigma S_T(theta)] / T

where S_T(theta) bounds sum_{k=1}^T k^-theta. The harness pins d = -g so
that c1 = c2 = 1 hold exactly.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import InvalidParameter, MissingConstants, ThetaOne
from core.function_registry import make_suite
from core.functions.base_function import TestFunction
from core.objective import Objective, as_point
from core.params import LineSearchParams, SolveConfig
from core.records import RunRecord, RunStatus
from core.relaxation import RelaxationKind, nu_upper_bound
from core.solver import satisfies_relaxed_armijo, solve
from utils.event_bus import Event, EventType, publish
from utils.prng import instance_seed, uniform_in_box

logger = logging.getLogger(__name__)

SUITES = ("gradients", "lemma1", "theorem1", "all")
LEMMA_THETAS = (0.5, 1.0, 2.0)
THEOREM_THETAS = (0.5, 2.0)
THEOREM_EPSILONS = (1e-1, 1e-2, 1e-3)
GRADIENT_POINTS = 50
GRADIENT_RTOL = 1e-5
GRADIENT_SEED = 20240601
HARNESS_MAX_ITERS = 500


@dataclass(frozen=True)
class AssumptionConstants:
    """Lipschitz constant of the gradient, direction constants and a lower bound on f."""
    L: float
    f_low: float
    c1: float = 1.0
    c2: float = 1.0

    def __post_init__(self):
        if not (self.L > 0 and self.c1 > 0 and self.c2 > 0):
            raise InvalidParameter("L, c1 and c2 must be positive")
        if not math.isfinite(self.f_low):
            raise InvalidParameter("f_low must be finite")


def l_tilde(params: LineSearchParams, consts: AssumptionConstants) -> float:
    """max{1/(rho beta alpha0 c1), L (c2/c1)^2 / (2 rho (1-rho) beta)}"""
    rho, beta = params.rho, params.beta
    first = 1.0 / (rho * beta * params.alpha0 * consts.c1)
    second = consts.L / (2.0 * rho * (1.0 - rho) * beta) * (consts.c2 / consts.c1) ** 2
    return max(first, second)


def harmonic_sum_bound(T: int, theta: float) -> float:
    """Upper bound on sum_{k=1}^T k^-theta."""
    if T < 1:
        raise InvalidParameter("T must be at least 1")
    if not theta > 0:
        raise InvalidParameter("theta must be positive")
    if theta > 1:
        return theta / (theta - 1.0)
    if theta == 1:
        return 1.0 + math.log(T)
    return T ** (1.0 - theta) / (1.0 - theta)


def lemma1_bound(T: int, theta: float, sigma: float, l_tilde: float, f0: float,
                 f_low: float) -> float:
    """
    Bound on min_{k<T} |grad f(x_k)|^2 after T iterations.

    Args:
        T: Number of iterations, at least 1
        theta: Decay exponent of the relaxation term
        sigma: Relaxation scale
        l_tilde: Composite constant from ``l_tilde``
        f0: f(x_0)
        f_low: Lower bound on f
    """
    gap = l_tilde * (f0 - f_low) / T
    if theta > 1:
        return gap + l_tilde * sigma * theta / (theta - 1.0) / T
    if theta == 1:
        return gap + l_tilde * sigma * (1.0 + math.log(T)) / T
    return gap + l_tilde * sigma / (1.0 - theta) / T ** theta


def theorem1_bound(eps: float, theta: float, sigma: float, l_tilde: float, f0: float,
                   f_low: float) -> float:
    """
    Bound on the first iteration T(eps) with |grad f(x_T)| <= eps.

    Raises:
        ThetaOne: the bound is not available for theta = 1
    """
    if not eps > 0:
        raise InvalidParameter("eps must be positive")
    if theta == 1:
        raise ThetaOne("no closed-form iteration bound for theta = 1")
    if theta > 1:
        return (l_tilde * (f0 - f_low) + l_tilde * sigma * theta / (theta - 1.0)) * eps ** -2
    return max(2.0 * l_tilde * (f0 - f_low) * eps ** -2,
               (2.0 * l_tilde * sigma / (1.0 - theta)) ** (1.0 / theta) * eps ** (-2.0 / theta))


def step_size_floor(params: LineSearchParams, consts: AssumptionConstants) -> float:
    """min{alpha0, 2 (1-rho) c1 / (L c2^2)}, a lower bound on every alpha_k."""
    return min(params.alpha0, 2.0 * (1.0 - params.rho) * consts.c1 / (consts.L * consts.c2 ** 2))


@dataclass
class HarnessProblem:
    """An objective with the constants the bounds need."""
    objective: Objective
    x0: np.ndarray
    lipschitz: Optional[float] = None
    f_low: Optional[float] = None

    def constants(self) -> AssumptionConstants:
        """
        Raises:
            MissingConstants: if L or f_low is unknown
        """
        if self.lipschitz is None or self.f_low is None:
            raise MissingConstants(f"{self.objective.name}: harness needs L and f_low")
        return AssumptionConstants(L=self.lipschitz, f_low=self.f_low)


def quadratic_problem(weights: Sequence[float] = (1.0, 1.0),
                      x0: Optional[Sequence[float]] = None) -> HarnessProblem:
    """
    f(x) = 1/2 sum_i w_i x_i^2 with L = max w_i and f_low = 0.

    The default is 1/2 |x|^2 in two dimensions started from (1, 0).
    """
    w = as_point(weights)
    if np.any(w <= 0):
        raise InvalidParameter("weights must be positive")
    dim = w.shape[0]
    start = as_point(x0, dim) if x0 is not None else np.eye(dim)[0]
    objective = Objective(
        name="quadratic" if np.all(w == 1.0) else "weighted_quadratic",
        dim=dim, lower=-np.ones(dim), upper=np.ones(dim),
        value_map=lambda x: 0.5 * float(np.sum(w * x * x)),
        gradient_map=lambda x: w * x,
    )
    return HarnessProblem(objective=objective, x0=start, lipschitz=float(w.max()), f_low=0.0)


def harness_params(theta: float, sigma: float = 1.0, grad_tol: float = 0.0,
                   max_iters: int = HARNESS_MAX_ITERS) -> LineSearchParams:
    """alpha0 = 1, beta = rho = 0.5 with the given theta and sigma."""
    return LineSearchParams(alpha0=1.0, beta=0.5, rho=0.5, theta=theta, sigma=sigma,
                            grad_tol=grad_tol, max_iters=max_iters)


def harness_run(problem: HarnessProblem, params: LineSearchParams) -> RunRecord:
    """Modified Metropolis with steepest-descent directions and no budget."""
    config = SolveConfig(kind=RelaxationKind.MODIFIED_METROPOLIS, params=params,
                         direction="steepest")
    return solve(problem.objective, problem.x0, config)


@dataclass
class CheckResult:
    """Outcome of one named check."""
    name: str
    passed: bool
    detail: str = ""
    margin: Optional[float] = None

    def to_dict(self) -> Dict[str, object]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail,
                "margin": self.margin}


@dataclass
class LemmaReport:
    passed: bool
    checked: int
    worst_margin: float
    failures: List[Tuple[int, float, float]] = field(default_factory=list)


def check_lemma1(run: RunRecord, consts: AssumptionConstants,
                 params: LineSearchParams) -> LemmaReport:
    """
    Check min_{k<T} |grad f(x_k)|^2 <= lemma1_bound(T) for every recorded T.

    The inequality is tested exactly, without tolerance. The margin is
    bound - lhs; the report carries the smallest one.
    """
    norms = run.grad_norms()
    lt = l_tilde(params, consts)
    worst = math.inf
    failures = []
    running_min = math.inf
    for T in range(1, len(norms) + 1):
        running_min = min(running_min, norms[T - 1] ** 2)
        bound = lemma1_bound(T, params.theta, run.sigma, lt, run.f0, consts.f_low)
        worst = min(worst, bound - running_min)
        if not running_min <= bound:
            failures.append((T, running_min, bound))
    return LemmaReport(passed=not failures, checked=len(norms), worst_margin=worst,
                       failures=failures)


def check_theorem1(run: RunRecord, consts: AssumptionConstants, params: LineSearchParams,
                   eps: float) -> CheckResult:
    """Observed T(eps) against theorem1_bound(eps)."""
    name = f"theorem1 theta={params.theta:g} eps={eps:g}"
    if run.status is not RunStatus.GRAD_TOLERANCE_REACHED:
        return CheckResult(name, False, f"run ended with {run.status.value}")
    observed = len(run.iterates)
    bound = theorem1_bound(eps, params.theta, run.sigma, l_tilde(params, consts), run.f0,
                           consts.f_low)
    return CheckResult(name, observed <= bound, f"T(eps)={observed} bound={bound:.6g}",
                       margin=bound - observed)


def audit_trace(run: RunRecord, params: LineSearchParams,
                floor: Optional[float] = None) -> List[str]:
    """
    Re-check a stored trace without re-evaluating the objective.

    Checks the relaxed Armijo test of every accepted step, the step
    carry-over alpha_{k+1} = beta**(i_k - 1) alpha_k, the nu ceiling and
    its equality case for the Metropolis-type methods, strict decrease for
    the monotone method, nondecreasing counters and, when given, a lower
    bound on alpha_k.

    Returns:
        Descriptions of the violations; empty when the trace is consistent
    """
    violations = []
    kind = run.method
    previous = None
    for entry in run.iterates:
        step = entry.accepted_step(params.beta)
        armijo_term = params.rho * step * entry.slope
        if not satisfies_relaxed_armijo(entry.f_next, entry.f, armijo_term, entry.nu):
            violations.append(f"k={entry.k}: relaxed Armijo test does not hold")
        if not entry.slope < 0:
            violations.append(f"k={entry.k}: direction is not a descent direction")
        if kind is RelaxationKind.MONOTONE and not entry.f_next < entry.f:
            violations.append(f"k={entry.k}: monotone method did not decrease f")
        if kind.per_trial:
            ceiling = nu_upper_bound(run.sigma, params.theta, entry.k)
            if not 0 < entry.nu <= ceiling:
                violations.append(f"k={entry.k}: nu={entry.nu!r} outside (0, {ceiling!r}]")
            if (kind is RelaxationKind.MODIFIED_METROPOLIS and entry.f_next < entry.f_lk
                    and abs(entry.nu - ceiling) > 1e-15 * ceiling):
                violations.append(f"k={entry.k}: nu={entry.nu!r} differs from {ceiling!r}")
        if floor is not None and entry.alpha < floor:
            violations.append(f"k={entry.k}: alpha={entry.alpha!r} below floor {floor!r}")
        if previous is not None:
            expected = previous.alpha * params.beta ** (previous.i - 1)
            if params.alpha_max is not None:
                expected = min(expected, params.alpha_max)
            if entry.alpha != expected:
                violations.append(f"k={entry.k}: alpha={entry.alpha!r}, expected {expected!r}")
            if entry.f_evals < previous.f_evals or entry.g_evals < previous.g_evals:
                violations.append(f"k={entry.k}: evaluation counters decreased")
            if entry.f != previous.f_next:
                violations.append(f"k={entry.k}: f(x_k) differs from the accepted f(x+)")
        previous = entry
    return violations


def finite_difference_gradient(value: Callable[[np.ndarray], float], x: np.ndarray,
                               rel_step: float = 1e-6) -> np.ndarray:
    """Central differences with h_i = rel_step * (1 + |x_i|)."""
    grad = np.zeros_like(x)
    for i in range(x.shape[0]):
        h = rel_step * (1.0 + abs(x[i]))
        xp = x.copy()
        xm = x.copy()
        xp[i] += h
        xm[i] -= h
        grad[i] = (value(xp) - value(xm)) / (xp[i] - xm[i])
    return grad


def gradient_error(fn: TestFunction, x: np.ndarray) -> float:
    """|g_fd - g| / max(1, |g|) at x."""
    analytic = np.asarray(fn.gradient(x), dtype=float)
    numeric = finite_difference_gradient(fn.value, x)
    return float(np.linalg.norm(numeric - analytic) / max(1.0, np.linalg.norm(analytic)))


def gradient_sample_points(fn: TestFunction, count: int = GRADIENT_POINTS,
                           seed: int = GRADIENT_SEED) -> List[np.ndarray]:
    lower, upper = fn.bounds()
    return [uniform_in_box(instance_seed(seed, f"gradient:{fn.key}", j), lower, upper)
            for j in range(count)]


def check_gradients(fn: TestFunction, count: int = GRADIENT_POINTS,
                    rtol: float = GRADIENT_RTOL, seed: int = GRADIENT_SEED) -> CheckResult:
    """Finite-difference agreement at ``count`` seeded points of the box."""
    errors = [gradient_error(fn, x) for x in gradient_sample_points(fn, count, seed)]
    worst = max(errors)
    return CheckResult(f"gradient {fn.key}", worst <= rtol,
                       f"{count} points, worst relative error {worst:.3e}", margin=rtol - worst)


def lemma_problems() -> List[HarnessProblem]:
    """1/2 |x|^2 from (1, 0), and an ill-conditioned quadratic that runs longer."""
    return [quadratic_problem(), quadratic_problem((1.0, 0.01), (1.0, 1.0))]


def run_lemma_suite() -> List[CheckResult]:
    results = []
    for problem in lemma_problems():
        consts = problem.constants()
        for theta in LEMMA_THETAS:
            params = harness_params(theta)
            run = harness_run(problem, params)
            report = check_lemma1(run, consts, params)
            name = f"lemma1 {problem.objective.name} theta={theta:g}"
            detail = f"T=1..{report.checked}, worst margin {report.worst_margin:.3e}"
            if report.failures:
                T, lhs, bound = report.failures[0]
                detail += f"; first failure at T={T}: {lhs!r} > {bound!r}"
            results.append(CheckResult(name, report.passed, detail, report.worst_margin))
            violations = audit_trace(run, params, floor=step_size_floor(params, consts))
            results.append(CheckResult(f"trace {problem.objective.name} theta={theta:g}",
                                       not violations, "; ".join(violations[:3])
                                       or f"{len(run.iterates)} iterations consistent"))
    return results


def run_theorem_suite() -> List[CheckResult]:
    results = []
    for problem in lemma_problems()[:1]:
        consts = problem.constants()
        for theta in THEOREM_THETAS:
            for eps in THEOREM_EPSILONS:
                params = harness_params(theta, grad_tol=eps, max_iters=100_000)
                result = check_theorem1(harness_run(problem, params), consts, params, eps)
                result.name = f"{result.name} {problem.objective.name}"
                results.append(result)
    return results


def run_gradient_suite(count: int = GRADIENT_POINTS) -> List[CheckResult]:
    return [check_gradients(fn, count) for fn in make_suite()]


def run_suite(name: str) -> List[CheckResult]:
    """
    Run one verification suite.

    Args:
        name: 'gradients', 'lemma1', 'theorem1' or 'all'

    Returns:
        One result per check; failures are also published as CHECK_FAILED events
    """
    if name not in SUITES:
        raise InvalidParameter(f"Unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    results: List[CheckResult] = []
    if name in ("gradients", "all"):
        results += run_gradient_suite()
    if name in ("lemma1", "all"):
        results += run_lemma_suite()
    if name in ("theorem1", "all"):
        results += run_theorem_suite()
    for result in results:
        if not result.passed:
            logger.warning(f"Check failed: {result.name}: {result.detail}")
            publish(Event(EventType.CHECK_FAILED, data=result, source=__name__))
    return results


def format_report(suite: str, results: Sequence[CheckResult]) -> str:
    """Plain-text report followed by a one-line JSON summary."""
    lines = [f"verify suite: {suite}"]
    for result in results:
        lines.append(f"  [{'PASS' if result.passed else 'FAIL'}] {result.name}: {result.detail}")
    failed = [r.name for r in results if not r.passed]
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    lines.append(json.dumps({"suite": suite, "passed": not failed, "checks": len(results),
                             "failures": failed}))
    return "\n".join(lines)
