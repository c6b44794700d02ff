"""
Relaxed-Armijo backtracking driver shared by all five methods.

Each iteration computes a descent direction, backtracks along it until

    f(x+) - f(x_k) <= rho * beta**i * alpha_k * <g_k, d_k> + nu_{k,i}

holds, accepts x+, carries the step over as alpha_{k+1} = beta**(i_k - 1) * alpha_k,
and updates the history window, the averaged reference value and the
inverse-Hessian approximation. The methods differ only in how nu is formed.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from core.direction import InverseHessian, bfgs_update, descent_direction
from core.errors import (BudgetExhausted, InvariantViolation, LineSearchFailure,
                         NonFiniteValue)
from core.objective import EvalCounter, Objective, as_point, counted_gradient, counted_value
from core.params import SolveConfig
from core.records import IterationEntry, RunRecord, RunStatus
from core.relaxation import (HistoryWindow, RelaxationKind, ZhangHagerState, f_lk,
                             nu_gll, nu_metropolis, nu_modified_metropolis, nu_monotone,
                             nu_upper_bound, nu_zhang_hager, zh_update)

logger = logging.getLogger(__name__)


def satisfies_relaxed_armijo(f_plus: float, f_k: float, armijo_term: float, nu: float) -> bool:
    """
    The acceptance test in difference form.

    Comparing f(x+) - f(x_k) rather than f(x+) against f(x_k) + ... keeps a
    strictly negative right-hand side from being rounded away when nu is 0.
    """
    return f_plus - f_k <= armijo_term + nu


@dataclass
class BacktrackResult:
    i_k: int
    x_plus: np.ndarray
    f_plus: float
    nu_k: float
    trial_evals: int
    step: float


def backtrack(obj: Objective, counter: EvalCounter, x_k: np.ndarray, f_k: float,
              g_k: np.ndarray, d_k: np.ndarray, alpha_k: float, window: HistoryWindow,
              zh_state: Optional[ZhangHagerState], config: SolveConfig, k: int,
              sigma: Optional[float] = None) -> BacktrackResult:
    """
    Find the smallest i such that the trial x_k + beta**i * alpha_k * d_k is accepted.

    Args:
        obj: Objective being minimized
        counter: Evaluation counter; every trial costs one evaluation
        x_k, f_k, g_k: Current iterate, its value and gradient
        d_k: Descent direction, <g_k, d_k> < 0
        alpha_k: Initial trial step
        window: History of accepted values, newest entry f_k
        zh_state: Averaged reference state (used by ZHANG_HAGER only)
        config: Solve configuration
        k: Iteration index
        sigma: Resolved relaxation scale; defaults to config.params.sigma

    Returns:
        The accepted trial

    Raises:
        LineSearchFailure: if more than max_backtracks reductions are needed
        BudgetExhausted: propagated from the counter
    """
    params = config.params
    kind = config.kind
    if sigma is None:
        sigma = params.sigma
    slope = float(g_k @ d_k)
    window_max = f_lk(window)

    # terms that do not depend on the trial point
    if kind is RelaxationKind.MONOTONE:
        fixed_nu = nu_monotone()
    elif kind is RelaxationKind.GLL:
        fixed_nu = nu_gll(window, f_k)
    elif kind is RelaxationKind.ZHANG_HAGER:
        fixed_nu = nu_zhang_hager(zh_state, f_k)
    else:
        fixed_nu = None

    evals = 0
    for i in range(params.max_backtracks + 1):
        step = alpha_k * params.beta ** i
        x_plus = x_k + step * d_k
        evals += 1
        try:
            f_plus = counted_value(obj, counter, x_plus)
        except NonFiniteValue:
            # overflow far from the box counts as a rejected trial
            continue
        armijo_term = params.rho * step * slope
        if not armijo_term < 0:
            # the sufficient-decrease term underflowed; nothing can be certified
            continue
        if fixed_nu is not None:
            nu = fixed_nu
        elif kind is RelaxationKind.METROPOLIS:
            nu = nu_metropolis(sigma, params.theta, f_plus, f_k, k)
        else:
            nu = nu_modified_metropolis(sigma, params.theta, window_max, f_plus, armijo_term, k)
        if satisfies_relaxed_armijo(f_plus, f_k, armijo_term, nu):
            return BacktrackResult(i_k=i, x_plus=x_plus, f_plus=f_plus, nu_k=nu,
                                   trial_evals=evals, step=step)
    raise LineSearchFailure(k, params.max_backtracks)


class LineSearchSolver:
    """Runs one relaxed-Armijo minimization from a given start."""

    def __init__(self, config: SolveConfig):
        """
        Initialize the solver.

        Args:
            config: Method, parameters, budget and direction mode
        """
        self.config = config

    def solve(self, obj: Objective, x0, function: Optional[str] = None,
              start_index: int = 0) -> RunRecord:
        """
        Minimize ``obj`` from ``x0`` until a stopping condition is met.

        Args:
            obj: Objective to minimize
            x0: Starting point
            function: Name stored in the record (defaults to obj.name)
            start_index: Start index stored in the record

        Returns:
            The run record; objective pathologies are reported through its status
        """
        config = self.config
        params = config.params
        x = as_point(x0, obj.dim)
        counter = EvalCounter(config.f_budget, config.charge_gradients, obj.dim)
        record = RunRecord(method=config.kind, function=function or obj.name,
                           start_index=start_index, status=RunStatus.MAX_ITERS_REACHED,
                           best_f=math.inf, best_x=None, f_evals=0, g_evals=0,
                           sigma=math.nan)

        try:
            f_x = counted_value(obj, counter, x)
            g_x = counted_gradient(obj, counter, x)
        except NonFiniteValue as e:
            logger.warning(f"{record.function}[{start_index}]: {e} at the starting point")
            return self._finish(record, counter, RunStatus.NON_FINITE_ENCOUNTERED)
        except BudgetExhausted:
            return self._finish(record, counter, RunStatus.BUDGET_EXHAUSTED)

        sigma = params.resolve_sigma(f_x)
        record.sigma = sigma
        window = HistoryWindow(params.window_M)
        window.push(f_x)
        zh_state = ZhangHagerState.start(f_x)
        hess = InverseHessian.identity(obj.dim)
        alpha = params.alpha0
        k = 0

        while True:
            g_norm = float(np.linalg.norm(g_x))
            record.final_grad_norm = g_norm
            if g_norm <= params.grad_tol:
                status = RunStatus.GRAD_TOLERANCE_REACHED
                break
            if k >= params.max_iters:
                status = RunStatus.MAX_ITERS_REACHED
                break

            if config.direction == "steepest":
                d, fell_back = -g_x, False
            else:
                d, fell_back = descent_direction(hess, g_x, params.descent_tol)
            if fell_back:
                record.fallbacks += 1

            window_max = f_lk(window)
            try:
                result = backtrack(obj, counter, x, f_x, g_x, d, alpha, window,
                                   zh_state, config, k, sigma=sigma)
            except BudgetExhausted:
                status = RunStatus.BUDGET_EXHAUSTED
                break
            except LineSearchFailure as e:
                logger.warning(f"{record.function}[{start_index}] {config.kind.label}: {e}")
                status = RunStatus.LINE_SEARCH_FAILURE
                break

            if config.kind.per_trial and not 0 < result.nu_k <= nu_upper_bound(sigma, params.theta, k):
                raise InvariantViolation(
                    f"nu_{k}={result.nu_k!r} outside (0, sigma/(k+1)^theta]")

            entry = IterationEntry(k=k, f=f_x, grad_norm=g_norm, alpha=alpha, i=result.i_k,
                                   nu=result.nu_k, f_next=result.f_plus, slope=float(g_x @ d),
                                   f_lk=window_max, fallback=fell_back,
                                   f_evals=counter.f_evals, g_evals=counter.g_evals)

            x_next, f_next = result.x_plus, result.f_plus
            try:
                g_next = counted_gradient(obj, counter, x_next)
            except (NonFiniteValue, BudgetExhausted) as e:
                entry.g_evals = counter.g_evals
                record.iterates.append(entry)
                record.final_grad_norm = None
                if isinstance(e, BudgetExhausted):
                    status = RunStatus.BUDGET_EXHAUSTED
                else:
                    logger.warning(f"{record.function}[{start_index}]: {e}")
                    status = RunStatus.NON_FINITE_ENCOUNTERED
                break
            entry.g_evals = counter.g_evals
            record.iterates.append(entry)

            alpha = alpha * params.beta ** (result.i_k - 1)
            if params.alpha_max is not None:
                alpha = min(alpha, params.alpha_max)
            window.push(f_next)
            if config.kind is RelaxationKind.ZHANG_HAGER:
                zh_state = zh_update(zh_state, f_next, params.zh_eta)
            if config.direction == "bfgs":
                hess = bfgs_update(hess, x_next - x, g_next - g_x, params.curvature_tol)
            x, f_x, g_x = x_next, f_next, g_next
            k += 1

        return self._finish(record, counter, status)

    @staticmethod
    def _finish(record: RunRecord, counter: EvalCounter, status: RunStatus) -> RunRecord:
        record.status = status
        record.best_f = counter.best_f
        record.best_x = counter.best_x
        record.f_evals = counter.f_evals
        record.g_evals = counter.g_evals
        record.breakpoints = list(counter.breakpoints)
        logger.debug(f"{record.method.label} {record.function}[{record.start_index}]: "
                     f"{status.value} after {len(record.iterates)} iterations, "
                     f"best_f={record.best_f:.6g}, f_evals={record.f_evals}")
        return record


def solve(obj: Objective, x0, config: SolveConfig, function: Optional[str] = None,
          start_index: int = 0) -> RunRecord:
    """Convenience wrapper around LineSearchSolver.solve."""
    return LineSearchSolver(config).solve(obj, x0, function=function, start_index=start_index)
