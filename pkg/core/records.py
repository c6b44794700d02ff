"""
Run traces and their compact summaries.
"""

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from core.relaxation import RelaxationKind

Breakpoint = Tuple[int, float]


class RunStatus(Enum):
    GRAD_TOLERANCE_REACHED = "GradToleranceReached"
    BUDGET_EXHAUSTED = "BudgetExhausted"
    MAX_ITERS_REACHED = "MaxItersReached"
    LINE_SEARCH_FAILURE = "LineSearchFailure"
    NON_FINITE_ENCOUNTERED = "NonFiniteEncountered"

    @property
    def is_fatal(self) -> bool:
        return self in (RunStatus.LINE_SEARCH_FAILURE, RunStatus.NON_FINITE_ENCOUNTERED)


@dataclass
class IterationEntry:
    """One accepted iteration k -> k+1."""
    k: int
    f: float              # f(x_k)
    grad_norm: float      # |grad f(x_k)|
    alpha: float          # alpha_k, the initial trial step of iteration k
    i: int                # backtracks before acceptance
    nu: float             # relaxation term at acceptance
    f_next: float         # f(x_{k+1})
    slope: float          # <grad f(x_k), d_k>
    f_lk: float           # window maximum at iteration k
    fallback: bool        # True when d_k fell back to -grad f(x_k)
    f_evals: int
    g_evals: int

    def accepted_step(self, beta: float) -> float:
        """beta**i * alpha_k, the step length factor that was accepted."""
        return self.alpha * beta ** self.i


@dataclass
class RunSummary:
    """What the results file stores about one run."""
    method: RelaxationKind
    function: str
    start_index: int
    status: RunStatus
    best_f: float
    f_evals: int
    g_evals: int
    breakpoints: List[Breakpoint] = field(default_factory=list)

    @property
    def f0(self) -> float:
        """Value at the starting point, the first recorded breakpoint."""
        if not self.breakpoints:
            return math.inf
        return self.breakpoints[0][1]

    @property
    def problem(self) -> Tuple[str, int]:
        return (self.function, self.start_index)


@dataclass
class RunRecord:
    """The full trace of one solve."""
    method: RelaxationKind
    function: str
    start_index: int
    status: RunStatus
    best_f: float
    best_x: Optional[np.ndarray]
    f_evals: int
    g_evals: int
    sigma: float
    breakpoints: List[Breakpoint] = field(default_factory=list)
    iterates: List[IterationEntry] = field(default_factory=list)
    final_grad_norm: Optional[float] = None
    fallbacks: int = 0

    @property
    def f0(self) -> float:
        if self.iterates:
            return self.iterates[0].f
        return self.breakpoints[0][1] if self.breakpoints else math.inf

    @property
    def problem(self) -> Tuple[str, int]:
        return (self.function, self.start_index)

    def grad_norms(self) -> List[float]:
        """|grad f(x_k)| for k = 0..K, including the final iterate when known."""
        norms = [entry.grad_norm for entry in self.iterates]
        if self.final_grad_norm is not None:
            norms.append(self.final_grad_norm)
        return norms

    def summary(self) -> RunSummary:
        return RunSummary(
            method=self.method,
            function=self.function,
            start_index=self.start_index,
            status=self.status,
            best_f=self.best_f,
            f_evals=self.f_evals,
            g_evals=self.g_evals,
            breakpoints=list(self.breakpoints),
        )

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready view; non-finite reals become None."""
        def real(value):
            return value if value is not None and math.isfinite(value) else None

        return {
            "method": self.method.label,
            "function": self.function,
            "start_index": self.start_index,
            "status": self.status.value,
            "best_f": real(self.best_f),
            "best_x": None if self.best_x is None else [float(v) for v in self.best_x],
            "f0": real(self.f0),
            "sigma": real(self.sigma),
            "f_evals": self.f_evals,
            "g_evals": self.g_evals,
            "iterations": len(self.iterates),
            "final_grad_norm": real(self.final_grad_norm),
            "fallbacks": self.fallbacks,
            "breakpoints": [[e, real(f)] for e, f in self.breakpoints],
            "trace": [{k: (real(v) if isinstance(v, float) else v)
                       for k, v in asdict(entry).items()} for entry in self.iterates],
        }
