"""
Objective interface and evaluation accounting.

An Objective bundles a value map, a gradient map and the box used to
sample starting points. All evaluations performed by a solve go through
an EvalCounter so that budgets and best-so-far tracking stay exact.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import BudgetExhausted, InvalidParameter, NonFiniteValue

ValueMap = Callable[[np.ndarray], float]
GradientMap = Callable[[np.ndarray], np.ndarray]


def as_point(coords: Sequence[float], dim: Optional[int] = None) -> np.ndarray:
    """
    Convert a coordinate sequence into a float vector.

    Args:
        coords: Coordinates of the point
        dim: Expected dimension, checked when given

    Returns:
        A fresh one-dimensional float64 array
    """
    x = np.array(coords, dtype=float).reshape(-1)
    if dim is not None and x.shape[0] != dim:
        raise InvalidParameter(f"Point has dimension {x.shape[0]}, expected {dim}")
    return x


@dataclass(frozen=True)
class Objective:
    """A smooth function with its gradient and a sampling box."""
    name: str
    dim: int
    lower: np.ndarray
    upper: np.ndarray
    value_map: ValueMap = field(repr=False, compare=False)
    gradient_map: GradientMap = field(repr=False, compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidParameter(f"Objective {self.name}: dimension must be positive")
        lower = as_point(self.lower, self.dim)
        upper = as_point(self.upper, self.dim)
        if np.any(lower > upper):
            raise InvalidParameter(f"Objective {self.name}: lower bound exceeds upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    def value(self, x: np.ndarray) -> float:
        return float(self.value_map(x))

    def gradient(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self.gradient_map(x), dtype=float).reshape(-1)


class EvalCounter:
    """
    Counts evaluations against an optional budget and tracks the best point.

    The budget is expressed in scalar function evaluations. When
    ``charge_gradients`` is set, every gradient costs ``dim`` evaluations of
    that budget as well.
    """

    def __init__(self, f_budget: Optional[int] = None, charge_gradients: bool = False,
                 dim: int = 1):
        if f_budget is not None and f_budget < 1:
            raise InvalidParameter("f_budget must be a positive integer")
        self.f_evals = 0
        self.g_evals = 0
        self.f_budget = f_budget
        self.charge_gradients = charge_gradients
        self.dim = dim
        self.best_f = math.inf
        self.best_x: Optional[np.ndarray] = None
        # (consumed evaluations, best f) each time the best value improves
        self.breakpoints: List[Tuple[int, float]] = []

    @property
    def consumed(self) -> int:
        """Evaluations charged against the budget so far."""
        if self.charge_gradients:
            return self.f_evals + self.dim * self.g_evals
        return self.f_evals

    def remaining(self) -> Optional[int]:
        if self.f_budget is None:
            return None
        return max(self.f_budget - self.consumed, 0)

    def _check_budget(self, cost: int) -> None:
        if self.f_budget is not None and self.consumed + cost > self.f_budget:
            raise BudgetExhausted(self.consumed, self.f_budget)

    def _observe(self, x: np.ndarray, value: float) -> None:
        if math.isfinite(value) and value < self.best_f:
            self.best_f = value
            self.best_x = x.copy()
            self.breakpoints.append((self.consumed, value))


def counted_value(obj: Objective, counter: EvalCounter, x: np.ndarray) -> float:
    """
    Evaluate the objective and charge one evaluation.

    Raises:
        BudgetExhausted: if the budget does not allow another evaluation
        NonFiniteValue: if the value is NaN or infinite (the call is still counted)
    """
    if x.shape[0] != obj.dim:
        raise InvalidParameter(f"{obj.name}: point dimension {x.shape[0]} != {obj.dim}")
    counter._check_budget(1)
    value = obj.value(x)
    counter.f_evals += 1
    if not math.isfinite(value):
        raise NonFiniteValue("function value", x)
    counter._observe(x, value)
    return value


def counted_gradient(obj: Objective, counter: EvalCounter, x: np.ndarray) -> np.ndarray:
    """
    Evaluate the gradient and count it.

    Raises:
        BudgetExhausted: only when gradients are charged against the budget
        NonFiniteValue: if any component is NaN or infinite
    """
    if x.shape[0] != obj.dim:
        raise InvalidParameter(f"{obj.name}: point dimension {x.shape[0]} != {obj.dim}")
    if counter.charge_gradients:
        counter._check_budget(obj.dim)
    grad = obj.gradient(x)
    counter.g_evals += 1
    if not np.all(np.isfinite(grad)):
        raise NonFiniteValue("gradient", x)
    return grad
