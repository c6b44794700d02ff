"""
Base class for all benchmark functions.
"""

import re
from abc import ABC, abstractmethod
from typing import Optional, Sequence, Tuple

import numpy as np

from core.errors import InvalidParameter
from core.objective import Objective


def normalize_name(name: str) -> str:
    """Lower-case a function name and collapse everything else into underscores."""
    return re.sub(r"[^a-z0-9]+", "_", name.lower()).strip("_")


class TestFunction(ABC):
    """
    Abstract base class for benchmark functions.

    To add a function, inherit from this class in a module under
    ``core/functions/``, set the class attributes and implement
    ``value`` and ``gradient``. The registry discovers it automatically.
    """

    __test__ = False

    key: str = ""
    display_name: str = ""
    default_dim: int = 2
    scalable: bool = False
    aliases: Tuple[str, ...] = ()
    # literature global minimum for the default dimension, metadata only
    known_best: Optional[float] = None

    def __init__(self, dim: Optional[int] = None):
        """
        Initialize the function.

        Args:
            dim: Dimension; only scalable functions accept a non-default value
        """
        dim = self.default_dim if dim is None else int(dim)
        if dim != self.default_dim and not self.scalable:
            raise InvalidParameter(f"{self.display_name} is defined for n={self.default_dim} only")
        if dim < 1:
            raise InvalidParameter("dimension must be positive")
        self.dim = dim

    @abstractmethod
    def bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        """Return the (lower, upper) search box."""

    @abstractmethod
    def value(self, x: np.ndarray) -> float:
        """Evaluate the function at x."""

    @abstractmethod
    def gradient(self, x: np.ndarray) -> np.ndarray:
        """Evaluate the analytic gradient at x."""

    def minimizer(self) -> Optional[np.ndarray]:
        """A closed-form global minimizer, when one is known."""
        return None

    def matches(self, name: str) -> bool:
        wanted = normalize_name(name)
        return wanted in {self.key, normalize_name(self.display_name), *self.aliases}

    def objective(self) -> Objective:
        lower, upper = self.bounds()
        return Objective(name=self.key, dim=self.dim, lower=lower, upper=upper,
                         value_map=self.value, gradient_map=self.gradient)

    def _box(self, low: float, high: float) -> Tuple[np.ndarray, np.ndarray]:
        return np.full(self.dim, float(low)), np.full(self.dim, float(high))

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"


def products_excluding_each(values: Sequence[float]) -> np.ndarray:
    """prod_{i != j} values[i] for every j, without dividing."""
    values = np.asarray(values, dtype=float)
    prefix = np.concatenate(([1.0], np.cumprod(values[:-1])))
    suffix = np.concatenate((np.cumprod(values[::-1][:-1])[::-1], [1.0]))
    return prefix * suffix
