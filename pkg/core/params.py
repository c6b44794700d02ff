"""
Line-search parameters and solve configuration.
"""

import math
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any, Dict, Mapping, Optional

from core.errors import InvalidParameter
from core.relaxation import RelaxationKind

DIRECTION_MODES = ("bfgs", "steepest")


@dataclass(frozen=True)
class LineSearchParams:
    """
    Scalar knobs of the line search plus stopping controls.

    ``sigma=None`` means "auto": max(|f(x0)|, sigma_floor) is used.
    ``alpha_max=None`` leaves the step growth uncapped.
    """
    alpha0: float = 1.0
    beta: float = 0.5
    rho: float = 0.5
    theta: float = 2.0
    sigma: Optional[float] = None
    window_M: int = 10
    grad_tol: float = 0.0
    max_iters: int = 100_000
    max_backtracks: int = 60
    alpha_max: Optional[float] = None
    sigma_floor: float = 1e-8
    zh_eta: float = 0.85
    curvature_tol: float = 1e-12
    descent_tol: float = 1e-12

    def __post_init__(self):
        checks = [
            (self.alpha0 > 0, "alpha0 must be positive"),
            (0 < self.beta < 1, "beta must lie in (0, 1)"),
            (0 < self.rho < 1, "rho must lie in (0, 1)"),
            (self.theta > 0, "theta must be positive"),
            (self.sigma is None or self.sigma > 0, "sigma must be positive or auto"),
            (isinstance(self.window_M, int) and self.window_M >= 1,
             "window_M must be a positive integer"),
            (self.grad_tol >= 0, "grad_tol must be nonnegative"),
            (isinstance(self.max_iters, int) and self.max_iters >= 0,
             "max_iters must be a nonnegative integer"),
            (isinstance(self.max_backtracks, int) and self.max_backtracks >= 1,
             "max_backtracks must be a positive integer"),
            (self.alpha_max is None or self.alpha_max >= self.alpha0,
             "alpha_max must be at least alpha0"),
            (self.sigma_floor > 0, "sigma_floor must be positive"),
            (0 <= self.zh_eta <= 1, "zh_eta must lie in [0, 1]"),
            (self.curvature_tol >= 0, "curvature_tol must be nonnegative"),
            (self.descent_tol >= 0, "descent_tol must be nonnegative"),
        ]
        for ok, message in checks:
            if not ok:
                raise InvalidParameter(message)
        for name in ("alpha0", "beta", "rho", "theta", "grad_tol"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameter(f"{name} must be finite")

    @classmethod
    def standard(cls) -> "LineSearchParams":
        """alpha0=1, beta=rho=0.5, theta=2, sigma=|f(x0)|, M=10."""
        return cls()

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> "LineSearchParams":
        """
        Build parameters from a configuration mapping.

        Args:
            values: Mapping of field names to values; ``sigma`` may be "auto"

        Returns:
            Validated parameters

        Raises:
            InvalidParameter: on unknown keys or out-of-range values
        """
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise InvalidParameter(f"Unknown line-search keys: {sorted(unknown)}")
        kwargs = dict(values)
        if isinstance(kwargs.get("sigma"), str):
            if kwargs["sigma"].lower() != "auto":
                raise InvalidParameter(f"sigma must be a number or 'auto', got {kwargs['sigma']!r}")
            kwargs["sigma"] = None
        for name in ("window_M", "max_iters", "max_backtracks"):
            if name in kwargs and isinstance(kwargs[name], float) and kwargs[name].is_integer():
                kwargs[name] = int(kwargs[name])
        return cls(**kwargs)

    def to_mapping(self) -> Dict[str, Any]:
        values = asdict(self)
        if values["sigma"] is None:
            values["sigma"] = "auto"
        return values

    def with_overrides(self, **overrides) -> "LineSearchParams":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def resolve_sigma(self, f0: float) -> float:
        if self.sigma is not None:
            return self.sigma
        return max(abs(f0), self.sigma_floor)


@dataclass(frozen=True)
class SolveConfig:
    """Everything one solve needs besides the objective and the start."""
    kind: RelaxationKind
    params: LineSearchParams = field(default_factory=LineSearchParams)
    f_budget: Optional[int] = None
    charge_gradients: bool = False
    direction: str = "bfgs"

    def __post_init__(self):
        if self.direction not in DIRECTION_MODES:
            raise InvalidParameter(f"direction must be one of {DIRECTION_MODES}")
        if self.f_budget is not None and self.f_budget < 1:
            raise InvalidParameter("f_budget must be a positive integer")

    @property
    def grad_tol(self) -> float:
        return self.params.grad_tol

    @property
    def max_iters(self) -> int:
        return self.params.max_iters

    @classmethod
    def standard(cls, kind: RelaxationKind, f_budget: Optional[int] = None) -> "SolveConfig":
        return cls(kind=kind, params=LineSearchParams.standard(), f_budget=f_budget)
