"""
Relaxation terms for the relaxed Armijo condition

    f(x+) - f(x_k) <= rho * step * <g_k, d_k> + nu

and the state they carry between iterations.
"""

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from core.errors import DegenerateSlope, InvalidParameter

# exp(-t) is below the smallest normal double once t exceeds this
EXP_UNDERFLOW = 700.0
# smallest positive double; an underflowed term stays strictly positive
TINY = math.ulp(0.0)


class RelaxationKind(Enum):
    """The five compared methods, labelled as in the benchmark tables."""
    MONOTONE = "M"
    GLL = "NM1"
    ZHANG_HAGER = "NM2"
    METROPOLIS = "NM3"
    MODIFIED_METROPOLIS = "NM4"

    @property
    def label(self) -> str:
        return self.value

    @property
    def cli_name(self) -> str:
        return self.value.lower()

    @property
    def per_trial(self) -> bool:
        """Whether nu depends on the trial point and must be recomputed per backtrack."""
        return self in (RelaxationKind.METROPOLIS, RelaxationKind.MODIFIED_METROPOLIS)

    @classmethod
    def parse(cls, name: str) -> "RelaxationKind":
        key = name.strip()
        for kind in cls:
            if key.upper() in (kind.value, kind.name):
                return kind
        raise InvalidParameter(f"Unknown method {name!r}; expected one of "
                               f"{', '.join(k.cli_name for k in cls)}")

    @classmethod
    def ordered(cls, kinds: Iterable["RelaxationKind"]) -> list:
        """Sort methods into the fixed M, NM1, ..., NM4 order."""
        order = list(cls)
        return sorted(set(kinds), key=order.index)


class HistoryWindow:
    """
    The last m(k)+1 accepted function values, m(k) capped at M.

    Pushing a value implements m(k+1) = min(m(k)+1, M).
    """

    def __init__(self, capacity_M: int):
        if capacity_M < 1:
            raise InvalidParameter("window capacity M must be positive")
        self.capacity_M = capacity_M
        self._values = deque(maxlen=capacity_M + 1)

    def push(self, value: float) -> None:
        self._values.append(value)

    @property
    def m_k(self) -> int:
        return len(self._values) - 1

    @property
    def values(self) -> list:
        return list(self._values)

    @property
    def newest(self) -> float:
        return self._values[-1]

    def __len__(self):
        return len(self._values)

    @classmethod
    def of(cls, values: Iterable[float], capacity_M: int) -> "HistoryWindow":
        window = cls(capacity_M)
        for value in values:
            window.push(value)
        return window


@dataclass(frozen=True)
class ZhangHagerState:
    """Averaged reference value C_k with weight Q_k."""
    C: float
    Q: float = 1.0
    k: int = 0

    @classmethod
    def start(cls, f0: float) -> "ZhangHagerState":
        return cls(C=f0, Q=1.0, k=0)


def f_lk(window: HistoryWindow) -> float:
    """Maximum over the retained window."""
    if len(window) == 0:
        raise InvalidParameter("history window is empty")
    return max(window.values)


def nu_monotone() -> float:
    return 0.0


def nu_gll(window: HistoryWindow, f_k: float) -> float:
    return f_lk(window) - f_k


def nu_zhang_hager(state: ZhangHagerState, f_k: float) -> float:
    return state.C - f_k


def zh_update(state: ZhangHagerState, f_next: float, eta_c: float = 0.85) -> ZhangHagerState:
    """
    Advance (C, Q, k) by one accepted iterate with eta_k = eta_c / (k + 1).
    """
    eta = eta_c / (state.k + 1)
    q_next = eta * state.Q + 1.0
    c_next = (eta * state.Q * state.C + f_next) / q_next
    return ZhangHagerState(C=c_next, Q=q_next, k=state.k + 1)


def _cap(sigma: float, theta: float, k: int) -> float:
    # (k+1)**theta overflows a double for large theta; the cap then rounds to TINY
    try:
        cap = sigma / (k + 1) ** theta
    except OverflowError:
        cap = 0.0
    return max(cap, TINY)


def _decayed(sigma: float, theta: float, exponent_arg: float, k: int) -> float:
    # sigma * exp(-max(theta, arg) * ln(k+1)), capped by sigma / (k+1)**theta
    if k == 0:
        return sigma
    cap = _cap(sigma, theta, k)
    if not exponent_arg > theta:
        return cap
    t = exponent_arg * math.log(k + 1)
    if t > EXP_UNDERFLOW:
        return TINY
    return min(max(sigma * math.exp(-t), TINY), cap)


def nu_metropolis(sigma: float, theta: float, f_plus: float, f_k: float, k: int) -> float:
    """Metropolis-type term driven by the raw increase f(x+) - f(x_k)."""
    return _decayed(sigma, theta, f_plus - f_k, k)


def nu_modified_metropolis(sigma: float, theta: float, f_lk: float, f_plus: float,
                           armijo_slope: float, k: int) -> float:
    """
    Metropolis-type term driven by the dimensionless ratio

        (f_lk - f(x+)) / (rho * step * <g_k, d_k>)

    Raises:
        DegenerateSlope: if armijo_slope is not strictly negative
    """
    if not armijo_slope < 0:
        raise DegenerateSlope(f"Armijo slope must be negative, got {armijo_slope!r}")
    ratio = (f_lk - f_plus) / armijo_slope
    return _decayed(sigma, theta, ratio, k)


def nu_upper_bound(sigma: float, theta: float, k: int) -> float:
    """
    sigma / (k+1)**theta, the ceiling of both Metropolis-type terms.

    Never below TINY, so a positive term always fits under it.
    """
    if k == 0:
        return sigma
    return _cap(sigma, theta, k)
