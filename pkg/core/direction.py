"""
Search directions from a safeguarded BFGS inverse-Hessian approximation.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from core.errors import InvalidParameter, ZeroGradient

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InverseHessian:
    """Dense symmetric approximation H_k of the inverse Hessian."""
    H: np.ndarray

    @classmethod
    def identity(cls, dim: int) -> "InverseHessian":
        return cls(np.eye(dim))

    @property
    def dim(self) -> int:
        return self.H.shape[0]


def bfgs_update(hess: InverseHessian, s: np.ndarray, y: np.ndarray,
                curvature_tol: float = 1e-12) -> InverseHessian:
    """
    Apply the BFGS inverse update when the curvature condition holds.

        H+ = (I - s y^T / s^T y) H (I - y s^T / s^T y) + s s^T / s^T y

    Args:
        hess: Current approximation
        s: Step x_{k+1} - x_k
        y: Gradient change g_{k+1} - g_k
        curvature_tol: The update fires only if s^T y > curvature_tol * |s| |y|;
            0 gives the plain s^T y > 0 test

    Returns:
        The updated approximation, or ``hess`` itself when skipped
    """
    s = np.asarray(s, dtype=float)
    y = np.asarray(y, dtype=float)
    if s.shape != (hess.dim,) or y.shape != (hess.dim,):
        raise InvalidParameter("s and y must match the Hessian dimension")
    sy = float(s @ y)
    if not sy > curvature_tol * np.linalg.norm(s) * np.linalg.norm(y):
        return hess
    rho = 1.0 / sy
    left = np.eye(hess.dim) - rho * np.outer(s, y)
    updated = left @ hess.H @ left.T + rho * np.outer(s, s)
    return InverseHessian(0.5 * (updated + updated.T))


def descent_direction(hess: InverseHessian, g: np.ndarray,
                      descent_tol: float = 1e-12) -> Tuple[np.ndarray, bool]:
    """
    Return (d, fell_back) with <g, d> < 0.

    d = -H g is used when <g, d> <= -descent_tol * |g| |d|; otherwise the
    steepest-descent direction -g is returned and ``fell_back`` is True.

    Raises:
        ZeroGradient: if g is the zero vector
    """
    g_norm = float(np.linalg.norm(g))
    if g_norm == 0.0:
        raise ZeroGradient("gradient is zero; no descent direction exists")
    d = -(hess.H @ g)
    slope = float(g @ d)
    d_norm = float(np.linalg.norm(d))
    if np.all(np.isfinite(d)) and slope < 0 and slope <= -descent_tol * g_norm * d_norm:
        return d, False
    logger.debug(f"Quasi-Newton direction rejected (slope={slope:.3e}); using -g")
    return -np.asarray(g, dtype=float), True


def compute_direction(hess: InverseHessian, g: np.ndarray,
                      descent_tol: float = 1e-12) -> np.ndarray:
    """d = -H g, or -g when -H g is not a strict descent direction."""
    return descent_direction(hess, g, descent_tol)[0]
