"""
Tests for the BFGS inverse-Hessian approximation.
"""

import numpy as np
import pytest

from core.direction import InverseHessian, bfgs_update, compute_direction, descent_direction
from core.errors import InvalidParameter, ZeroGradient


def random_spd(rng, n, low=0.5, high=2.0):
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return q @ np.diag(rng.uniform(low, high, n)) @ q.T


def test_secant_equation_holds_after_update():
    rng = np.random.default_rng(2024)
    n = 5
    checked = 0
    hess = InverseHessian.identity(n)
    for _ in range(1000):
        s = rng.standard_normal(n)
        y = random_spd(rng, n) @ s
        if not s @ y > 1e-6:
            continue
        hess = InverseHessian(random_spd(rng, n))
        updated = bfgs_update(hess, s, y)
        assert np.linalg.norm(updated.H @ y - s) <= 1e-10 * (1.0 + np.linalg.norm(s))
        np.testing.assert_allclose(updated.H, updated.H.T, atol=1e-12)
        checked += 1
    assert checked > 900


def test_update_keeps_positive_definiteness():
    rng = np.random.default_rng(7)
    hess = InverseHessian.identity(4)
    for _ in range(50):
        s = rng.standard_normal(4)
        y = random_spd(rng, 4) @ s
        hess = bfgs_update(hess, s, y)
    assert np.all(np.linalg.eigvalsh(hess.H) > 0)


@pytest.mark.parametrize("y", [[-1.0, 0.0], [0.0, 1.0]])
def test_update_is_skipped_without_curvature(y):
    hess = InverseHessian.identity(2)
    assert bfgs_update(hess, np.array([1.0, 0.0]), np.array(y)) is hess


def test_update_checks_shapes():
    with pytest.raises(InvalidParameter):
        bfgs_update(InverseHessian.identity(2), np.ones(3), np.ones(3))


def test_quasi_newton_direction():
    hess = InverseHessian(np.diag([2.0, 0.5]))
    d, fell_back = descent_direction(hess, np.array([1.0, 1.0]))
    np.testing.assert_array_equal(d, [-2.0, -0.5])
    assert not fell_back


def test_falls_back_to_steepest_descent():
    hess = InverseHessian(-np.eye(2))
    g = np.array([1.0, -2.0])
    d, fell_back = descent_direction(hess, g)
    assert fell_back
    np.testing.assert_array_equal(d, -g)
    np.testing.assert_array_equal(compute_direction(hess, g), -g)


def test_zero_gradient_has_no_direction():
    with pytest.raises(ZeroGradient):
        descent_direction(InverseHessian.identity(2), np.zeros(2))
