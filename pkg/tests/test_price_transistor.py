"""
Tests for Price's transistor modelling problem against a direct transcription.
"""

import math

import numpy as np
import pytest

from core.functions.price_transistor import MEASUREMENTS, PriceTransistor
from core.verify import finite_difference_gradient

# Price (1983), as tabulated by Ali, Khompatraporn and Zabinsky (2005)
G = [
    [0.485, 0.752, 0.869, 0.982],
    [0.369, 1.254, 0.703, 1.455],
    [5.2095, 10.0677, 22.9274, 20.2153],
    [23.3037, 101.779, 111.4613, 191.267],
    [28.5132, 111.8467, 134.3884, 211.4823],
]


def reference_value(x):
    x1, x2, x3, x4, x5, x6, x7, x8, x9 = x
    total = (x1 * x3 - x2 * x4) ** 2
    for k in range(4):
        a = ((1 - x1 * x2) * x3
             * (math.exp(x5 * (G[0][k] - 1e-3 * G[2][k] * x7 - 1e-3 * G[4][k] * x8)) - 1)
             - G[4][k] + G[3][k] * x2)
        b = ((1 - x1 * x2) * x4
             * (math.exp(x6 * (G[0][k] - G[1][k] - 1e-3 * G[2][k] * x7 + 1e-3 * G[3][k] * x9)) - 1)
             - G[4][k] * x1 + G[3][k])
        total += a * a + b * b
    return total


@pytest.fixture
def ptm():
    return PriceTransistor()


def sample_points(count=25):
    rng = np.random.default_rng(11)
    return [rng.uniform(-10.0, 10.0, 9) for _ in range(count)]


def test_measurement_table_matches_the_published_data():
    assert MEASUREMENTS.shape == (5, 4)
    np.testing.assert_array_equal(MEASUREMENTS, np.array(G))


def test_fitted_parameters_reach_the_zero_minimum(ptm):
    assert ptm.value(ptm.approximate_minimizer()) < 1e-5


@pytest.mark.parametrize("x", sample_points(), ids=lambda x: f"{x[0]:.3f}")
def test_value_matches_direct_transcription(ptm, x):
    assert ptm.value(x) == pytest.approx(reference_value(x), rel=1e-12)


def test_intermediate_quantities(ptm):
    x = ptm.approximate_minimizer()
    r = ptm.residuals(x)
    assert r["coupling"] == pytest.approx(1.0 - 0.9 * 0.45)
    assert r["gamma"] == pytest.approx(0.9 * 1.0 - 0.45 * 2.0)
    g = np.array(G)
    np.testing.assert_allclose(r["rate_a"], g[0] - 1e-3 * g[2] * 5.0 - 1e-3 * g[4] * 1.0)
    np.testing.assert_allclose(r["exp_b"], np.exp(8.0 * (g[0] - g[1] - 5e-3 * g[2] + 2e-3 * g[3])))
    assert r["alpha"].shape == (4,) and r["beta"].shape == (4,)


def test_gradient_near_the_fitted_parameters(ptm):
    x = ptm.approximate_minimizer()
    fd = finite_difference_gradient(ptm.value, x)
    g = ptm.gradient(x)
    assert np.linalg.norm(fd - g) <= 1e-5 * max(1.0, np.linalg.norm(g))


def test_fitted_parameters_beat_random_points(ptm):
    best = ptm.value(ptm.approximate_minimizer())
    assert all(best < ptm.value(x) for x in sample_points())
