"""
Price's transistor modelling problem (n = 9).

A nonlinear least-squares fit of a bipolar transistor model to four
measurement sets; source: Ali, Khompatraporn and Zabinsky (J. Global
Optim. 31, 2005), after W. L. Price (1983).

    f(x) = gamma^2 + sum_k (alpha_k^2 + beta_k^2)

    alpha_k = (1 - x1 x2) x3 [exp(x5 (g1k - 1e-3 g3k x7 - 1e-3 g5k x8)) - 1] - g5k + g4k x2
    beta_k  = (1 - x1 x2) x4 [exp(x6 (g1k - g2k - 1e-3 g3k x7 + 1e-3 g4k x9)) - 1] - g5k x1 + g4k
    gamma   = x1 x3 - x2 x4
"""

from typing import Dict

import numpy as np

from .base_function import TestFunction

# rows g1..g5, columns k = 1..4
MEASUREMENTS = np.array([
    [0.485, 0.752, 0.869, 0.982],
    [0.369, 1.254, 0.703, 1.455],
    [5.2095, 10.0677, 22.9274, 20.2153],
    [23.3037, 101.779, 111.4613, 191.267],
    [28.5132, 111.8467, 134.3884, 211.4823],
])

SCALE = 1e-3


class PriceTransistor(TestFunction):
    key = "price_transistor"
    display_name = "Price's Transistor Modelling"
    default_dim = 9
    aliases = ("ptm", "prices_transistor_modelling", "price_transistor_modelling")
    known_best = 0.0

    def bounds(self):
        return self._box(-10.0, 10.0)

    def residuals(self, x: np.ndarray) -> Dict[str, np.ndarray]:
        """Intermediate quantities of the model, exposed for testing."""
        x1, x2, x3, x4, x5, x6, x7, x8, x9 = x
        g1, g2, g3, g4, g5 = MEASUREMENTS
        coupling = 1.0 - x1 * x2
        rate_a = g1 - SCALE * g3 * x7 - SCALE * g5 * x8
        rate_b = g1 - g2 - SCALE * g3 * x7 + SCALE * g4 * x9
        exp_a = np.exp(x5 * rate_a)
        exp_b = np.exp(x6 * rate_b)
        alpha = coupling * x3 * (exp_a - 1.0) - g5 + g4 * x2
        beta = coupling * x4 * (exp_b - 1.0) - g5 * x1 + g4
        gamma = x1 * x3 - x2 * x4
        return {"coupling": coupling, "rate_a": rate_a, "rate_b": rate_b,
                "exp_a": exp_a, "exp_b": exp_b, "alpha": alpha, "beta": beta,
                "gamma": np.asarray(gamma)}

    def value(self, x):
        r = self.residuals(x)
        return float(r["gamma"] ** 2 + np.sum(r["alpha"] ** 2 + r["beta"] ** 2))

    def gradient(self, x):
        x1, x2, x3, x4, x5, x6, x7, x8, x9 = x
        g1, g2, g3, g4, g5 = MEASUREMENTS
        r = self.residuals(x)
        coupling, exp_a, exp_b = r["coupling"], r["exp_a"], r["exp_b"]
        alpha, beta, gamma = r["alpha"], r["beta"], float(r["gamma"])

        # partial derivatives of alpha_k and beta_k, one row per variable
        d_alpha = np.zeros((9, 4))
        d_alpha[0] = -x2 * x3 * (exp_a - 1.0)
        d_alpha[1] = -x1 * x3 * (exp_a - 1.0) + g4
        d_alpha[2] = coupling * (exp_a - 1.0)
        d_alpha[4] = coupling * x3 * exp_a * r["rate_a"]
        d_alpha[6] = coupling * x3 * exp_a * x5 * (-SCALE * g3)
        d_alpha[7] = coupling * x3 * exp_a * x5 * (-SCALE * g5)

        d_beta = np.zeros((9, 4))
        d_beta[0] = -x2 * x4 * (exp_b - 1.0) - g5
        d_beta[1] = -x1 * x4 * (exp_b - 1.0)
        d_beta[3] = coupling * (exp_b - 1.0)
        d_beta[5] = coupling * x4 * exp_b * r["rate_b"]
        d_beta[6] = coupling * x4 * exp_b * x6 * (-SCALE * g3)
        d_beta[8] = coupling * x4 * exp_b * x6 * (SCALE * g4)

        d_gamma = np.array([x3, -x4, x1, -x2, 0.0, 0.0, 0.0, 0.0, 0.0])
        return 2.0 * (gamma * d_gamma + d_alpha @ alpha + d_beta @ beta)

    def approximate_minimizer(self) -> np.ndarray:
        return np.array([0.9, 0.45, 1.0, 2.0, 8.0, 8.0, 5.0, 1.0, 2.0])
