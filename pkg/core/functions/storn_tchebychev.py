"""
Storn's Tchebychev problem (n = 9).

Find the coefficients of a degree-8 polynomial that stays inside [-1, 1]
on [-1, 1] and exceeds d at y = +-1.2; the Chebyshev polynomial T8 solves it.
Source: Ali, Khompatraporn and Zabinsky (J. Global Optim. 31, 2005), after
Storn and Price (1997). x1 is the leading coefficient.
"""

from typing import Dict

import numpy as np

from .base_function import TestFunction

# settings for n = 9
LEVEL = 72.661
SAMPLES = 60


class StornTchebychev(TestFunction):
    key = "storn_tchebychev"
    display_name = "Storn's Tchebychev"
    default_dim = 9
    aliases = ("st", "storns_tchebychev")
    known_best = 0.0

    def __init__(self, dim=None):
        super().__init__(dim)
        # column i holds y**(n - i) for 1-based i
        grid = 2.0 * np.arange(SAMPLES + 1) / SAMPLES - 1.0
        self._grid_powers = np.vander(grid, self.dim)
        self._plus = np.vander(np.array([1.2]), self.dim)[0]
        self._minus = np.vander(np.array([-1.2]), self.dim)[0]

    def bounds(self):
        return self._box(-128.0, 128.0)

    def penalties(self, x: np.ndarray) -> Dict[str, np.ndarray]:
        """The three penalty groups and the polynomial values behind them."""
        u = float(self._plus @ x)
        v = float(self._minus @ x)
        w = self._grid_powers @ x
        p1 = (u - LEVEL) ** 2 if u < LEVEL else 0.0
        p2 = (v - LEVEL) ** 2 if v < LEVEL else 0.0
        p3 = np.where(w > 1.0, (w - 1.0) ** 2, np.where(w < -1.0, (w + 1.0) ** 2, 0.0))
        return {"u": u, "v": v, "w": w, "p1": p1, "p2": p2, "p3": p3}

    def value(self, x):
        p = self.penalties(x)
        return float(p["p1"] + p["p2"] + np.sum(p["p3"]))

    def gradient(self, x):
        p = self.penalties(x)
        grad = np.zeros(self.dim)
        if p["u"] < LEVEL:
            grad += 2.0 * (p["u"] - LEVEL) * self._plus
        if p["v"] < LEVEL:
            grad += 2.0 * (p["v"] - LEVEL) * self._minus
        w = p["w"]
        d_w = np.where(w > 1.0, 2.0 * (w - 1.0), np.where(w < -1.0, 2.0 * (w + 1.0), 0.0))
        return grad + self._grid_powers.T @ d_w

    def minimizer(self):
        return np.array([128.0, 0.0, -256.0, 0.0, 160.0, 0.0, -32.0, 0.0, 1.0])
