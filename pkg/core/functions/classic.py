"""
Classic multimodal benchmark functions.

Definitions and boxes follow the continuous global optimization collection
of Ali, Khompatraporn and Zabinsky (J. Global Optim. 31, 2005).
"""

import numpy as np

from .base_function import TestFunction, products_excluding_each

PI = np.pi


class Bohachevsky1(TestFunction):
    key = "bohachevsky_1"
    display_name = "Bohachevsky 1"
    default_dim = 2
    aliases = ("bf1",)
    known_best = 0.0

    def bounds(self):
        return self._box(-50.0, 50.0)

    def value(self, x):
        x1, x2 = x
        return (x1 ** 2 + 2.0 * x2 ** 2 - 0.3 * np.cos(3 * PI * x1)
                - 0.4 * np.cos(4 * PI * x2) + 0.7)

    def gradient(self, x):
        x1, x2 = x
        return np.array([2.0 * x1 + 0.9 * PI * np.sin(3 * PI * x1),
                         4.0 * x2 + 1.6 * PI * np.sin(4 * PI * x2)])

    def minimizer(self):
        return np.zeros(2)


class Bohachevsky2(TestFunction):
    key = "bohachevsky_2"
    display_name = "Bohachevsky 2"
    default_dim = 2
    aliases = ("bf2",)
    known_best = 0.0

    def bounds(self):
        return self._box(-50.0, 50.0)

    def value(self, x):
        x1, x2 = x
        return x1 ** 2 + 2.0 * x2 ** 2 - 0.3 * np.cos(3 * PI * x1) * np.cos(4 * PI * x2) + 0.3

    def gradient(self, x):
        x1, x2 = x
        return np.array([
            2.0 * x1 + 0.9 * PI * np.sin(3 * PI * x1) * np.cos(4 * PI * x2),
            4.0 * x2 + 1.2 * PI * np.cos(3 * PI * x1) * np.sin(4 * PI * x2),
        ])

    def minimizer(self):
        return np.zeros(2)


class CosineMixture(TestFunction):
    key = "cosine_mixture"
    display_name = "Cosine Mixture"
    default_dim = 4
    scalable = True
    aliases = ("cm",)
    known_best = -0.4

    def bounds(self):
        return self._box(-1.0, 1.0)

    def value(self, x):
        return float(np.sum(x ** 2) - 0.1 * np.sum(np.cos(5 * PI * x)))

    def gradient(self, x):
        return 2.0 * x + 0.5 * PI * np.sin(5 * PI * x)

    def minimizer(self):
        return np.zeros(self.dim)


class Easom(TestFunction):
    key = "easom"
    display_name = "Easom"
    default_dim = 2
    aliases = ("easom_problem",)
    known_best = -1.0

    def bounds(self):
        return self._box(-100.0, 100.0)

    def value(self, x):
        x1, x2 = x
        return -np.cos(x1) * np.cos(x2) * np.exp(-(x1 - PI) ** 2 - (x2 - PI) ** 2)

    def gradient(self, x):
        x1, x2 = x
        envelope = np.exp(-(x1 - PI) ** 2 - (x2 - PI) ** 2)
        return np.array([
            envelope * np.cos(x2) * (np.sin(x1) + 2.0 * (x1 - PI) * np.cos(x1)),
            envelope * np.cos(x1) * (np.sin(x2) + 2.0 * (x2 - PI) * np.cos(x2)),
        ])

    def minimizer(self):
        return np.array([PI, PI])


class Exponential(TestFunction):
    key = "exponential"
    display_name = "Exponential"
    default_dim = 10
    scalable = True
    aliases = ("exp",)
    known_best = -1.0

    def bounds(self):
        return self._box(-1.0, 1.0)

    def value(self, x):
        return float(-np.exp(-0.5 * np.sum(x ** 2)))

    def gradient(self, x):
        return np.exp(-0.5 * np.sum(x ** 2)) * x

    def minimizer(self):
        return np.zeros(self.dim)


class Griewank(TestFunction):
    key = "griewank"
    display_name = "Griewank"
    default_dim = 2
    scalable = True
    aliases = ("gw",)
    known_best = 0.0

    def bounds(self):
        return self._box(-600.0, 600.0)

    def _scaled(self, x):
        root = np.sqrt(np.arange(1, self.dim + 1, dtype=float))
        return x / root, root

    def value(self, x):
        u, _ = self._scaled(x)
        return float(1.0 + np.sum(x ** 2) / 4000.0 - np.prod(np.cos(u)))

    def gradient(self, x):
        u, root = self._scaled(x)
        others = products_excluding_each(np.cos(u))
        return x / 2000.0 + np.sin(u) / root * others

    def minimizer(self):
        return np.zeros(self.dim)


class Rastrigin(TestFunction):
    key = "rastrigin"
    display_name = "Rastrigin"
    default_dim = 10
    scalable = True
    aliases = ("rg",)
    known_best = 0.0

    def bounds(self):
        return self._box(-5.12, 5.12)

    def value(self, x):
        return float(10.0 * self.dim + np.sum(x ** 2 - 10.0 * np.cos(2 * PI * x)))

    def gradient(self, x):
        return 2.0 * x + 20.0 * PI * np.sin(2 * PI * x)

    def minimizer(self):
        return np.zeros(self.dim)


class Schaffer1(TestFunction):
    key = "schaffer_1"
    display_name = "Schaffer 1"
    default_dim = 2
    aliases = ("sf1",)
    known_best = 0.0

    def bounds(self):
        return self._box(-100.0, 100.0)

    def value(self, x):
        r = float(np.sum(x ** 2))
        return 0.5 + (np.sin(np.sqrt(r)) ** 2 - 0.5) / (1.0 + 0.001 * r) ** 2

    def gradient(self, x):
        r = float(np.sum(x ** 2))
        s = np.sqrt(r)
        denom = 1.0 + 0.001 * r
        # d sin^2(sqrt r) / dr = sin(2s) / (2s), smooth through r = 0
        d_num = np.sinc(2.0 * s / PI)
        d_f = d_num / denom ** 2 - 0.002 * (np.sin(s) ** 2 - 0.5) / denom ** 3
        return 2.0 * x * d_f


class Schaffer2(TestFunction):
    key = "schaffer_2"
    display_name = "Schaffer 2"
    default_dim = 2
    aliases = ("sf2",)
    known_best = 0.0

    def bounds(self):
        return self._box(-100.0, 100.0)

    def value(self, x):
        r = float(np.sum(x ** 2))
        return r ** 0.25 * (np.sin(50.0 * r ** 0.1) ** 2 + 1.0)

    def gradient(self, x):
        r = float(np.sum(x ** 2))
        if r == 0.0:
            # cusp at the origin; zero is a subgradient
            return np.zeros(2)
        wave = 50.0 * r ** 0.1
        d_f = 0.25 * r ** -0.75 * (np.sin(wave) ** 2 + 1.0) + 5.0 * r ** -0.65 * np.sin(2.0 * wave)
        return 2.0 * x * d_f


class Shubert(TestFunction):
    key = "shubert"
    display_name = "Shubert"
    default_dim = 2
    aliases = ("sbt",)
    known_best = -186.7309

    _j = np.arange(1, 6, dtype=float)

    def bounds(self):
        return self._box(-10.0, 10.0)

    def _sums(self, x):
        phase = np.outer(x, self._j + 1.0) + self._j
        sums = np.sum(self._j * np.cos(phase), axis=1)
        derivs = -np.sum(self._j * (self._j + 1.0) * np.sin(phase), axis=1)
        return sums, derivs

    def value(self, x):
        sums, _ = self._sums(x)
        return float(np.prod(sums))

    def gradient(self, x):
        sums, derivs = self._sums(x)
        return derivs * products_excluding_each(sums)
