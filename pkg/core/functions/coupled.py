"""
Benchmark functions whose coordinates interact through neighbours,
rotations or products.

Source: Ali, Khompatraporn and Zabinsky (J. Global Optim. 31, 2005).
"""

import numpy as np

from .base_function import TestFunction, products_excluding_each

PI = np.pi


class EpistaticMichalewicz(TestFunction):
    """Michalewicz function on coordinates rotated pairwise by theta = pi/6."""
    key = "epistatic_michalewicz"
    display_name = "Epistatic Michalewicz"
    default_dim = 10
    scalable = True
    aliases = ("em",)
    known_best = -9.660152

    steepness = 10
    angle = PI / 6.0

    def __init__(self, dim=None):
        super().__init__(dim)
        self._rotation = self._build_rotation()
        self._index = np.arange(1, self.dim + 1, dtype=float)

    def _build_rotation(self):
        n = self.dim
        c, s = np.cos(self.angle), np.sin(self.angle)
        rotation = np.zeros((n, n))
        for i in range(n - 1):
            # i is 0-based; odd 1-based indices use the first row pattern
            if i % 2 == 0:
                rotation[i, i], rotation[i, i + 1] = c, -s
            else:
                rotation[i, i], rotation[i, i + 1] = s, c
        rotation[n - 1, n - 1] = 1.0
        return rotation

    def bounds(self):
        return self._box(0.0, PI)

    def value(self, x):
        y = self._rotation @ x
        ridge = np.sin(self._index * y ** 2 / PI)
        return float(-np.sum(np.sin(y) * ridge ** (2 * self.steepness)))

    def gradient(self, x):
        y = self._rotation @ x
        m2 = 2 * self.steepness
        phase = self._index * y ** 2 / PI
        ridge = np.sin(phase)
        d_y = -(np.cos(y) * ridge ** m2
                + np.sin(y) * m2 * ridge ** (m2 - 1) * np.cos(phase) * 2.0 * self._index * y / PI)
        return self._rotation.T @ d_y


class LevyMontalvo1(TestFunction):
    key = "levy_montalvo_1"
    display_name = "Levy and Montalvo 1"
    default_dim = 3
    scalable = True
    aliases = ("lm1",)
    known_best = 0.0

    def bounds(self):
        return self._box(-10.0, 10.0)

    def value(self, x):
        y = 1.0 + (x + 1.0) / 4.0
        inner = np.sum((y[:-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(PI * y[1:]) ** 2))
        total = 10.0 * np.sin(PI * y[0]) ** 2 + inner + (y[-1] - 1.0) ** 2
        return float(PI / self.dim * total)

    def gradient(self, x):
        y = 1.0 + (x + 1.0) / 4.0
        d_y = np.zeros(self.dim)
        d_y[0] += 10.0 * PI * np.sin(2 * PI * y[0])
        d_y[:-1] += 2.0 * (y[:-1] - 1.0) * (1.0 + 10.0 * np.sin(PI * y[1:]) ** 2)
        d_y[1:] += (y[:-1] - 1.0) ** 2 * 10.0 * PI * np.sin(2 * PI * y[1:])
        d_y[-1] += 2.0 * (y[-1] - 1.0)
        return PI / self.dim * d_y / 4.0

    def minimizer(self):
        return np.full(self.dim, -1.0)


class LevyMontalvo2(TestFunction):
    key = "levy_montalvo_2"
    display_name = "Levy and Montalvo 2"
    default_dim = 10
    scalable = True
    aliases = ("lm2",)
    known_best = 0.0

    def bounds(self):
        return self._box(-5.0, 5.0)

    def value(self, x):
        inner = np.sum((x[:-1] - 1.0) ** 2 * (1.0 + np.sin(3 * PI * x[1:]) ** 2))
        tail = (x[-1] - 1.0) ** 2 * (1.0 + np.sin(2 * PI * x[-1]) ** 2)
        return float(0.1 * (np.sin(3 * PI * x[0]) ** 2 + inner + tail))

    def gradient(self, x):
        grad = np.zeros(self.dim)
        grad[0] += 3.0 * PI * np.sin(6 * PI * x[0])
        grad[:-1] += 2.0 * (x[:-1] - 1.0) * (1.0 + np.sin(3 * PI * x[1:]) ** 2)
        grad[1:] += (x[:-1] - 1.0) ** 2 * 3.0 * PI * np.sin(6 * PI * x[1:])
        grad[-1] += (2.0 * (x[-1] - 1.0) * (1.0 + np.sin(2 * PI * x[-1]) ** 2)
                     + (x[-1] - 1.0) ** 2 * 2.0 * PI * np.sin(4 * PI * x[-1]))
        return 0.1 * grad

    def minimizer(self):
        return np.ones(self.dim)


class Neumaier2(TestFunction):
    """Power-sum problem; defined for n = 4 with b = (8, 18, 44, 114)."""
    key = "neumaier_2"
    display_name = "Neumaier 2"
    default_dim = 4
    aliases = ("nf2",)
    known_best = 0.0

    targets = np.array([8.0, 18.0, 44.0, 114.0])

    def bounds(self):
        return self._box(0.0, float(self.dim))

    def _residuals(self, x):
        powers = np.arange(1, self.dim + 1)
        return self.targets - np.array([np.sum(x ** k) for k in powers]), powers

    def value(self, x):
        residuals, _ = self._residuals(x)
        return float(np.sum(residuals ** 2))

    def gradient(self, x):
        residuals, powers = self._residuals(x)
        # d S_k / d x_j = k x_j^(k-1)
        jacobian = powers[:, None] * x[None, :] ** (powers[:, None] - 1)
        return -2.0 * jacobian.T @ residuals

    def minimizer(self):
        return np.array([1.0, 2.0, 2.0, 3.0])


class Neumaier3(TestFunction):
    key = "neumaier_3"
    display_name = "Neumaier 3"
    default_dim = 10
    scalable = True
    aliases = ("nf3",)

    @property
    def known_best(self):
        n = self.dim
        return -n * (n + 4) * (n - 1) / 6.0

    def bounds(self):
        return self._box(-self.dim ** 2, self.dim ** 2)

    def value(self, x):
        return float(np.sum((x - 1.0) ** 2) - np.sum(x[1:] * x[:-1]))

    def gradient(self, x):
        grad = 2.0 * (x - 1.0)
        grad[1:] -= x[:-1]
        grad[:-1] -= x[1:]
        return grad

    def minimizer(self):
        i = np.arange(1, self.dim + 1, dtype=float)
        return i * (self.dim + 1 - i)


class Sinusoidal(TestFunction):
    """Product-of-sines problem with angles measured in degrees."""
    key = "sinusoidal"
    display_name = "Sinusoidal"
    default_dim = 10
    scalable = True
    aliases = ("sin",)
    known_best = -3.5

    amplitude = 2.5
    frequency = 5.0
    shift = 30.0

    def bounds(self):
        return self._box(0.0, 180.0)

    def _angles(self, x):
        return (x - self.shift) * PI / 180.0

    def value(self, x):
        u = self._angles(x)
        return float(-(self.amplitude * np.prod(np.sin(u))
                       + np.prod(np.sin(self.frequency * u))))

    def gradient(self, x):
        u = self._angles(x)
        first = self.amplitude * np.cos(u) * products_excluding_each(np.sin(u))
        second = (self.frequency * np.cos(self.frequency * u)
                  * products_excluding_each(np.sin(self.frequency * u)))
        return -(first + second) * PI / 180.0

    def minimizer(self):
        return np.full(self.dim, 90.0 + self.shift)
