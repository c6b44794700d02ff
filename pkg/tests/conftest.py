"""
Shared fixtures for the nmls test suite.
"""

import os
import sys

import numpy as np
import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from core.objective import Objective  # noqa: E402
from core.params import LineSearchParams, SolveConfig  # noqa: E402
from core.relaxation import RelaxationKind  # noqa: E402
from utils.event_bus import event_bus  # noqa: E402


def make_quadratic(weights=(1.0, 1.0), name="quadratic"):
    w = np.asarray(weights, dtype=float)
    dim = w.shape[0]
    return Objective(name=name, dim=dim, lower=-np.ones(dim), upper=np.ones(dim),
                     value_map=lambda x: 0.5 * float(np.sum(w * x * x)),
                     gradient_map=lambda x: w * x)


@pytest.fixture
def quadratic():
    """f(x) = 1/2 |x|^2 in two dimensions."""
    return make_quadratic()


@pytest.fixture
def ill_conditioned():
    """f(x) = 1/2 (x1^2 + 100 x2^2)."""
    return make_quadratic((1.0, 100.0), name="ill_conditioned")


@pytest.fixture
def config_for():
    """Factory for solve configurations with the default parameters."""
    def build(kind=RelaxationKind.MODIFIED_METROPOLIS, f_budget=None, direction="bfgs", **params):
        return SolveConfig(kind=kind, params=LineSearchParams(**params), f_budget=f_budget,
                           direction=direction)
    return build


@pytest.fixture(autouse=True)
def clean_event_bus():
    """Every test starts and ends with an empty event bus."""
    event_bus.clear()
    yield
    event_bus.clear()
