"""
Tests for evaluation accounting.
"""

import math

import numpy as np
import pytest

from core.errors import BudgetExhausted, InvalidParameter, NonFiniteValue
from core.objective import EvalCounter, Objective, as_point, counted_gradient, counted_value


def test_as_point_checks_dimension():
    assert as_point([1, 2]).dtype == float
    with pytest.raises(InvalidParameter):
        as_point([1, 2, 3], dim=2)


def test_objective_rejects_inverted_box():
    with pytest.raises(InvalidParameter):
        Objective("bad", 1, [1.0], [0.0], lambda x: 0.0, lambda x: x)


def test_objective_allows_degenerate_box():
    obj = Objective("point", 2, [1.0, 1.0], [1.0, 1.0], lambda x: 0.0, lambda x: x)
    assert np.array_equal(obj.lower, obj.upper)


def test_budget_is_enforced(quadratic):
    counter = EvalCounter(f_budget=3, dim=2)
    x = np.array([1.0, 0.0])
    for _ in range(3):
        counted_value(quadratic, counter, x)
    with pytest.raises(BudgetExhausted):
        counted_value(quadratic, counter, x)
    assert counter.f_evals == 3
    assert counter.remaining() == 0


def test_gradients_are_free_by_default(quadratic):
    counter = EvalCounter(f_budget=1, dim=2)
    x = np.array([1.0, 0.0])
    counted_value(quadratic, counter, x)
    for _ in range(5):
        counted_gradient(quadratic, counter, x)
    assert counter.consumed == 1
    assert counter.g_evals == 5


def test_charged_gradients_cost_n_evaluations(quadratic):
    counter = EvalCounter(f_budget=5, charge_gradients=True, dim=2)
    x = np.array([1.0, 0.0])
    counted_value(quadratic, counter, x)
    counted_gradient(quadratic, counter, x)
    assert counter.consumed == 3
    counted_gradient(quadratic, counter, x)
    assert counter.consumed == 5
    with pytest.raises(BudgetExhausted):
        counted_value(quadratic, counter, x)


def test_non_finite_value_is_counted_but_not_tracked():
    obj = Objective("nan", 1, [0.0], [1.0], lambda x: math.nan, lambda x: x)
    counter = EvalCounter()
    with pytest.raises(NonFiniteValue):
        counted_value(obj, counter, np.array([0.5]))
    assert counter.f_evals == 1
    assert counter.best_f == math.inf
    assert counter.breakpoints == []


def test_breakpoints_record_improvements_only(quadratic):
    counter = EvalCounter(dim=2)
    for x in ([1.0, 0.0], [2.0, 0.0], [0.5, 0.0], [0.5, 0.0], [0.0, 0.0]):
        counted_value(quadratic, counter, np.array(x))
    assert counter.breakpoints == [(1, 0.5), (3, 0.125), (5, 0.0)]
    assert counter.best_f == 0.0
    assert np.array_equal(counter.best_x, [0.0, 0.0])


def test_non_finite_gradient_raises():
    obj = Objective("inf", 1, [0.0], [1.0], lambda x: 0.0, lambda x: np.array([math.inf]))
    with pytest.raises(NonFiniteValue):
        counted_gradient(obj, EvalCounter(), np.array([0.5]))
