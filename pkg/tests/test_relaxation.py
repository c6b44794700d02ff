"""
Tests for the relaxation terms and their state.
"""

import math

import pytest

from core.errors import DegenerateSlope, InvalidParameter
from core.relaxation import (TINY, HistoryWindow, RelaxationKind, ZhangHagerState, f_lk,
                             nu_gll, nu_metropolis, nu_modified_metropolis, nu_monotone,
                             nu_upper_bound, nu_zhang_hager, zh_update)


class TestRelaxationKind:
    def test_parse_accepts_labels_and_names(self):
        assert RelaxationKind.parse("nm4") is RelaxationKind.MODIFIED_METROPOLIS
        assert RelaxationKind.parse("M") is RelaxationKind.MONOTONE
        assert RelaxationKind.parse("zhang_hager") is RelaxationKind.ZHANG_HAGER

    def test_parse_rejects_unknown(self):
        with pytest.raises(InvalidParameter):
            RelaxationKind.parse("nm5")

    def test_ordered(self):
        kinds = [RelaxationKind.METROPOLIS, RelaxationKind.MONOTONE, RelaxationKind.METROPOLIS]
        assert RelaxationKind.ordered(kinds) == [RelaxationKind.MONOTONE,
                                                 RelaxationKind.METROPOLIS]

    def test_per_trial(self):
        assert RelaxationKind.METROPOLIS.per_trial
        assert RelaxationKind.MODIFIED_METROPOLIS.per_trial
        assert not RelaxationKind.GLL.per_trial


class TestHistoryWindow:
    def test_keeps_last_m_plus_one_values(self):
        window = HistoryWindow.of([5.0, 4.0, 6.0, 3.0, 2.0], capacity_M=2)
        assert window.values == [6.0, 3.0, 2.0]
        assert window.m_k == 2
        assert f_lk(window) == 6.0

    def test_grows_until_capacity(self):
        window = HistoryWindow(capacity_M=10)
        window.push(1.0)
        assert window.m_k == 0
        window.push(0.5)
        assert window.m_k == 1

    def test_rejects_zero_capacity(self):
        with pytest.raises(InvalidParameter):
            HistoryWindow(0)

    def test_empty_window_has_no_maximum(self):
        with pytest.raises(InvalidParameter):
            f_lk(HistoryWindow(3))


def test_fixed_terms():
    window = HistoryWindow.of([3.0, 1.0], capacity_M=10)
    assert nu_monotone() == 0.0
    assert nu_gll(window, 1.0) == 2.0
    assert nu_zhang_hager(ZhangHagerState(C=2.5), 1.0) == 1.5


def test_zh_update():
    state = zh_update(ZhangHagerState.start(1.0), 0.0, eta_c=0.85)
    assert state.k == 1
    assert state.Q == pytest.approx(1.85)
    assert state.C == pytest.approx(0.85 / 1.85)
    # C stays between the newest value and the previous average
    later = zh_update(state, -1.0)
    assert -1.0 <= later.C <= state.C


class TestMetropolisTerms:
    def test_first_iteration_returns_sigma(self):
        assert nu_metropolis(3.0, 2.0, 100.0, 0.0, 0) == 3.0
        assert nu_modified_metropolis(3.0, 2.0, 0.0, 100.0, -1.0, 0) == 3.0

    def test_improvement_hits_the_cap_exactly(self):
        sigma, theta, k = 1.7, 2.0, 4
        nu = nu_modified_metropolis(sigma, theta, f_lk=1.0, f_plus=0.5, armijo_slope=-0.1, k=k)
        assert nu == sigma / (k + 1) ** theta
        assert nu == nu_upper_bound(sigma, theta, k)

    def test_decays_with_the_ratio(self):
        # ratio 3 > theta = 2, so nu = exp(-3 ln 2) at k = 1
        nu = nu_modified_metropolis(1.0, 2.0, f_lk=0.0, f_plus=0.3, armijo_slope=-0.1, k=1)
        assert nu == pytest.approx(0.125)
        assert nu < nu_upper_bound(1.0, 2.0, 1)

    def test_metropolis_uses_raw_increase(self):
        nu = nu_metropolis(1.0, 0.5, f_plus=2.0, f_k=0.0, k=3)
        assert nu == pytest.approx(math.exp(-2.0 * math.log(4)))

    @pytest.mark.parametrize("k", [1, 10, 1000, 10 ** 9])
    def test_stays_positive_for_huge_ratios(self, k):
        nu = nu_modified_metropolis(1.0, 2.0, f_lk=0.0, f_plus=1e6, armijo_slope=-1e-6, k=k)
        assert 0.0 < nu <= max(nu_upper_bound(1.0, 2.0, k), TINY)

    @pytest.mark.parametrize("slope", [0.0, 1e-3])
    def test_rejects_nonnegative_slope(self, slope):
        with pytest.raises(DegenerateSlope):
            nu_modified_metropolis(1.0, 2.0, 0.0, 0.0, slope, 3)

    @pytest.mark.parametrize("k", [400, 10 ** 6])
    def test_large_theta_does_not_overflow(self, k):
        assert nu_upper_bound(1.0, 120.0, k) == TINY
        assert nu_modified_metropolis(1.0, 120.0, f_lk=1.0, f_plus=0.5, armijo_slope=-0.1,
                                      k=k) == TINY
        assert nu_metropolis(1.0, 120.0, f_plus=0.5, f_k=1.0, k=k) == TINY
        assert nu_metropolis(1.0, 120.0, f_plus=200.0, f_k=0.0, k=k) == TINY

    def test_large_theta_below_overflow_keeps_the_power(self):
        assert nu_upper_bound(1.0, 120.0, 1) == 2.0 ** -120


class TestModifiedMetropolisScaling:
    """Scaling f and sigma together scales nu by the same factor."""

    cases = [
        dict(sigma=1.7, theta=2.0, f_lk=1.0, f_plus=0.5, slope=-0.1, k=4),
        dict(sigma=1.0, theta=2.0, f_lk=0.0, f_plus=0.3, slope=-0.1, k=1),
        dict(sigma=2.5, theta=0.5, f_lk=3.0, f_plus=3.2, slope=-0.05, k=7),
    ]

    @staticmethod
    def nu(case, c=1.0):
        return nu_modified_metropolis(c * case["sigma"], case["theta"], c * case["f_lk"],
                                      c * case["f_plus"], c * case["slope"], case["k"])

    @pytest.mark.parametrize("case", cases)
    @pytest.mark.parametrize("c", [0.25, 8.0, 1024.0])
    def test_powers_of_two_scale_exactly(self, case, c):
        assert self.nu(case, c) == c * self.nu(case)

    @pytest.mark.parametrize("case", cases)
    def test_arbitrary_factor(self, case):
        assert self.nu(case, 3.7) == pytest.approx(3.7 * self.nu(case), rel=1e-12)

    def test_metropolis_is_not_scale_free(self):
        # the raw increase changes with the units of f
        base = nu_metropolis(1.0, 2.0, f_plus=3.0, f_k=0.0, k=1)
        scaled = nu_metropolis(8.0, 2.0, f_plus=24.0, f_k=0.0, k=1)
        assert scaled != pytest.approx(8.0 * base)
