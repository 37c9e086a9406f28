import json
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftcert.agler import (
    K0_CAP,
    IntegralMoments,
    abc_coefficients,
    certified_epsilon,
    certified_x_max,
    certify_sum,
    integral_moment,
    p_n_bruteforce,
    p_n_closed,
    per_n_affine_bounds,
    per_n_exact_sup,
    positivity_over_all_k,
    tail_inequalities_hold,
    tail_stopping_index,
)
from shiftcert.lubin import PAIR_THRESHOLD, moment2d
from shiftcert.measures import moment1
from shiftcert.lubin import xi_a

xs = st.fractions(min_value=F(1, 32), max_value=F(2), max_denominator=64)


def quadrature_oracle(c: F, n: int) -> float:
    # (1/pi) int_0^pi (1 - 2c(1 - cos t))^n dt, plain trapezoid
    t = np.linspace(0.0, math.pi, 1 << 16)
    values = (1.0 - 2.0 * float(c) * (1.0 - np.cos(t))) ** n
    return float(np.trapezoid(values, t)) / math.pi


class TestIntegralMoment:
    def test_low_orders_by_hand(self):
        c = F(1, 16)
        assert integral_moment(c, 0) == 1
        assert integral_moment(c, 1) == 1 - 2 * c
        assert integral_moment(c, 2) == 1 - 4 * c + 6 * c**2
        assert integral_moment(c, 3) == 1 - 6 * c + 18 * c**2 - 20 * c**3

    def test_family_values(self):
        assert integral_moment(F(1, 16), 1) == F(7, 8)
        assert integral_moment(F(1, 8), 1) == F(3, 4)

    def test_against_quadrature(self):
        for c, n in [(F(1, 16), 7), (F(1, 8), 5), (F(1, 5), 4), (F(1, 16), 20)]:
            exact = float(integral_moment(c, n))
            approx = quadrature_oracle(c, n)
            assert abs(exact - approx) <= 1e-9 * max(1.0, abs(exact))

    def test_stays_in_unit_interval_and_decreases(self):
        for c in (F(1, 16), F(1, 8)):
            previous = F(1)
            for n in range(1, 30):
                value = integral_moment(c, n)
                assert 0 < value < previous
                previous = value

    def test_smaller_c_dominates(self):
        for n in range(1, 20):
            assert integral_moment(F(1, 16), n) > integral_moment(F(1, 8), n)

    def test_validation(self):
        with pytest.raises(ValueError):
            integral_moment(F(3, 2), 1)
        with pytest.raises(ValueError):
            integral_moment(F(1, 16), -1)

    def test_wrapper_class(self):
        m = IntegralMoments(F(1, 8))
        assert m.value(3) == integral_moment(F(1, 8), 3)


class TestDualRoutes:
    def test_exact_agreement_on_a_grid(self):
        for x in (F(1, 10), F(2, 11), F(1, 4)):
            for n in range(1, 7):
                for k in range(6):
                    assert p_n_closed(x, k, n) == p_n_bruteforce(x, k, n)

    @given(
        x=xs,
        n=st.integers(min_value=1, max_value=8),
        k=st.integers(min_value=0, max_value=12),
    )
    @settings(max_examples=80, deadline=None)
    def test_exact_agreement_property(self, x, n, k):
        assert p_n_closed(x, k, n) == p_n_bruteforce(x, k, n)

    def test_closed_form_coefficients(self):
        # P_n(k,0) gamma_k == A (1/4)^k + B (1/2)^k + C for k >= 1
        for x, n in [(F(1, 5), 1), (F(1, 2), 3), (F(6, 5), 4)]:
            a, b, c = abc_coefficients(x, n)
            for k in range(1, 8):
                gamma_k = moment1(xi_a(), k)
                assert p_n_closed(x, k, n) * gamma_k == a * F(1, 4) ** k + b * F(1, 2) ** k + c

    def test_coefficient_definitions(self):
        x, n = F(1, 5), 3
        a, b, c = abc_coefficients(x, n)
        assert a == (F(2, 11) - x) * F(15, 16) ** n + x * integral_moment(F(1, 16), n)
        assert b == (F(1, 22) - x / 4) * F(7, 8) ** n + (x / 4) * integral_moment(F(1, 8), n)
        assert c == F(1, 44) * F(3, 4) ** n


class TestPerNBounds:
    def test_affine_bounds_at_n1_by_hand(self):
        bounds = per_n_affine_bounds(1)
        assert bounds["a"] == F(30, 11)
        assert bounds["b"] == F(14, 11)
        assert bounds["k0"] == F(43, 11)

    def test_k0_bound_matches_the_first_moment(self):
        # P_1(0) = 1 - (gamma_(1,0) + gamma_(0,1))/4 = 1 - (1/11 + x)/4
        assert p_n_closed(F(43, 11), 0, 1) == 0
        assert p_n_closed(F(43, 11) + F(1, 100), 0, 1) < 0

    def test_exact_sup_at_n1(self):
        assert per_n_exact_sup(1) == F(28, 11)

    def test_sup_is_sharp_at_n1(self):
        sup = per_n_exact_sup(1)
        assert positivity_over_all_k(sup, 1).ok
        assert not positivity_over_all_k(sup + F(1, 10**6), 1).ok

    def test_all_finite_sups_clear_the_pair_threshold(self):
        n_star = tail_stopping_index().n_star
        for n in range(1, n_star + 1):
            sup = per_n_exact_sup(n)
            assert sup is None or sup > PAIR_THRESHOLD

    def test_validation(self):
        with pytest.raises(ValueError):
            per_n_exact_sup(0)


class TestPositivityDecision:
    def test_passes_below_the_bound(self):
        for n in range(1, 7):
            cert = positivity_over_all_k(F(1, 5), n)
            assert cert.ok
            assert cert.witness["mode"] in ("coefficientwise", "tail-dominated")

    def test_failure_witness_is_replayable(self):
        cert = positivity_over_all_k(F(3), 1)
        assert not cert.ok
        n, k = cert.witness["n"], cert.witness["k"]
        value = F(cert.witness["value"])
        assert value < 0
        assert value == p_n_bruteforce(F(3), k, n)

    def test_k0_failure_witness(self):
        cert = positivity_over_all_k(F(4), 1)
        assert not cert.ok
        assert cert.witness["k"] == 0
        assert F(cert.witness["value"]) == p_n_closed(F(4), 0, 1)

    @given(x=xs, n=st.integers(min_value=1, max_value=8))
    @settings(max_examples=60, deadline=None)
    def test_decision_matches_the_sup(self, x, n):
        sup = per_n_exact_sup(n)
        expected = sup is None or x <= sup
        assert positivity_over_all_k(x, n).ok == expected


class TestTail:
    def test_stopping_indices_are_exact(self):
        tail = tail_stopping_index()
        assert tail.n_sixteenth == 101
        assert tail.n_eighth == 48
        assert tail.n_star == 101
        # independent: first n with ratio^n >= 27, checked at the fence
        assert F(31, 30) ** 101 >= 27 > F(31, 30) ** 100
        assert F(15, 14) ** 48 >= 27 > F(15, 14) ** 47

    def test_inequalities_fail_early_and_hold_late(self):
        assert tail_inequalities_hold(1) == (False, False)
        for n in range(101, 131):
            assert tail_inequalities_hold(n) == (True, True)

    def test_tail_makes_coefficients_safe_for_large_x(self):
        # past the stopping index A_n and B_n are nonnegative for any x
        for n in (101, 120):
            for x in (F(1), F(100)):
                a, b, _ = abc_coefficients(x, n)
                assert a >= 0 and b >= 0


class TestCertifiedBound:
    def test_bound_brackets(self):
        x_max = certified_x_max()
        assert PAIR_THRESHOLD < x_max <= K0_CAP

    def test_bound_is_the_minimum_of_the_per_n_sups(self):
        n_star = tail_stopping_index().n_star
        sups = [per_n_exact_sup(n) for n in range(1, n_star + 1)]
        finite = [s for s in sups if s is not None]
        assert certified_x_max() == min(finite + [K0_CAP])

    def test_frozen_value(self):
        # regression pin of the machine-derived bound (~0.8251)
        assert certified_x_max() == F(482964062, 585323453)

    def test_epsilon_is_the_gap(self):
        assert certified_epsilon() == certified_x_max() - PAIR_THRESHOLD
        assert certified_epsilon() > 0


class TestCertifySum:
    def test_passes_at_the_counterexample_parameter(self):
        cert = certify_sum(F(1, 5))
        assert cert.verdict and bool(cert)
        assert cert.n_tail == 101
        assert len(cert.per_n) == 101
        assert all(record.ok for record in cert.per_n)
        assert cert.witness is None

    def test_passes_exactly_up_to_the_certified_bound(self):
        x_max = certified_x_max()
        assert certify_sum(x_max).verdict
        bad = certify_sum(x_max + F(1, 10**6))
        assert not bad.verdict
        value = F(bad.witness["value"])
        assert value < 0
        assert value == p_n_bruteforce(x_max + F(1, 10**6), bad.witness["k"], bad.witness["n"])

    def test_tail_flags_recorded(self):
        cert = certify_sum(F(1, 5))
        last = cert.per_n[-1]
        assert last.n == 101
        assert last.tail_sixteenth and last.tail_eighth
        assert not cert.per_n[0].tail_sixteenth

    def test_serialization(self):
        cert = certify_sum(F(2, 11))
        data = json.loads(cert.to_json())
        assert data["verdict"] == "pass"
        assert data["certified_x_max"] == str(certified_x_max())
        assert len(data["per_n"]) == 101

    def test_validation(self):
        with pytest.raises(ValueError):
            certify_sum(F(0))


class TestSumMomentsAreConsistent:
    def test_rescaled_sum_moment_identity(self):
        # gamma_1 of the rescaled sum at x: (gamma_(1,0) + gamma_(0,1))/4
        for x in (F(1, 5), F(1, 2)):
            lhs = 1 - p_n_closed(x, 0, 1)
            assert lhs == (moment2d(1, 0, x) + moment2d(0, 1, x)) / 4
