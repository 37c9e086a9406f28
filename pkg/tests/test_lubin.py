import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftcert.errors import NegativeMassError
from shiftcert.lubin import (
    PAIR_THRESHOLD,
    T2_THRESHOLD,
    XI_B_MASS_CAP,
    LubinFamily,
    family_report,
    is_pair_subnormal,
    is_t1_subnormal,
    is_t2_subnormal,
    moment2d,
    mu_m,
    mu_m_cap_n,
    t2_column_bound,
    threshold_pair,
    threshold_t1,
    threshold_t2,
    weight_a,
    weight_a_closed,
    weight_b,
    weight_b_closed,
    weight_b_closed_shifted,
    weight_c,
    weight_c_closed,
    xi_a,
    xi_a_level1,
    xi_b,
    xi_b_level1,
    xi_c,
)
from shiftcert.measures import AtomicMeasure1D, moment1, restrict_density
from shiftcert.shift2d import commutativity_check

xs = st.fractions(min_value=F(1, 64), max_value=F(8, 15), max_denominator=64)


class TestMeasures:
    def test_xi_a_golden(self):
        assert xi_a() == AtomicMeasure1D(
            [(F(0), F(3, 4)), (F(1, 4), F(2, 11)), (F(1, 2), F(1, 22)), (F(1), F(1, 44))]
        )
        assert xi_a().is_probability()

    def test_xi_c_golden(self):
        assert xi_c() == AtomicMeasure1D([(F(1, 4), F(1, 2)), (F(1, 2), F(1, 2))])

    def test_xi_b_at_one_fifth(self):
        mu = xi_b(F(1, 5))
        assert mu.mass_at(F(0)) == F(5, 8)
        assert mu.mass_at(F(1, 4)) == F(1, 5)
        assert mu.mass_at(F(1, 2)) == F(1, 20)
        assert mu.mass_at(F(1)) == F(1, 8)
        assert mu.is_probability()

    def test_xi_b_exists_up_to_the_mass_cap(self):
        top = xi_b(XI_B_MASS_CAP)
        assert top.mass_at(F(0)) == 0
        assert top.is_probability()
        with pytest.raises(NegativeMassError):
            xi_b(XI_B_MASS_CAP + F(1, 10**6))
        with pytest.raises(ValueError):
            xi_b(F(0))

    def test_level_one_restrictions(self):
        assert xi_a_level1() == restrict_density(xi_a(), 1)
        assert xi_b_level1() == restrict_density(xi_b(F(1, 5)), 1)

    def test_xi_b_level_one_is_parameter_free(self):
        for x in (F(1, 7), F(1, 3), F(8, 15)):
            assert restrict_density(xi_b(x), 1) == xi_b_level1()

    def test_mu_measures_golden(self):
        assert mu_m_cap_n().is_probability()
        assert mu_m().is_probability()
        assert mu_m().mass_at(F(0), F(1)) == F(5, 8)


class TestWeights:
    def test_a_golden(self):
        assert [weight_a(n) for n in range(3)] == [F(1, 11), F(1, 2), F(11, 16)]

    def test_c_golden(self):
        assert [weight_c(n) for n in range(3)] == [F(3, 8), F(5, 12), F(9, 20)]

    def test_b_starts_at_x(self):
        for x in (F(1, 7), F(2, 11), F(1, 2)):
            assert weight_b(0, x) == x

    def test_b_is_parameter_free_past_the_start(self):
        for n in range(1, 6):
            assert weight_b(n, F(1, 7)) == weight_b(n, F(1, 2))

    def test_b_level_two_is_43_over_48(self):
        # derived from the xi_b moments; see the module docstring for the
        # inconsistent surd sometimes quoted for this slot (44/48)
        assert weight_b(2, F(1, 5)) == F(43, 48)
        assert weight_b(2, F(1, 5)) != F(44, 48)

    def test_closed_forms_match_measure_ratios(self):
        for n in range(1, 16):
            assert weight_a_closed(n) == weight_a(n)
            assert weight_b_closed(n) == weight_b(n, F(1, 5))
        for n in range(0, 15):
            assert weight_b_closed_shifted(n) == weight_b(n + 1, F(1, 5))
            assert weight_c_closed(n) == weight_c(n)

    def test_closed_form_domains(self):
        with pytest.raises(ValueError):
            weight_a_closed(0)
        with pytest.raises(ValueError):
            weight_b_closed(0)

    def test_weights_increase_to_their_limits(self):
        assert weight_a(40) < 1
        assert weight_c(40) < F(1, 2)
        for n in range(12):
            assert weight_a(n) < weight_a(n + 1)
            assert weight_c(n) < weight_c(n + 1)


class TestMomentTable:
    def test_row_zero_is_xi_a(self):
        for x in (F(1, 5), F(2, 11)):
            for k in range(9):
                assert moment2d(k, 0, x) == moment1(xi_a(), k)

    def test_column_zero_by_hand(self):
        x = F(1, 5)
        assert moment2d(0, 1, x) == x
        assert moment2d(0, 2, x) == 3 * x / 4
        assert moment2d(0, 3, x) == 43 * x / 64

    def test_interior_by_hand(self):
        x = F(1, 7)
        assert moment2d(1, 1, x) == x / 8
        assert moment2d(2, 3, x) == (x / 8) * (F(1, 2) * F(1, 4) ** 3 + F(1, 2) * F(1, 2) ** 3)

    def test_interior_depends_only_on_total_degree(self):
        x = F(1, 5)
        assert moment2d(2, 3, x) == moment2d(3, 2, x) == moment2d(4, 1, x)

    def test_validation(self):
        with pytest.raises(ValueError):
            moment2d(-1, 0, F(1, 5))


class TestFamilyDiagram:
    def test_figure_golden_weights(self):
        for x in (F(1, 5), F(2, 11), F(1, 7)):
            fam = LubinFamily(x)
            assert fam.alpha_sq(0, 0) == F(1, 11)
            assert fam.alpha_sq(1, 0) == F(1, 2)
            assert fam.alpha_sq(2, 0) == F(11, 16)
            assert fam.alpha_sq(0, 1) == F(1, 8)
            assert fam.alpha_sq(0, 2) == F(1, 16)
            assert fam.beta_sq(0, 0) == x
            assert fam.beta_sq(1, 0) == F(11, 8) * x
            assert fam.beta_sq(2, 0) == F(33, 32) * x
            assert fam.beta_sq(0, 1) == F(3, 4)
            assert fam.beta_sq(0, 2) == F(43, 48)

    def test_diagram_commutes_at_several_parameters(self):
        for x in (F(2, 11), F(1, 2), F(6, 5)):
            assert commutativity_check(LubinFamily(x).diagram(), (10, 10)).ok

    def test_component_shifts(self):
        fam = LubinFamily(F(1, 5))
        assert fam.row_shift().squared_weight(0) == F(1, 11)
        assert fam.column_shift().squared_weight(0) == F(1, 5)
        assert fam.column_shift().squared_weight(2) == F(43, 48)

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            LubinFamily(F(-1, 5))

    @given(x=xs, k1=st.integers(min_value=0, max_value=5), k2=st.integers(min_value=0, max_value=5))
    @settings(max_examples=60, deadline=None)
    def test_diagram_reproduces_the_table(self, x, k1, k2):
        fam = LubinFamily(x)
        assert fam.diagram().moment(k1, k2) == moment2d(k1, k2, x)


class TestThresholds:
    def test_t2_value_and_binding_column(self):
        assert threshold_t2() == F(8, 33)
        assert t2_column_bound(0) == F(8, 33)

    def test_t2_column_bounds_increase(self):
        for n in range(10):
            assert t2_column_bound(n) < t2_column_bound(n + 1)

    def test_pair_value(self):
        assert threshold_pair() == F(2, 11)

    def test_t1_unconditional(self):
        cert = threshold_t1()
        assert cert.ok
        assert F(cert.witness["constant_margin"]) == 5

    def test_module_constants_agree(self):
        assert T2_THRESHOLD == F(8, 33)
        assert PAIR_THRESHOLD == F(2, 11)
        assert XI_B_MASS_CAP == F(8, 15)


class TestVerdicts:
    def test_t2_flips_at_its_threshold(self):
        assert is_t2_subnormal(F(8, 33)).ok
        assert not is_t2_subnormal(F(8, 33) + F(1, 10**6)).ok

    def test_pair_flips_at_its_threshold(self):
        assert is_pair_subnormal(F(2, 11)).ok
        assert not is_pair_subnormal(F(2, 11) + F(1, 10**6)).ok

    def test_t1_passes_everywhere(self):
        for x in (F(1, 100), F(2, 11), F(10)):
            assert is_t1_subnormal(x).ok

    def test_gap_between_thresholds(self):
        # jointly subnormal fails strictly before T2 does
        x = F(1, 5)
        assert PAIR_THRESHOLD < x < T2_THRESHOLD
        assert is_t2_subnormal(x).ok
        assert not is_pair_subnormal(x).ok

    def test_pair_certificate_structure(self):
        cert = is_pair_subnormal(F(2, 11))
        assert cert.witness["deep_restriction"].ok
        assert cert.witness["extension_to_mu_m"].passed
        assert cert.witness["final_extension"].passed
        assert cert.witness["extension_to_mu_m"].new_measure == mu_m()

    def test_input_validation(self):
        with pytest.raises(ValueError):
            is_t2_subnormal(F(0))
        with pytest.raises(ValueError):
            is_pair_subnormal(F(-1, 5))


class TestFamilyReport:
    def test_report_at_the_witness_parameter(self):
        report = family_report(F(1, 5))
        assert report["verdicts"] == {
            "t1_subnormal": True,
            "t2_subnormal": True,
            "pair_subnormal": False,
        }
        assert report["thresholds"]["t2"] == "8/33"
        assert report["thresholds"]["pair"] == "2/11"

    def test_report_serializes(self):
        text = json.dumps(family_report(F(2, 11)), sort_keys=True)
        assert "certificates" in text
