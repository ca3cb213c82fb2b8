"""Tests for the 2x2 region-operator matrices and their spectra."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wignerbounds.kernels import eval_kernels
from wignerbounds.spectrum import (
    HermitianMatrix2,
    build_A,
    build_A2,
    eigen2,
    spectrum_double,
    spectrum_double_wedge,
    spectrum_single,
    spectrum_wedge,
)


class TestEigen2:
    @given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2),
           st.floats(-2, 2))
    @settings(max_examples=50, deadline=None)
    def test_solves_the_matrix(self, a11, re12, im12, a22):
        m = HermitianMatrix2(a11, complex(re12, im12), a22)
        hi, lo = eigen2(m)
        arr = m.as_array()
        assert hi.mu >= lo.mu
        for pair in (hi, lo):
            v = np.array([pair.alpha, pair.beta])
            assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
            residual = arr @ v - pair.mu * v
            assert np.linalg.norm(residual) < 1e-10

    def test_diagonal_matrix(self):
        hi, lo = eigen2(HermitianMatrix2(2.0, 0j, 1.0))
        assert (hi.mu, lo.mu) == (2.0, 1.0)
        assert (hi.alpha, lo.beta) == (1.0 + 0j, 1.0 + 0j)


class TestConsistency:
    @pytest.mark.parametrize("k", [0.0, 0.5, 1.0, 2.0, 5.0])
    def test_closed_form_vs_eigensolver(self, k):
        # 41 omega points x 5 k values, matching the two constructions.
        for omega in np.linspace(-2.0, 2.0, 41):
            kern = eval_kernels(float(omega), k)
            sp = spectrum_single(float(omega), k, kern)
            hi, lo = eigen2(build_A(float(omega), k, kern))
            assert sp.mu_plus == pytest.approx(hi.mu, abs=1e-12)
            assert sp.mu_minus == pytest.approx(lo.mu, abs=1e-12)
            sp2 = spectrum_double(float(omega), k, kern)
            hi2, lo2 = eigen2(build_A2(float(omega), k, kern))
            assert sp2.mu_plus == pytest.approx(hi2.mu, abs=1e-12)
            assert sp2.mu_minus == pytest.approx(lo2.mu, abs=1e-12)

    @pytest.mark.parametrize("k", [0.0, 1.0, 3.0])
    def test_trace_and_sign_identities(self, k):
        for omega in (-1.5, -0.3, 0.0, 0.7, 2.0):
            kern = eval_kernels(omega, k)
            sp = spectrum_single(omega, k, kern)
            # trace: mu_+ + mu_- = 1/2 + d; det <= 0 so mu_+ mu_- <= 0.
            assert sp.mu_plus + sp.mu_minus == pytest.approx(
                0.5 + kern.d, abs=1e-12
            )
            assert sp.mu_plus * sp.mu_minus <= 1e-15
            sp2 = spectrum_double(omega, k, kern)
            assert sp2.mu_plus + sp2.mu_minus == pytest.approx(
                1.0 + 2.0 * kern.d, abs=1e-12
            )


class TestWedgeForms:
    def test_value_at_origin(self):
        sp = spectrum_wedge(0.0)
        assert sp.mu_plus == pytest.approx((1.0 + math.sqrt(2.0)) / 4.0, abs=1e-12)
        assert sp.mu_minus == pytest.approx((1.0 - math.sqrt(2.0)) / 4.0, abs=1e-12)

    @given(st.floats(-4, 4))
    @settings(max_examples=30, deadline=None)
    def test_wedge_equals_single_k0(self, omega):
        sp = spectrum_wedge(omega)
        ref = spectrum_single(omega, 0.0)
        assert sp.mu_plus == pytest.approx(ref.mu_plus, abs=1e-10)
        assert sp.mu_minus == pytest.approx(ref.mu_minus, abs=1e-10)

    def test_simplified_variant_differs(self):
        omega = 0.8722
        general = spectrum_wedge(omega, variant="general")
        simplified = spectrum_wedge(omega, variant="simplified")
        assert abs(general.mu_plus - simplified.mu_plus) > 1e-4

    def test_double_wedge_at_origin(self):
        sp = spectrum_double_wedge(0.0)
        assert (sp.mu_plus, sp.mu_minus) == (0.5, 0.5)

    @given(st.floats(-5, 5))
    @settings(max_examples=40, deadline=None)
    def test_double_wedge_complement_symmetry(self, omega):
        # mu_pm(omega) + mu_mp(-omega) = 1.
        sp = spectrum_double_wedge(omega)
        mirrored = spectrum_double_wedge(-omega)
        assert sp.mu_plus + mirrored.mu_minus == pytest.approx(1.0, abs=1e-12)

    def test_limits_at_large_omega(self):
        # The approach to the limits is only algebraic in omega, so check
        # monotone convergence rather than a tight absolute tolerance.
        excesses = [spectrum_single(w, 0.0).mu_plus - 1.0
                    for w in (6.0, 12.0, 24.0)]
        defects = [spectrum_single(-w, 0.0).mu_minus for w in (6.0, 12.0, 24.0)]
        assert all(0.0 < e < 1e-3 for e in excesses)
        assert excesses[0] > excesses[1] > excesses[2]
        assert all(-1e-1 < d < 0.0 for d in defects)
        assert defects[0] < defects[1] < defects[2]
