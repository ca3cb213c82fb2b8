"""Tests for the spectrum extremization and k-sweeps."""

import math

import numpy as np
import pytest

from wignerbounds.bounds import (
    BoundaryExtremumError,
    DoubleWedge,
    HyperbolaDouble,
    HyperbolaSingle,
    OptimizerConfig,
    Wedge,
    optimize_bounds,
    sweep,
    wedge_equivalence,
)


@pytest.fixture(scope="module")
def wedge_bounds():
    return optimize_bounds(Wedge())


@pytest.fixture(scope="module")
def double_wedge_bounds():
    return optimize_bounds(DoubleWedge())


class TestWedge:
    def test_values(self, wedge_bounds):
        assert wedge_bounds.lower == pytest.approx(-0.155939843, abs=1e-8)
        assert wedge_bounds.upper == pytest.approx(1.007679970, abs=1e-8)

    def test_arg_extrema_signs(self, wedge_bounds):
        assert wedge_bounds.omega_at_lower < 0 < wedge_bounds.omega_at_upper

    def test_hyperbola_k0_matches(self, wedge_bounds):
        res = optimize_bounds(HyperbolaSingle(0.0))
        tol = wedge_bounds.certified_tol + res.certified_tol
        assert res.lower == pytest.approx(wedge_bounds.lower, abs=tol)
        assert res.upper == pytest.approx(wedge_bounds.upper, abs=tol)

    def test_step_halving_within_certified_tol(self, wedge_bounds):
        fine = optimize_bounds(Wedge(), OptimizerConfig(coarse_step=0.01))
        assert abs(fine.lower - wedge_bounds.lower) < wedge_bounds.certified_tol
        assert abs(fine.upper - wedge_bounds.upper) < wedge_bounds.certified_tol

    def test_narrow_window_grows_automatically(self, wedge_bounds):
        res = optimize_bounds(Wedge(), OptimizerConfig(omega_min=-0.6,
                                                       omega_max=0.6))
        assert res.lower == pytest.approx(wedge_bounds.lower, abs=1e-8)
        assert res.upper == pytest.approx(wedge_bounds.upper, abs=1e-8)


class TestDoubleWedge:
    def test_values(self, double_wedge_bounds):
        assert double_wedge_bounds.lower == pytest.approx(-0.236823652, abs=1e-8)
        assert double_wedge_bounds.upper == pytest.approx(1.236823652, abs=1e-8)

    def test_sum_to_one(self, double_wedge_bounds):
        assert double_wedge_bounds.lower + double_wedge_bounds.upper == (
            pytest.approx(1.0, abs=1e-10)
        )

    def test_symmetry_about_half(self, double_wedge_bounds):
        lo_gap = 0.5 - double_wedge_bounds.lower
        hi_gap = double_wedge_bounds.upper - 0.5
        assert lo_gap == pytest.approx(hi_gap, abs=1e-10)

    def test_arg_extrema_signs(self, double_wedge_bounds):
        assert double_wedge_bounds.omega_at_lower < 0
        assert double_wedge_bounds.omega_at_upper > 0


class TestHyperbolas:
    def test_single_k19(self):
        res = optimize_bounds(HyperbolaSingle(1.9))
        assert res.lower == pytest.approx(-0.3089, abs=5e-4)

    def test_double_k04(self):
        res = optimize_bounds(HyperbolaDouble(0.4))
        assert res.lower == pytest.approx(-0.4014, abs=5e-4)

    def test_upper_limit_at_infinity(self):
        # For larger k the supremum 1 is attained only as omega -> inf.
        res = optimize_bounds(HyperbolaSingle(1.9))
        assert res.upper == 1.0
        assert math.isinf(res.omega_at_upper)

    def test_negative_k_rejected(self):
        with pytest.raises(ValueError):
            HyperbolaSingle(-1.0)


class TestSweep:
    def test_rows_in_order_with_invariants(self):
        ks = [0.0, 0.4, 1.0]
        rows = sweep("double", ks)
        assert [row.k for row in rows] == ks
        for row in rows:
            assert row.error is None
            assert row.result.lower <= 0.0
            assert row.result.upper >= 1.0 - 1e-12

    def test_bad_kind_rejected(self):
        with pytest.raises(ValueError):
            sweep("triple", [0.0])


class TestWedgeEquivalence:
    def test_quadrant_and_rotated(self, wedge_bounds):
        for half_angle in (math.pi / 4.0, math.pi / 6.0):
            res = wedge_equivalence(half_angle)
            assert res.lower == pytest.approx(wedge_bounds.lower, abs=1e-10)
            assert res.upper == pytest.approx(wedge_bounds.upper, abs=1e-10)

    def test_half_plane_rejected(self):
        with pytest.raises(ValueError):
            wedge_equivalence(math.pi / 2.0)
        with pytest.raises(ValueError):
            wedge_equivalence(0.0)


class TestWindowCap:
    def test_full_cap_window_succeeds(self, wedge_bounds):
        cfg = OptimizerConfig(omega_min=-80.0, omega_max=80.0)
        res = optimize_bounds(Wedge(), cfg)
        assert res.lower == pytest.approx(wedge_bounds.lower, abs=1e-8)
        assert res.upper == pytest.approx(wedge_bounds.upper, abs=1e-8)

    def test_error_type_is_exported(self):
        assert issubclass(BoundaryExtremumError, Exception)
