"""Acceptance criteria.

Each criterion prints exactly one PASS/FAIL line (visible on the live
terminal) and asserts at its stated tolerance.
"""

import math
import time

import numpy as np
import pytest
from scipy.special import erf

from wignerbounds import (
    Coherent,
    ContourSpec,
    DoubleWedge,
    Fock,
    HyperbolaDouble,
    HyperbolaSingle,
    Metaplectic,
    PhasePoint,
    Squeezed,
    Wedge,
    apply_metaplectic,
    containment_check,
    eval_kernels,
    eval_u,
    expectation_region_operator,
    optimize_bounds,
    qpi,
    residue_R,
    sweep,
)
from wignerbounds.oracle import DoubleWedge0, FullPlane
from wignerbounds.oracle import HyperbolaSingle as OracleHyperbola
from wignerbounds.quadrature import integrate_adaptive, integrate_region_2d
from wignerbounds.spectrum import build_A, build_A2, eigen2, spectrum_double, spectrum_single


def _report(capsys, number, ok, detail):
    with capsys.disabled():
        status = "PASS" if ok else "FAIL"
        print(f"ACCEPTANCE {number:2d} {status}: {detail}")
    assert ok, detail


def test_criterion_01_wedge_bounds(capsys):
    start = time.time()
    res = optimize_bounds(Wedge())
    elapsed = time.time() - start
    err_lo = abs(res.lower - (-0.155939843))
    err_hi = abs(res.upper - 1.007679970)
    ok = err_lo < 1e-8 and err_hi < 1e-8 and elapsed < 10.0
    _report(capsys, 1, ok,
            f"wedge bounds within 1e-8 (errors {err_lo:.1e}/{err_hi:.1e}) "
            f"in {elapsed:.2f}s")


def test_criterion_02_double_wedge_bounds(capsys):
    res = optimize_bounds(DoubleWedge())
    err_lo = abs(res.lower - (-0.236823652))
    err_hi = abs(res.upper - 1.236823652)
    err_sum = abs(res.lower + res.upper - 1.0)
    ok = err_lo < 1e-8 and err_hi < 1e-8 and err_sum < 1e-10
    _report(capsys, 2, ok,
            f"double-wedge bounds within 1e-8 and sum-to-1 within 1e-10 "
            f"(errors {err_lo:.1e}/{err_hi:.1e}, sum {err_sum:.1e})")


def test_criterion_03_single_sweep(capsys):
    start = time.time()
    rows = sweep("single", np.linspace(0.0, 5.0, 101))
    elapsed = time.time() - start
    assert all(row.result is not None for row in rows)
    lowers = np.array([row.result.lower for row in rows])
    uppers = np.array([row.result.upper for row in rows])
    ks = np.array([row.k for row in rows])
    k_min = ks[np.argmin(lowers)]
    min_ok = (abs(lowers.min() - (-0.3089)) < 5e-4
              and abs(k_min - 1.9) <= 0.1)
    # The supremum is > 1 for every k but approaches 1 from above faster
    # than double precision resolves; rows may therefore report exactly 1.
    upper_ok = (np.all(uppers >= 1.0 - 1e-12)
                and np.argmax(uppers - 1.0) == 0
                and uppers[0] > 1.0)
    ok = min_ok and upper_ok and elapsed < 600.0
    _report(capsys, 3, ok,
            f"single sweep: min L = {lowers.min():.6f} at k = {k_min:.2f}; "
            f"U_k >= 1 with max excess at k = 0; {elapsed:.0f}s")


def test_criterion_04_double_sweep(capsys):
    rows = sweep("double", np.linspace(0.0, 5.0, 101))
    assert all(row.result is not None for row in rows)
    lowers = np.array([row.result.lower for row in rows])
    ks = np.array([row.k for row in rows])
    k_min = ks[np.argmin(lowers)]
    l5 = rows[-1].result.lower
    ok = (abs(lowers.min() - (-0.4014)) < 5e-4
          and abs(k_min - 0.4) <= 0.05
          and -0.35 < l5 < -0.25)
    _report(capsys, 4, ok,
            f"double sweep: min L = {lowers.min():.6f} at k = {k_min:.2f}; "
            f"L at k=5 is {l5:.4f} in (-0.35, -0.25)")


def test_criterion_05_kernel_identities(capsys):
    worst_b = worst_k0 = worst_res = 0.0
    for k in (0.0, 0.5, 1.0, 2.0, 5.0):
        for omega in np.linspace(0.0, 3.0, 7):
            kern = eval_kernels(float(omega), k)
            lhs = kern.b
            rhs = math.exp(-math.pi * omega) * (0.5 + kern.d)
            worst_b = max(worst_b, abs(lhs - rhs))
    for omega in np.linspace(-3.0, 3.0, 13):
        kern = eval_kernels(float(omega), 0.0)
        worst_k0 = max(
            worst_k0,
            abs(kern.d - math.tanh(math.pi * omega) / 2.0),
            abs(kern.a - (eval_u(float(omega))
                          - math.tanh(math.pi * omega) / 2.0)),
        )
    base = residue_R(1.0, 1.0, ContourSpec(0.6, 64)).R
    for radius in (1.0, 1.7):
        worst_res = max(worst_res,
                        abs(residue_R(1.0, 1.0, ContourSpec(radius, 64)).R - base))
    ok = worst_b < 1e-8 and worst_k0 < 1e-9 and worst_res < 1e-10
    _report(capsys, 5, ok,
            f"kernel identities: b-identity {worst_b:.1e} (<1e-8), k=0 "
            f"closed forms {worst_k0:.1e} (<1e-9), residue radius "
            f"independence {worst_res:.1e} (<1e-10)")


def test_criterion_06_spectrum_consistency(capsys):
    worst_eig = worst_trace = 0.0
    sign_ok = True
    for k in (0.0, 0.5, 1.0, 2.0, 5.0):
        for omega in np.linspace(-2.0, 2.0, 41):
            kern = eval_kernels(float(omega), k)
            sp = spectrum_single(float(omega), k, kern)
            hi, lo = eigen2(build_A(float(omega), k, kern))
            worst_eig = max(worst_eig, abs(sp.mu_plus - hi.mu),
                            abs(sp.mu_minus - lo.mu))
            worst_trace = max(worst_trace,
                              abs(sp.mu_plus + sp.mu_minus - (0.5 + kern.d)))
            sign_ok &= sp.mu_plus * sp.mu_minus <= 1e-15
            sp2 = spectrum_double(float(omega), k, kern)
            hi2, lo2 = eigen2(build_A2(float(omega), k, kern))
            worst_eig = max(worst_eig, abs(sp2.mu_plus - hi2.mu),
                            abs(sp2.mu_minus - lo2.mu))
            worst_trace = max(worst_trace,
                              abs(sp2.mu_plus + sp2.mu_minus
                                  - (1.0 + 2.0 * kern.d)))
    ok = worst_eig < 1e-12 and worst_trace < 1e-12 and sign_ok
    _report(capsys, 6, ok,
            f"spectrum consistency on 41x5 grid: eigensolver agreement "
            f"{worst_eig:.1e}, trace identities {worst_trace:.1e} (<1e-12), "
            f"mu_+ mu_- <= 0")


def _state_suite():
    states = [Fock(n) for n in range(9)]
    for q0 in np.linspace(-3.0, 3.0, 7):
        for p0 in np.linspace(-3.0, 3.0, 7):
            states.append(Coherent(float(q0), float(p0)))
    states += [Squeezed(s, 0.0, 0.0) for s in (0.5, 1.0, 2.0)]
    return states


def test_criterion_07_oracle_containment(capsys):
    states = _state_suite()
    assert len(states) >= 50
    total = violations = 0
    for factory in (HyperbolaSingle, HyperbolaDouble):
        for k in (0.0, 0.5, 1.0, 1.9, 5.0):
            family = factory(k)
            bounds = optimize_bounds(family)
            report = containment_check(states, family, bounds)
            total += len(report.entries)
            violations += len(report.violations)
    ok = violations == 0
    _report(capsys, 7, ok,
            f"containment: {len(states)} states x 10 families, "
            f"{total} qpis, {violations} violations (tolerance 1e-6)")


def test_criterion_08_duality(capsys):
    worst = 0.0
    quarter_ok = True
    cases = [Fock(0), Fock(1), Fock(2), Coherent(1.0, 0.5),
             Coherent(-0.5, 1.2)]
    for state in cases:
        for k in (0.0, 1.0):
            op_side = expectation_region_operator(state, k)
            ps_side = qpi(state, OracleHyperbola(k)).value
            worst = max(worst, abs(op_side - ps_side))
            if k == 0.0 and isinstance(state, Fock):
                quarter_ok &= abs(op_side - 0.25) < 1e-8
    ok = worst < 1e-6 and quarter_ok
    _report(capsys, 8, ok,
            f"duality: operator side vs phase-space side, worst "
            f"difference {worst:.1e} (<1e-6); Fock k=0 values are 1/4")


def test_criterion_09_wigner_sanity(capsys):
    states = [Fock(0), Fock(3), Coherent(1.0, -1.0), Squeezed(2.0, 0.5, 0.0)]
    qs, ps = np.meshgrid(np.linspace(-4, 4, 33), np.linspace(-4, 4, 33))
    worst_point = worst_norm = worst_purity = 0.0
    marg_min = np.inf
    for state in states:
        worst_point = max(worst_point,
                          float(np.max(np.abs(state.wigner(qs, ps))))
                          - 1.0 / math.pi)
        norm = qpi(state, FullPlane()).value
        worst_norm = max(worst_norm, abs(norm - 1.0))
        purity = integrate_region_2d(
            lambda x, s=state: np.real(s.wigner(x[0], x[1])) ** 2, FullPlane()
        ).value
        worst_purity = max(worst_purity, abs(purity - 1.0 / (2.0 * math.pi)))
        for q in np.linspace(-3.0, 3.0, 9):
            marg = integrate_adaptive(
                lambda p, q=q, s=state: np.real(s.wigner(q, p)),
                (-30.0, 30.0),
            ).value
            marg_min = min(marg_min, marg)
    ok = (worst_point <= 1e-12 and worst_norm < 1e-6
          and worst_purity < 1e-6 and marg_min >= -1e-9)
    _report(capsys, 9, ok,
            f"Wigner sanity: pointwise bound excess {worst_point:.1e}, "
            f"normalization {worst_norm:.1e}, purity {worst_purity:.1e} "
            f"(<1e-6), marginal min {marg_min:.1e} (>=-1e-9)")


def test_criterion_10_complement_rotation(capsys):
    rotated = apply_metaplectic(Metaplectic.rotation(math.pi / 2.0),
                                DoubleWedge0())
    worst = 0.0
    states = [Fock(0), Fock(2), Coherent(1.5, -0.5), Squeezed(0.5, 0.0, 1.0),
              Coherent(-2.0, 2.0)]
    for state in states:
        total = qpi(state, DoubleWedge0()).value + qpi(state, rotated).value
        worst = max(worst, abs(total - 1.0))
    ok = worst < 1e-6
    _report(capsys, 10, ok,
            f"complement under quarter rotation: worst deviation of "
            f"qpi + rotated qpi from 1 is {worst:.1e} (<1e-6)")
