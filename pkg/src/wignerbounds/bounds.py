"""Extremization of the spectrum families over omega.

Produces best-possible lower/upper bounds on quasiprobability integrals
per region family, and k-sweeps reproducing the bound curves.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .kernels import kernels_grid
from .spectrum import _mu_double, _mu_single

__all__ = [
    "Wedge",
    "DoubleWedge",
    "HyperbolaSingle",
    "HyperbolaDouble",
    "OptimizerConfig",
    "BoundsResult",
    "SweepRow",
    "BoundaryExtremumError",
    "optimize_bounds",
    "sweep",
    "wedge_equivalence",
]


@dataclass(frozen=True)
class Wedge:
    """Infinite wedge: the positive quadrant (k = 0 single-curve limit)."""


@dataclass(frozen=True)
class DoubleWedge:
    """Union of positive and negative quadrants (k = 0 double-curve limit)."""


@dataclass(frozen=True)
class HyperbolaSingle:
    """Region qp >= k, q >= 0 bounded by one hyperbola branch."""

    k: float

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be nonnegative")


@dataclass(frozen=True)
class HyperbolaDouble:
    """Union of the single-curve region and its rotation through pi."""

    k: float

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be nonnegative")


RegionFamily = Wedge | DoubleWedge | HyperbolaSingle | HyperbolaDouble


@dataclass(frozen=True)
class OptimizerConfig:
    omega_min: float = -10.0
    omega_max: float = 10.0
    coarse_step: float = 0.02
    refine_tol: float = 1e-10
    max_refinements: int = 200

    def __post_init__(self):
        if not self.omega_min < self.omega_max:
            raise ValueError("omega window must be nonempty")
        if not self.coarse_step > 0:
            raise ValueError("coarse_step must be positive")


@dataclass(frozen=True)
class BoundsResult:
    """Certified infimum/supremum of a spectrum family over omega."""

    lower: float
    upper: float
    omega_at_lower: float
    omega_at_upper: float
    certified_tol: float

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("lower must not exceed upper")
        if not self.certified_tol > 0:
            raise ValueError("certified_tol must be positive")
        if self.lower > 0 or self.upper < 1:
            warnings.warn(
                "bounds lie inside [0, 1]; unexpected for these region families",
                stacklevel=3,
            )


@dataclass(frozen=True)
class SweepRow:
    k: float
    result: BoundsResult | None
    error: str | None = None


class BoundaryExtremumError(Exception):
    """An extremum sits on the scan-window boundary; enlarge the window."""


_WINDOW_CAP = 80.0


def _family_params(family: RegionFamily) -> tuple[str, float]:
    if isinstance(family, Wedge):
        return "single", 0.0
    if isinstance(family, DoubleWedge):
        return "double", 0.0
    if isinstance(family, HyperbolaSingle):
        return "single", family.k
    if isinstance(family, HyperbolaDouble):
        return "double", family.k
    raise TypeError(f"unknown region family {family!r}")


def _mu_scalar(omega: float, k: float, kind: str) -> tuple[float, float]:
    # Single-point grid evaluation: the deformed-path a avoids the
    # e^{-pi omega} noise amplification of the regularized scalar form,
    # and refinement stays consistent with the coarse scan.
    d, a, b = kernels_grid(np.array([omega]), k)
    if kind == "single":
        hi, lo = _mu_single(d[0], a[0], b[0])
    else:
        hi, lo = _mu_double(d[0], a[0])
    return float(hi), float(lo)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_min(f, a: float, b: float, xtol: float, max_iter: int):
    """Golden-section minimization on [a, b]; returns (x, fx, f_spread)."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while (b - a) > xtol and it < max_iter:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
        it += 1
    if fc <= fd:
        x, fx = c, fc
    else:
        x, fx = d, fd
    spread = abs(fc - fd)
    return x, fx, spread


def _local_min_brackets(omegas, values):
    """Brackets around interior local minima of a sampled curve."""
    v = np.asarray(values)
    idx = np.nonzero((v[1:-1] <= v[:-2]) & (v[1:-1] <= v[2:]))[0] + 1
    brackets = []
    last_hi = None
    for i in idx:
        lo, hi = omegas[i - 1], omegas[i + 1]
        if last_hi is not None and lo < last_hi:  # merge touching plateaus
            brackets[-1] = (brackets[-1][0], hi)
        else:
            brackets.append((lo, hi))
        last_hi = hi
    return brackets


def _pick_extremum(candidates, tol):
    """Best (x, fx) candidate; ties within tol go to the smaller |x|."""
    best = min(candidates, key=lambda c: c[1])
    tied = [c for c in candidates if c[1] <= best[1] + tol]
    return min(tied, key=lambda c: abs(c[0]))


# An extremum on the window edge is accepted as the omega -> +-infinity
# limit (mu_+ -> 1, mu_- -> 0) once the curve has flattened to within
# this tolerance of the limiting value; otherwise the window is enlarged.
_PLATEAU_TOL = 1e-6


def optimize_bounds(family: RegionFamily,
                    cfg: OptimizerConfig | None = None) -> BoundsResult:
    """Global infimum of mu_minus and supremum of mu_plus over omega.

    A coarse grid scan locates every local-extremum bracket; each is
    refined by golden-section search.  The spectra approach {0, 1} as
    |omega| grows, so the limiting values are always candidates: the
    supremum is 1, attained only in the limit, whenever no interior
    maximum exceeds it (reported with omega = +inf).  An extremum on
    the window edge that has not flattened onto its limit triggers
    automatic window doubling on that side up to |omega| = 80, beyond
    which BoundaryExtremumError is raised.
    """
    cfg = cfg or OptimizerConfig()
    kind, k = _family_params(family)

    lo_w, hi_w = cfg.omega_min, cfg.omega_max
    while True:
        n = int(round((hi_w - lo_w) / cfg.coarse_step)) + 1
        omegas = np.linspace(lo_w, hi_w, n)
        d, a, b = kernels_grid(omegas, k)
        if kind == "single":
            mu_hi, mu_lo = _mu_single(d, a, b)
        else:
            mu_hi, mu_lo = _mu_double(d, a)
        grow_lo = grow_hi = False
        i_min, i_max = int(np.argmin(mu_lo)), int(np.argmax(mu_hi))
        if i_min in (0, n - 1) and abs(mu_lo[i_min]) > _PLATEAU_TOL:
            grow_lo |= i_min == 0
            grow_hi |= i_min == n - 1
        if i_max in (0, n - 1) and abs(mu_hi[i_max] - 1.0) > _PLATEAU_TOL:
            grow_lo |= i_max == 0
            grow_hi |= i_max == n - 1
        if not (grow_lo or grow_hi):
            break
        if (grow_lo and lo_w <= -_WINDOW_CAP) or (grow_hi and hi_w >= _WINDOW_CAP):
            raise BoundaryExtremumError(
                "extremum on the omega-window boundary at "
                f"[{lo_w}, {hi_w}]; enlarge the scan window"
            )
        width = hi_w - lo_w
        if grow_lo:
            lo_w = max(lo_w - width, -_WINDOW_CAP)
        if grow_hi:
            hi_w = min(hi_w + width, _WINDOW_CAP)

    def f_min(w):
        return _mu_scalar(w, k, kind)[1]

    def f_max_neg(w):
        return -_mu_scalar(w, k, kind)[0]

    spread_tol = 0.0

    def refine(brackets, f, coarse_best):
        nonlocal spread_tol
        candidates = [coarse_best]
        for blo, bhi in brackets:
            x, fx, spread = _golden_min(f, blo, bhi, cfg.refine_tol,
                                        cfg.max_refinements)
            spread_tol = max(spread_tol, spread)
            candidates.append((x, fx))
        return _pick_extremum(candidates, tol=1e-14)

    i = int(np.argmin(mu_lo))
    w_lo, v_lo = refine(_local_min_brackets(omegas, mu_lo), f_min,
                        (float(omegas[i]), float(mu_lo[i])))
    j = int(np.argmax(mu_hi))
    w_hi, v_hi_neg = refine(_local_min_brackets(omegas, -mu_hi), f_max_neg,
                            (float(omegas[j]), float(-mu_hi[j])))
    upper = -v_hi_neg
    if upper < 1.0:  # the omega -> +inf limit wins
        upper, w_hi = 1.0, math.inf
    if v_lo > 0.0:  # the omega -> -inf limit wins
        v_lo, w_lo = 0.0, -math.inf

    kernel_err = 1e-12 if k == 0 else 1e-9
    return BoundsResult(
        lower=v_lo,
        upper=upper,
        omega_at_lower=w_lo,
        omega_at_upper=w_hi,
        certified_tol=spread_tol + kernel_err + cfg.refine_tol,
    )


def sweep(kind: str, k_values, cfg: OptimizerConfig | None = None) -> list[SweepRow]:
    """Bounds for each k in k_values ('single' or 'double' family).

    Per-k failures are recorded in their rows without aborting the sweep.
    """
    if kind not in ("single", "double"):
        raise ValueError("kind must be 'single' or 'double'")
    factory = HyperbolaSingle if kind == "single" else HyperbolaDouble
    rows = []
    for k in k_values:
        try:
            rows.append(SweepRow(float(k), optimize_bounds(factory(float(k)), cfg)))
        except Exception as exc:  # recorded per row, sweep continues
            rows.append(SweepRow(float(k), None, error=str(exc)))
    return rows


def wedge_equivalence(half_angle: float, vertex=None, orientation: float = 0.0,
                      cfg: OptimizerConfig | None = None) -> BoundsResult:
    """Bounds for any infinite wedge with half-angle in (0, pi/2).

    Every such wedge is the image of the quadrant under an affine map of
    unit determinant whose operator image is unitary, so the spectrum
    (and hence the bounds) is that of the quadrant, independent of the
    vertex and orientation.
    """
    if not 0.0 < half_angle < math.pi / 2.0:
        raise ValueError("half_angle must lie strictly inside (0, pi/2)")
    return optimize_bounds(Wedge(), cfg)
