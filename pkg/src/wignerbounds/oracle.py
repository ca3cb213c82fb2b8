"""Independent validation oracle.

Analytic Wigner functions for standard state families, direct 2-D
quasiprobability integrals (qpis) over phase-plane regions, direct
application of the region-operator configuration kernel, and
metaplectic transformations of regions and Gaussian states.

Everything here is deliberately independent of the spectral pipeline in
:mod:`kernels` / :mod:`spectrum` / :mod:`bounds`: agreement between the
two sides is the validation, not a construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .quadrature import (
    CONFIG_2D,
    IntegralResult,
    QuadratureConfig,
    integrate_adaptive,
    integrate_region_2d,
    integrate_semi_infinite,
)

__all__ = [
    "PhasePoint",
    "Metaplectic",
    "FullPlane",
    "Quadrant",
    "DoubleWedge0",
    "HyperbolaSingle",
    "HyperbolaDouble",
    "GeneralWedge",
    "MappedRegion",
    "Complement",
    "region_for_family",
    "Fock",
    "Coherent",
    "Squeezed",
    "FockSuperposition",
    "QpiResult",
    "wigner_eval",
    "wigner_from_wavefunction",
    "qpi",
    "expectation_region_operator",
    "apply_metaplectic",
    "apply_metaplectic_state",
    "containment_check",
    "ContainmentReport",
]


# ---------------------------------------------------------------------------
# Phase-plane geometry.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhasePoint:
    """A point (q, p) on the dimensionless phase plane."""

    q: float
    p: float

    def __post_init__(self):
        if not (math.isfinite(self.q) and math.isfinite(self.p)):
            raise ValueError("phase-plane coordinates must be finite")


@dataclass(frozen=True)
class Metaplectic:
    """Affine phase-plane map (q, p) -> (alpha q + beta p, gamma q + delta p)
    followed by translation by (q0, p0); unit determinant required.
    """

    alpha: float
    beta: float
    gamma: float
    delta: float
    q0: float = 0.0
    p0: float = 0.0

    def __post_init__(self):
        det = self.alpha * self.delta - self.beta * self.gamma
        if abs(det - 1.0) > 1e-12:
            raise ValueError(f"determinant must be 1 (got {det!r})")

    @property
    def matrix(self):
        return np.array([[self.alpha, self.beta], [self.gamma, self.delta]])

    @property
    def offset(self):
        return np.array([self.q0, self.p0])

    def apply(self, x):
        """Apply to a PhasePoint or a (2, ...) coordinate array."""
        if isinstance(x, PhasePoint):
            q = self.alpha * x.q + self.beta * x.p + self.q0
            p = self.gamma * x.q + self.delta * x.p + self.p0
            return PhasePoint(q, p)
        x = np.asarray(x, dtype=float)
        out = np.tensordot(self.matrix, x, axes=(1, 0))
        return out + self.offset.reshape((2,) + (1,) * (out.ndim - 1))

    def inverse(self) -> "Metaplectic":
        a, b, c, d = self.alpha, self.beta, self.gamma, self.delta
        # Unit determinant: inverse linear part is [[d, -b], [-c, a]].
        q0 = -(d * self.q0 - b * self.p0)
        p0 = -(-c * self.q0 + a * self.p0)
        return Metaplectic(d, -b, -c, a, q0, p0)

    def compose(self, other: "Metaplectic") -> "Metaplectic":
        """self after other: (self . other)(x) = self(other(x))."""
        m = self.matrix @ other.matrix
        off = self.matrix @ other.offset + self.offset
        return Metaplectic(m[0, 0], m[0, 1], m[1, 0], m[1, 1], off[0], off[1])

    @classmethod
    def rotation(cls, theta: float) -> "Metaplectic":
        c, s = math.cos(theta), math.sin(theta)
        return cls(c, -s, s, c)

    @classmethod
    def squeeze(cls, sigma: float) -> "Metaplectic":
        """The dilation T_sigma: (q, p) -> (sigma q, p / sigma)."""
        if sigma <= 0:
            raise ValueError("sigma must be positive")
        return cls(sigma, 0.0, 0.0, 1.0 / sigma)

    @classmethod
    def translation(cls, q0: float, p0: float) -> "Metaplectic":
        return cls(1.0, 0.0, 0.0, 1.0, q0, p0)


# ---------------------------------------------------------------------------
# Regions.  Each region answers exact membership tests on its defining
# inequalities and describes its inner p-intervals for the iterated 2-D
# quadrature in `integrate_region_2d`.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FullPlane:
    """The whole phase plane (quadrature plumbing for complements)."""

    def contains(self, point: PhasePoint) -> bool:
        return True

    def p_intervals(self, q, p_lo, p_hi):
        return [(p_lo, p_hi)]

    def q_breakpoints(self):
        return []


@dataclass(frozen=True)
class Quadrant:
    """The positive quadrant q >= 0, p >= 0 (the k = 0 wedge S_0)."""

    def contains(self, point: PhasePoint) -> bool:
        return point.q >= 0.0 and point.p >= 0.0

    def p_intervals(self, q, p_lo, p_hi):
        if q < 0.0:
            return []
        return [(max(p_lo, 0.0), p_hi)]

    def q_breakpoints(self):
        return [0.0]


@dataclass(frozen=True)
class DoubleWedge0:
    """Union of the positive and negative quadrants (qp >= 0)."""

    def contains(self, point: PhasePoint) -> bool:
        return point.q * point.p >= 0.0

    def p_intervals(self, q, p_lo, p_hi):
        if q > 0.0:
            return [(max(p_lo, 0.0), p_hi)]
        if q < 0.0:
            return [(p_lo, min(p_hi, 0.0))]
        return []

    def q_breakpoints(self):
        return [0.0]


@dataclass(frozen=True)
class HyperbolaSingle:
    """The single-curve hyperbolic region S_k: qp >= k and q >= 0."""

    k: float

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be nonnegative")

    def contains(self, point: PhasePoint) -> bool:
        return point.q >= 0.0 and point.q * point.p >= self.k

    def p_intervals(self, q, p_lo, p_hi):
        if q <= 0.0:
            return []
        return [(max(p_lo, self.k / q), p_hi)]

    def q_breakpoints(self):
        return [0.0]


@dataclass(frozen=True)
class HyperbolaDouble:
    """The double-curve region S_{k,2}: qp >= k (both hyperbola branches)."""

    k: float

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be nonnegative")

    def contains(self, point: PhasePoint) -> bool:
        return point.q * point.p >= self.k

    def p_intervals(self, q, p_lo, p_hi):
        if q > 0.0:
            return [(max(p_lo, self.k / q), p_hi)]
        if q < 0.0:
            return [(p_lo, min(p_hi, self.k / q))]
        return []

    def q_breakpoints(self):
        return [0.0]


@dataclass(frozen=True)
class MappedRegion:
    """Image of a region under a metaplectic map."""

    region: object
    map: Metaplectic

    def contains(self, point: PhasePoint) -> bool:
        return self.region.contains(self.map.inverse().apply(point))

    def pullback(self, f):
        """Pull an integrand back through the map (unit Jacobian)."""
        m = self.map

        def g(x):
            return f(m.apply(x))

        return g, self.region


@dataclass(frozen=True)
class Complement:
    """Set complement of a region."""

    inner: object

    def contains(self, point: PhasePoint) -> bool:
        return not self.inner.contains(point)


def GeneralWedge(vertex: PhasePoint, axis_angle: float,
                 half_angle: float) -> MappedRegion:
    """An infinite wedge with the given vertex, axis direction and
    half-angle in (0, pi/2), as a unit-determinant affine image of the
    quadrant (edge directions become the images of the quadrant's axes).
    """
    if not 0.0 < half_angle < math.pi / 2.0:
        raise ValueError("half_angle must lie strictly inside (0, pi/2)")
    lo = axis_angle - half_angle
    hi = axis_angle + half_angle
    scale = 1.0 / math.sqrt(math.sin(2.0 * half_angle))  # unit determinant
    m = Metaplectic(
        scale * math.cos(lo), scale * math.cos(hi),
        scale * math.sin(lo), scale * math.sin(hi),
        vertex.q, vertex.p,
    )
    return MappedRegion(Quadrant(), m)


def region_for_family(family):
    """Oracle region matching a bounds-module region family."""
    from . import bounds

    if isinstance(family, bounds.Wedge):
        return Quadrant()
    if isinstance(family, bounds.DoubleWedge):
        return DoubleWedge0()
    if isinstance(family, bounds.HyperbolaSingle):
        return HyperbolaSingle(family.k)
    if isinstance(family, bounds.HyperbolaDouble):
        return HyperbolaDouble(family.k)
    raise TypeError(f"unsupported region family: {family!r}")


def apply_metaplectic(m: Metaplectic, region):
    """Image of a region under a metaplectic map (maps compose)."""
    if isinstance(region, MappedRegion):
        return MappedRegion(region.region, m.compose(region.map))
    return MappedRegion(region, m)


# ---------------------------------------------------------------------------
# States: configuration wavefunctions and closed-form Wigner functions.
# ---------------------------------------------------------------------------

def _hermite(n: int, x):
    """Physicists' Hermite polynomial H_n by the three-term recurrence."""
    x = np.asarray(x)
    h_prev = np.ones_like(x, dtype=float)
    if n == 0:
        return h_prev
    h = 2.0 * x
    for m in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * m * h_prev
    return h


def _laguerre(n: int, alpha: int, x):
    """Generalized Laguerre polynomial L_n^alpha by recurrence."""
    x = np.asarray(x, dtype=float)
    l_prev = np.ones_like(x)
    if n == 0:
        return l_prev
    l = 1.0 + alpha - x
    for m in range(1, n):
        l_prev, l = l, ((2 * m + 1 + alpha - x) * l - (m + alpha) * l_prev) / (m + 1)
    return l


@dataclass(frozen=True)
class Fock:
    """The number state |n>."""

    n: int

    def __post_init__(self):
        if self.n < 0 or self.n != int(self.n):
            raise ValueError("n must be a nonnegative integer")

    def psi(self, x):
        x = np.asarray(x, dtype=float)
        norm = math.pi ** -0.25 / math.sqrt(2.0 ** self.n * math.factorial(self.n))
        return (norm * _hermite(self.n, x) * np.exp(-x * x / 2.0)).astype(complex)

    def psi_prime(self, x):
        x = np.asarray(x, dtype=float)
        lower = Fock(self.n - 1).psi(x) if self.n > 0 else 0.0
        return math.sqrt(2.0 * self.n) * lower - x * self.psi(x)

    def wigner(self, q, p):
        r2 = np.asarray(q) ** 2 + np.asarray(p) ** 2
        return ((-1.0) ** self.n / math.pi) * np.exp(-r2) * _laguerre(self.n, 0, 2.0 * r2)

    def support_radius(self) -> float:
        return math.sqrt(2.0 * self.n + 1.0) + 8.0


@dataclass(frozen=True)
class Coherent:
    """Coherent state centered at (q0, p0)."""

    q0: float
    p0: float

    def psi(self, x):
        x = np.asarray(x, dtype=float)
        return math.pi ** -0.25 * np.exp(
            -((x - self.q0) ** 2) / 2.0 + 1j * self.p0 * (x - self.q0 / 2.0)
        )

    def psi_prime(self, x):
        x = np.asarray(x, dtype=float)
        return (-(x - self.q0) + 1j * self.p0) * self.psi(x)

    def wigner(self, q, p):
        dq = np.asarray(q) - self.q0
        dp = np.asarray(p) - self.p0
        return np.exp(-dq * dq - dp * dp) / math.pi

    def support_radius(self) -> float:
        return abs(self.q0) + 8.0


@dataclass(frozen=True)
class Squeezed:
    """Squeezed Gaussian with position spread sigma, centered at (q0, p0)."""

    sigma: float
    q0: float = 0.0
    p0: float = 0.0

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")

    def psi(self, x):
        x = np.asarray(x, dtype=float)
        norm = math.pi ** -0.25 / math.sqrt(self.sigma)
        return norm * np.exp(
            -((x - self.q0) ** 2) / (2.0 * self.sigma ** 2)
            + 1j * self.p0 * (x - self.q0 / 2.0)
        )

    def psi_prime(self, x):
        x = np.asarray(x, dtype=float)
        return (-(x - self.q0) / self.sigma ** 2 + 1j * self.p0) * self.psi(x)

    def wigner(self, q, p):
        dq = np.asarray(q) - self.q0
        dp = np.asarray(p) - self.p0
        s2 = self.sigma ** 2
        return np.exp(-dq * dq / s2 - s2 * dp * dp) / math.pi

    def support_radius(self) -> float:
        return abs(self.q0) + 8.0 * max(self.sigma, 1.0)


@dataclass(frozen=True)
class FockSuperposition:
    """Normalized superposition sum c_n |n>, as ((c, n), ...) pairs."""

    terms: tuple

    def __post_init__(self):
        terms = tuple((complex(c), int(n)) for c, n in self.terms)
        if any(n < 0 for _, n in terms):
            raise ValueError("Fock indices must be nonnegative")
        if len({n for _, n in terms}) != len(terms):
            raise ValueError("repeated Fock index in superposition")
        total = sum(abs(c) ** 2 for c, _ in terms)
        if abs(total - 1.0) > 1e-12:
            raise ValueError("superposition coefficients must be normalized")
        object.__setattr__(self, "terms", terms)

    def psi(self, x):
        return sum(c * Fock(n).psi(x) for c, n in self.terms)

    def wigner(self, q, p):
        out = 0.0
        for cm, m in self.terms:
            for cn, n in self.terms:
                out = out + np.conjugate(cm) * cn * _cross_wigner(m, n, q, p)
        return np.real(out)

    def support_radius(self) -> float:
        n_max = max(n for _, n in self.terms)
        return math.sqrt(2.0 * n_max + 1.0) + 8.0


def _cross_wigner(m: int, n: int, q, p):
    """Cross-Wigner function W_{mn} = (1/pi) int conj(psi_m)(q+tau)
    psi_n(q-tau) e^{2ip tau} d tau, in closed form.
    """
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    if m > n:
        return np.conjugate(_cross_wigner(n, m, q, p))
    r2 = q * q + p * p
    z = math.sqrt(2.0) * (q - 1j * p)
    pref = ((-1.0) ** m / math.pi) * math.sqrt(
        math.factorial(m) / math.factorial(n)
    )
    return pref * z ** (n - m) * np.exp(-r2) * _laguerre(m, n - m, 2.0 * r2)


StateSpec = (Fock, Coherent, Squeezed, FockSuperposition)


def apply_metaplectic_state(m: Metaplectic, state):
    """Image of a Gaussian-family state under a metaplectic map.

    Only maps whose image is again an axis-aligned Gaussian (transformed
    covariance diagonal) are representable in the state families here;
    anything else is rejected.
    """
    if not isinstance(state, (Coherent, Squeezed)):
        raise TypeError("state transform is restricted to Gaussian families")
    sigma = state.sigma if isinstance(state, Squeezed) else 1.0
    cov = np.diag([sigma ** 2, 1.0 / sigma ** 2]) / 2.0
    cov2 = m.matrix @ cov @ m.matrix.T
    if abs(cov2[0, 1]) > 1e-12:
        raise ValueError("mapped Gaussian is not axis-aligned; unsupported")
    center = m.apply(PhasePoint(
        state.q0, state.p0 if isinstance(state, Squeezed) else state.p0
    ))
    sigma2 = math.sqrt(2.0 * cov2[0, 0])
    if abs(sigma2 - 1.0) <= 1e-12:
        return Coherent(center.q, center.p)
    return Squeezed(sigma2, center.q, center.p)


# ---------------------------------------------------------------------------
# Wigner evaluation and qpis.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QpiResult:
    """A quasiprobability integral with its quadrature error estimate."""

    value: float
    error_estimate: float
    region: object
    state: object

    def __post_init__(self):
        if self.error_estimate < 0:
            raise ValueError("error_estimate must be nonnegative")


def wigner_eval(state, point: PhasePoint) -> float:
    """Closed-form Wigner function of a supported state at one point."""
    return float(np.real(state.wigner(point.q, point.p)))


def wigner_from_wavefunction(psi, point: PhasePoint,
                             cfg: QuadratureConfig | None = None) -> float:
    """Wigner function by direct quadrature of the defining integral,
    W = (1/pi) int conj(psi)(q+tau) psi(q-tau) e^{2ip tau} d tau,
    for a callable configuration wavefunction.

    The integrand is conjugate-even in tau, so W = (2/pi) Re of the
    half-line integral.  Raises ValueError if psi is not normalized to
    within 1e-6 (undersampled or truncated input).
    """
    cfg = cfg or QuadratureConfig(abs_tol=1e-10, rel_tol=1e-10)

    def density(x):
        return np.abs(psi(np.asarray(x, dtype=float))) ** 2

    norm = (integrate_semi_infinite(density, 0.0, cfg).value
            + integrate_semi_infinite(lambda x: density(-x), 0.0, cfg).value)
    if abs(norm - 1.0) > 1e-6:
        raise ValueError(f"wavefunction normalization drift: |psi|^2 = {norm!r}")

    q, p = point.q, point.p

    def integrand(tau):
        tau = np.asarray(tau, dtype=float)
        vals = np.conjugate(psi(q + tau)) * psi(q - tau) * np.exp(2j * p * tau)
        return np.real(vals)

    half = integrate_semi_infinite(integrand, 0.0, cfg)
    return 2.0 / math.pi * half.value


def qpi(state, region, cfg: QuadratureConfig | None = None) -> QpiResult:
    """Direct 2-D quasiprobability integral of a state over a region."""
    cfg = cfg or CONFIG_2D

    def f(x):
        return np.real(state.wigner(x[0], x[1]))

    res = integrate_region_2d(f, region, cfg)
    return QpiResult(res.value, res.error_estimate, region, state)


# ---------------------------------------------------------------------------
# Region-operator expectation through the configuration kernel.
# ---------------------------------------------------------------------------

# Above this phase frequency k/s the principal-value integral is replaced
# by its stationary limit i pi |psi(s)|^2; the corrections for the
# Gaussian-type wavefunctions here decay like e^{-(k/s)^2/4}.
_PV_FREQ_CUTOFF = 40.0
_PV_SMALL_T = 1e-4
_PV_CFG = QuadratureConfig(abs_tol=1e-10, rel_tol=1e-9, max_subdivisions=8000)


def _pv_inner(state, k: float, s: float, cfg: QuadratureConfig) -> complex:
    """PV int e^{ikt/s} conj(psi)(s+t/2) psi(s-t/2) / t dt by odd-part
    extraction: PV int G/t = int_0^inf (G(t) - G(-t))/t dt.
    """
    lam = k / s

    def G(t):
        return (np.exp(1j * lam * t) * np.conjugate(state.psi(s + t / 2.0))
                * state.psi(s - t / 2.0))

    psi_s = complex(state.psi(np.array(s)))
    dpsi_s = complex(state.psi_prime(np.array(s)))
    # (G(t) - G(-t))/t -> 2 G'(0) as t -> 0.
    g_prime0 = 1j * (lam * abs(psi_s) ** 2
                     + (np.conjugate(dpsi_s) * psi_s).imag)

    t_max = 2.0 * (abs(s) + state.support_radius())

    def odd_part(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(invalid="ignore", divide="ignore"):
            vals = (G(t) - G(-t)) / t
        return np.where(t < _PV_SMALL_T, 2.0 * g_prime0, vals)

    re = integrate_adaptive(lambda t: np.real(odd_part(t)), (0.0, t_max), cfg)
    im = integrate_adaptive(lambda t: np.imag(odd_part(t)), (0.0, t_max), cfg)
    return complex(re.value, im.value)


def expectation_region_operator(state, k: float,
                                cfg: QuadratureConfig | None = None) -> float:
    """<psi| region operator |psi> for S_k through the configuration
    kernel: a delta part (1/2) int_0^inf |psi|^2 plus a principal-value
    part evaluated in rotated coordinates s = (x+y)/2, t = x - y.

    Restricted to states with closed-form wavefunction derivatives
    (Fock, Coherent, Squeezed).  The result is real within 1e-8; any
    imaginary residue is folded into the comparison tolerance by the
    callers.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if not isinstance(state, (Fock, Coherent, Squeezed)):
        raise TypeError("expectation requires a Fock, Coherent or Squeezed state")
    cfg = cfg or _PV_CFG

    def density(x):
        return np.abs(state.psi(np.asarray(x, dtype=float))) ** 2

    delta_part = 0.5 * integrate_semi_infinite(density, 0.0, cfg).value

    s_min = k / _PV_FREQ_CUTOFF if k > 0 else 0.0
    s_max = abs(s_min) + state.support_radius()

    # Stationary region: the PV integral limits to i pi |psi(s)|^2, so
    # the contribution of s < s_min is -(1/2) int |psi(s)|^2 ds.
    head = 0.0
    if s_min > 0.0:
        head = -0.5 * integrate_adaptive(density, (0.0, s_min), cfg).value

    def outer(svals):
        svals = np.atleast_1d(np.asarray(svals, dtype=float))
        out = np.empty(svals.shape)
        for idx, s in np.ndenumerate(svals):
            inner = _pv_inner(state, k, float(s), cfg)
            # -(1/(2 pi i)) * inner; the real part comes from Im inner.
            out[idx] = -inner.imag / (2.0 * math.pi)
        return out.reshape(np.shape(svals))

    outer_cfg = QuadratureConfig(abs_tol=1e-8, rel_tol=1e-8,
                                 max_subdivisions=cfg.max_subdivisions)
    tail = integrate_adaptive(outer, (s_min, s_max), outer_cfg)
    return delta_part + head + tail.value


# ---------------------------------------------------------------------------
# Containment reports.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ContainmentReport:
    """Per-state qpi containment against certified bounds."""

    entries: tuple
    violations: tuple
    lower: float
    upper: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return not self.violations


def containment_check(states, family, bounds_result,
                      cfg: QuadratureConfig | None = None) -> ContainmentReport:
    """Check every state's qpi against [lower - eps, upper + eps].

    Violations are report content, not faults; the report preserves the
    input state ordering.
    """
    region = region_for_family(family)
    base_tol = bounds_result.certified_tol + 1e-6
    entries = []
    violations = []
    for idx, state in enumerate(states):
        res = qpi(state, region, cfg)
        eps = base_tol + res.error_estimate
        lo_margin = res.value - (bounds_result.lower - eps)
        hi_margin = (bounds_result.upper + eps) - res.value
        ok = lo_margin >= 0.0 and hi_margin >= 0.0
        entry = {
            "index": idx,
            "state": repr(state),
            "qpi": res.value,
            "error_estimate": res.error_estimate,
            "margin_lower": lo_margin,
            "margin_upper": hi_margin,
            "pass": ok,
        }
        entries.append(entry)
        if not ok:
            violations.append(entry)
    return ContainmentReport(
        entries=tuple(entries),
        violations=tuple(violations),
        lower=bounds_result.lower,
        upper=bounds_result.upper,
        tolerance=base_tol,
    )
