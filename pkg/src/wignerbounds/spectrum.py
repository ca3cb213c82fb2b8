"""2x2 matrix representations of the region operators and their spectra.

On each eigenspace of the dilation generator the region operator acts
as a 2x2 Hermitian matrix in the basis of the positive/negative
half-line generalized eigenfunctions; this module assembles those
matrices and returns eigenvalues (the spectrum) and eigenvectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernels import SpectralKernels, eval_kernels, eval_u

__all__ = [
    "HermitianMatrix2",
    "SpectrumPoint",
    "EigenPair",
    "build_A",
    "build_A2",
    "eigen2",
    "spectrum_single",
    "spectrum_double",
    "spectrum_double_wedge",
    "spectrum_wedge",
]


@dataclass(frozen=True)
class HermitianMatrix2:
    """Hermitian 2x2 matrix stored as (a11, a12, a22); a21 = conj(a12)."""

    a11: float
    a12: complex
    a22: float

    def as_array(self) -> np.ndarray:
        return np.array(
            [[self.a11, self.a12], [np.conj(self.a12), self.a22]], dtype=complex
        )


@dataclass(frozen=True)
class SpectrumPoint:
    """Eigenvalue pair of a region-operator matrix at one (omega, k)."""

    omega: float
    k: float
    mu_plus: float
    mu_minus: float

    def __post_init__(self):
        if self.mu_plus < self.mu_minus:
            raise ValueError("mu_plus must be >= mu_minus")


@dataclass(frozen=True)
class EigenPair:
    """Eigenvalue with normalized coefficients on the half-line basis."""

    mu: float
    alpha: complex
    beta: complex


def _safe_offdiag(kern: SpectralKernels) -> complex:
    # a12 = [a + i e^{-pi omega}(1/2 + d)]/2; the second term equals b,
    # which stays bounded where e^{-pi omega}(1/2 + d) would overflow.
    return (kern.a + 1j * kern.b) / 2.0


def build_A(omega: float, k: float, kern: SpectralKernels | None = None) -> HermitianMatrix2:
    """Matrix of the single-curve region operator on the omega eigenspace."""
    kern = kern or eval_kernels(omega, k)
    return HermitianMatrix2(0.5 + kern.d, _safe_offdiag(kern), 0.0)


def build_A2(omega: float, k: float, kern: SpectralKernels | None = None) -> HermitianMatrix2:
    """Matrix of the double-curve region operator (both hyperbola branches)."""
    kern = kern or eval_kernels(omega, k)
    return HermitianMatrix2(0.5 + kern.d, complex(kern.a), 0.5 + kern.d)


def eigen2(m: HermitianMatrix2) -> tuple[EigenPair, EigenPair]:
    """Closed-form eigensolution of a Hermitian 2x2 matrix.

    Returns the pairs sorted by descending eigenvalue, with orthonormal
    eigenvectors whose first nonzero component is real positive.  When
    a12 = 0 the eigenvector (1, 0) goes with the larger diagonal entry.
    """
    half_diff = 0.5 * (m.a11 - m.a22)
    mid = 0.5 * (m.a11 + m.a22)
    root = math.hypot(half_diff, abs(m.a12))
    mu_hi, mu_lo = mid + root, mid - root

    # Work with entries rescaled to O(1) so the eigenvector arithmetic
    # below cannot underflow for subnormal matrices.
    scale = max(abs(m.a11), abs(m.a22), abs(m.a12))
    if scale == 0.0 or abs(m.a12) < 1e-300 * max(scale, 1.0):
        if m.a11 >= m.a22:
            hi = EigenPair(mu_hi, 1.0 + 0j, 0j)
            lo = EigenPair(mu_lo, 0j, 1.0 + 0j)
        else:
            hi = EigenPair(mu_hi, 0j, 1.0 + 0j)
            lo = EigenPair(mu_lo, 1.0 + 0j, 0j)
        return hi, lo

    # Eigenvector for mu: (a12, mu - a11), or (mu - a22, conj(a12));
    # pick the numerically larger representation.
    pairs = []
    for mu in (mu_hi, mu_lo):
        v1 = np.array([m.a12, mu - m.a11], dtype=complex)
        v2 = np.array([mu - m.a22, np.conj(m.a12)], dtype=complex)
        v = v1 if np.max(np.abs(v1)) >= np.max(np.abs(v2)) else v2
        v = v / np.max(np.abs(v))
        v = v / np.linalg.norm(v)
        lead = v[0] if abs(v[0]) > 0 else v[1]
        v = v * (abs(lead) / lead)
        pairs.append(EigenPair(mu, complex(v[0]), complex(v[1])))
    return pairs[0], pairs[1]


def _mu_single(d, a, b):
    h = 0.5 + d
    root = np.sqrt(h * h + b * b + a * a)
    return 0.5 * (h + root), 0.5 * (h - root)


def _mu_double(d, a):
    h = 0.5 + d
    return h + np.abs(a), h - np.abs(a)


def spectrum_single(omega: float, k: float,
                    kern: SpectralKernels | None = None) -> SpectrumPoint:
    """Spectrum of the single-curve family.

    mu_pm = (1/2)[(1/2 + d) pm sqrt((1/2 + d)^2 (1 + e^{-2 pi omega}) + a^2)],
    evaluated through b = e^{-pi omega}(1/2 + d) for overflow safety.
    """
    kern = kern or eval_kernels(omega, k)
    hi, lo = _mu_single(kern.d, kern.a, kern.b)
    return SpectrumPoint(omega, k, float(hi), float(lo))


def spectrum_double(omega: float, k: float,
                    kern: SpectralKernels | None = None) -> SpectrumPoint:
    """Spectrum of the double-curve family: mu = 1/2 + d pm |a|."""
    kern = kern or eval_kernels(omega, k)
    hi, lo = _mu_double(kern.d, kern.a)
    return SpectrumPoint(omega, k, float(hi), float(lo))


def spectrum_double_wedge(omega: float) -> SpectrumPoint:
    """Double-wedge spectrum via k = 0 closed forms (no quadrature):

    mu_pm = (1 + tanh(pi omega))/2 pm |u(omega) - tanh(pi omega)/2|.
    """
    t = math.tanh(math.pi * omega)
    dev = abs(eval_u(omega) - t / 2.0)
    return SpectrumPoint(omega, 0.0, (1.0 + t) / 2.0 + dev, (1.0 + t) / 2.0 - dev)


def spectrum_wedge(omega: float, variant: str = "general") -> SpectrumPoint:
    """Wedge (k = 0 single-curve) spectrum via closed forms.

    variant="general" specializes the general spectral formula and is
    the supported path; its extrema are -0.155939843 / 1.007679970.
    variant="simplified" evaluates an alternative printed closed-form
    specialization, mu_pm = (1/4)(1 + tanh(pi w) pm sqrt((2u - tanh)^2
    + (1 + tanh)^2)), which disagrees with the general formula and does
    not reproduce those extrema; it is retained for comparison only.
    """
    t = math.tanh(math.pi * omega)
    u = eval_u(omega)
    if variant == "general":
        h = (1.0 + t) / 2.0
        b = _wedge_sech(omega) / 2.0
        a = u - t / 2.0
        root = math.sqrt(h * h + b * b + a * a)
        return SpectrumPoint(omega, 0.0, 0.5 * (h + root), 0.5 * (h - root))
    if variant == "simplified":
        root = math.sqrt((2.0 * u - t) ** 2 + (1.0 + t) ** 2)
        return SpectrumPoint(
            omega, 0.0, 0.25 * (1.0 + t + root), 0.25 * (1.0 + t - root)
        )
    raise ValueError(f"unknown variant {variant!r}")


def _wedge_sech(omega: float) -> float:
    return 2.0 * math.exp(-abs(math.pi * omega)) / (1.0 + math.exp(-2.0 * abs(math.pi * omega)))


def _spectrum_grid(d, a, b, kind: str):
    """Vectorized mu_plus/mu_minus arrays from kernel-grid arrays."""
    if kind == "single":
        return _mu_single(d, a, b)
    if kind == "double":
        return _mu_double(d, a)
    raise ValueError(f"unknown spectrum kind {kind!r}")
