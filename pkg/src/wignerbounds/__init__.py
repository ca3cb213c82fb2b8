"""Best-possible bounds on Wigner quasiprobability integrals over
hyperbolic phase-plane regions, infinite wedges, and double wedges,
through an exactly solvable 2x2 spectral problem, with an independent
phase-space oracle for validation.
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("wignerbounds")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.0.0"

from .bounds import (
    BoundaryExtremumError,
    BoundsResult,
    DoubleWedge,
    HyperbolaDouble,
    HyperbolaSingle,
    OptimizerConfig,
    SweepRow,
    Wedge,
    optimize_bounds,
    sweep,
    wedge_equivalence,
)
from .kernels import (
    ResidueResult,
    SpectralKernels,
    eval_a,
    eval_b,
    eval_d,
    eval_kernels,
    eval_kernels_direct,
    eval_u,
    residue_R,
)
from .oracle import (
    Coherent,
    ContainmentReport,
    Fock,
    FockSuperposition,
    Metaplectic,
    PhasePoint,
    QpiResult,
    Squeezed,
    apply_metaplectic,
    apply_metaplectic_state,
    containment_check,
    expectation_region_operator,
    qpi,
    region_for_family,
    wigner_eval,
    wigner_from_wavefunction,
)
from .quadrature import (
    ContourSpec,
    IntegralResult,
    QuadratureConfig,
    QuadratureError,
    integrate_adaptive,
    integrate_closed_circle,
    integrate_region_2d,
    integrate_semi_infinite,
)
from .spectrum import (
    EigenPair,
    HermitianMatrix2,
    SpectrumPoint,
    build_A,
    build_A2,
    eigen2,
    spectrum_double,
    spectrum_double_wedge,
    spectrum_single,
    spectrum_wedge,
)

__all__ = [
    "__version__",
    # quadrature
    "QuadratureConfig", "ContourSpec", "IntegralResult", "QuadratureError",
    "integrate_adaptive", "integrate_semi_infinite",
    "integrate_closed_circle", "integrate_region_2d",
    # kernels
    "SpectralKernels", "ResidueResult", "eval_u", "eval_d", "eval_a",
    "eval_b", "eval_kernels", "eval_kernels_direct", "residue_R",
    # spectrum
    "HermitianMatrix2", "SpectrumPoint", "EigenPair", "build_A", "build_A2",
    "eigen2", "spectrum_single", "spectrum_double", "spectrum_double_wedge",
    "spectrum_wedge",
    # bounds
    "Wedge", "DoubleWedge", "HyperbolaSingle", "HyperbolaDouble",
    "OptimizerConfig", "BoundsResult", "SweepRow", "BoundaryExtremumError",
    "optimize_bounds", "sweep", "wedge_equivalence",
    # oracle
    "PhasePoint", "Metaplectic", "Fock", "Coherent", "Squeezed",
    "FockSuperposition", "QpiResult", "ContainmentReport", "wigner_eval",
    "wigner_from_wavefunction", "qpi", "expectation_region_operator",
    "apply_metaplectic", "apply_metaplectic_state", "containment_check",
    "region_for_family",
]
