"""chronopath: interference of quantum virtual paths under T violation.

A numerical laboratory for states built as superpositions of zigzag
translation sequences in time, driven by a pair of Hamiltonians related
by time reversal with a c-number commutator.  Provides exact log-domain
evaluation of the interference weights, closed-form and numeric peak
analysis, a finite-dimensional operator realization with brute-force
oracles, uncertainty-relation checks, SI-unit scale estimates, and a
CLI that reproduces the reference figures as CSV + SVG with manifests.
"""

__version__ = "0.1.0"

from .errors import (
    ChronopathError,
    DimTooSmall,
    FlatProfile,
    InvalidFraction,
    LogOverflow,
    SingularDenominator,
    ThetaOutOfRange,
)
from .logcomplex import LogComplex
from .params import ModelParams, SpatialParams
from .amplitude import (
    PathAmplitudeProfile,
    approximant_log_profile,
    binomial_log_profile,
    cosine_limit_residual,
    gaussian_envelope,
    interference,
    interference_profile,
    normalize_magnitudes,
    peak_approximant,
    peak_positions,
    perturb_theta,
    theta_on_pole,
)
from .peaks import PeakAnalysis, analytic_peaks, numeric_peaks, peak_spacing_bound
from .operators import (
    OperatorRealization,
    PathExpansionResult,
    bch_reorder_check,
    bch_reorder_phase,
    build_realization,
    coarse_grain_hamiltonian,
    coarse_grain_state,
    coherent_state,
    fidelity,
    gaussian_packet,
    hermitian_evolution,
    parity_translation_check,
    path_sum_closed,
    path_sum_compare,
    path_sum_direct,
    phenomenological_commutator,
    project_onto_time_translates,
    quadrature_wavepacket,
    schrodinger_residual,
    smoothed_grid_state,
)
from .uncertainty import (
    MESON_LAMBDA_SCALE,
    PLANCK_TIME,
    ScalesInput,
    ScalesReport,
    UncertaintyReport,
    physical_scales,
    solve_min_uncertainty_theta,
    truncated_gaussian_moments,
    truncated_gaussian_variance,
    variance_bounds,
)

__all__ = [
    "ChronopathError",
    "DimTooSmall",
    "FlatProfile",
    "InvalidFraction",
    "LogOverflow",
    "SingularDenominator",
    "ThetaOutOfRange",
    "LogComplex",
    "ModelParams",
    "SpatialParams",
    "PathAmplitudeProfile",
    "approximant_log_profile",
    "binomial_log_profile",
    "cosine_limit_residual",
    "gaussian_envelope",
    "interference",
    "interference_profile",
    "normalize_magnitudes",
    "peak_approximant",
    "peak_positions",
    "perturb_theta",
    "theta_on_pole",
    "PeakAnalysis",
    "analytic_peaks",
    "numeric_peaks",
    "peak_spacing_bound",
    "OperatorRealization",
    "PathExpansionResult",
    "bch_reorder_check",
    "bch_reorder_phase",
    "build_realization",
    "coarse_grain_hamiltonian",
    "coarse_grain_state",
    "coherent_state",
    "fidelity",
    "gaussian_packet",
    "hermitian_evolution",
    "parity_translation_check",
    "path_sum_closed",
    "path_sum_compare",
    "path_sum_direct",
    "phenomenological_commutator",
    "project_onto_time_translates",
    "quadrature_wavepacket",
    "schrodinger_residual",
    "smoothed_grid_state",
    "MESON_LAMBDA_SCALE",
    "PLANCK_TIME",
    "ScalesInput",
    "ScalesReport",
    "UncertaintyReport",
    "physical_scales",
    "solve_min_uncertainty_theta",
    "truncated_gaussian_moments",
    "truncated_gaussian_variance",
    "variance_bounds",
    "__version__",
]
