"""Conditional expectation of a Gaussian outside an excluded interval.

The support is the exterior S = (-inf, lower] U [upper, inf) of an open
hole; the library computes E[X | X in S] for X ~ N(mu + shift, sigma^2)
three ways (stable closed form, adaptive-quadrature oracle, seeded Monte
Carlo), certifies the strict inequalities behind the claim that the
centroid grows with the shift, and ships a CLI over all of it.
"""

from .centroid import (
    centroid_exterior,
    shift_comparison,
    slope_certificate,
    standardize,
    std_exterior_centroid,
    std_exterior_centroid_slope,
)
from .errors import (
    DeepTruncationError,
    DomainError,
    IntervalError,
    ParameterError,
    ToleranceNotMetError,
    TruncCentroidError,
)
from .model import (
    CentroidResult,
    ExcludedInterval,
    GaussianParams,
    Method,
    ShiftComparison,
    StandardizedProblem,
)
from .quadrature import (
    QuadratureConfig,
    centroid_quadrature,
    exterior_first_moment,
    exterior_mass,
)
from .sampler import (
    MonteCarloEstimate,
    SampleBatch,
    monte_carlo_centroid,
    sample_exterior,
)
from .special import (
    log_std_cdf,
    log_std_pdf,
    log_std_tail,
    mills_lower_bound_cdf,
    mills_lower_bound_tail,
    mills_ratio,
    std_cdf,
    std_pdf,
    std_tail,
)
from .verification import (
    CheckRecord,
    SweepSpec,
    VerificationReport,
    verify_bounds,
    verify_certificate_positive,
    verify_derivative,
    verify_monotonicity,
    write_reference_figure,
    write_report_csv,
)

__version__ = "0.1.0"

__all__ = [
    "CentroidResult",
    "CheckRecord",
    "DeepTruncationError",
    "DomainError",
    "ExcludedInterval",
    "GaussianParams",
    "IntervalError",
    "Method",
    "MonteCarloEstimate",
    "ParameterError",
    "QuadratureConfig",
    "SampleBatch",
    "ShiftComparison",
    "StandardizedProblem",
    "SweepSpec",
    "ToleranceNotMetError",
    "TruncCentroidError",
    "VerificationReport",
    "centroid_exterior",
    "centroid_quadrature",
    "exterior_first_moment",
    "exterior_mass",
    "log_std_cdf",
    "log_std_pdf",
    "log_std_tail",
    "mills_lower_bound_cdf",
    "mills_lower_bound_tail",
    "mills_ratio",
    "monte_carlo_centroid",
    "sample_exterior",
    "shift_comparison",
    "slope_certificate",
    "standardize",
    "std_cdf",
    "std_exterior_centroid",
    "std_exterior_centroid_slope",
    "std_pdf",
    "std_tail",
    "verify_bounds",
    "verify_certificate_positive",
    "verify_derivative",
    "verify_monotonicity",
    "write_reference_figure",
    "write_report_csv",
]
