"""Norms of coefficient multipliers between weighted Bergman spaces.

The package computes closed-form and numerically certified lower-bound
norms for multiplication operators acting between weighted Bergman
spaces on the unit disk, together with the surrounding machinery:
Schwarzian derivatives of rational maps, a Laplace-transform isometry
onto a half-plane space, sharp weighted Hardy constants, and
integral-means spectra.

Numerical kernels run on a compiled backend when the extension built,
with a pure-Python fallback selected automatically at import time (or
forced via ``BERGMULT_PURE=1``).
"""

from .bergman import (
    MonomialWeights,
    NormEstimate,
    SpaceParams,
    bergman_norm_sq,
    default_trunc,
    dirichlet_norm_sq,
    disk_quadrature_norm_sq,
    growth_norm,
    monomial_weight,
    monomial_weights,
    polynomial_norm_sq,
)
from .errors import DomainError, InvalidInputError, NumericError
from .halfplane import (
    DensityFn,
    FractionalKernel,
    density_norm_sq,
    fractional_integral,
    halfplane_norm_sq,
    hardy_check,
    hardy_constant,
    isometry_residual,
    laplace_of_density,
    power_exp_density,
)
from .kernels import BACKEND
from .multiplier import (
    MultiplierSpec,
    OperatorMatrix,
    RadialProbe,
    claim_boundedness_probe,
    compression_norm_sq,
    dilate_symbol,
    g0_norm_sq,
    koebe_norm_sq,
    operator_matrix,
    preset_symbol,
    rotate_symbol,
    test_family_rayleigh,
    volterra_i_norm_sq,
    volterra_j_norm_sq,
)
from .schwarzian import (
    CriticalSet,
    critical_points_on_circle,
    laurent_leading,
    pre_schwarzian,
    schwarzian_rational,
    schwarzian_series,
)
from .series import (
    Polynomial,
    PowerSeries,
    RationalMap,
    parse_carrier,
    parse_complex,
    polynomial_from_roots,
    rational_derivative,
    rational_reduce,
    rational_to_series,
    series_divide,
    series_multiply,
)
from .spectrum import SpectrumFit, integral_mean, spectrum_slope
from .specfun import GammaValue, binomial_coeffs, gamma, log_gamma

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CriticalSet",
    "DensityFn",
    "DomainError",
    "FractionalKernel",
    "GammaValue",
    "InvalidInputError",
    "MonomialWeights",
    "MultiplierSpec",
    "NormEstimate",
    "NumericError",
    "OperatorMatrix",
    "Polynomial",
    "PowerSeries",
    "RadialProbe",
    "RationalMap",
    "SpaceParams",
    "SpectrumFit",
    "bergman_norm_sq",
    "binomial_coeffs",
    "claim_boundedness_probe",
    "compression_norm_sq",
    "critical_points_on_circle",
    "default_trunc",
    "density_norm_sq",
    "dilate_symbol",
    "dirichlet_norm_sq",
    "disk_quadrature_norm_sq",
    "fractional_integral",
    "g0_norm_sq",
    "gamma",
    "growth_norm",
    "halfplane_norm_sq",
    "hardy_check",
    "hardy_constant",
    "integral_mean",
    "isometry_residual",
    "koebe_norm_sq",
    "laplace_of_density",
    "laurent_leading",
    "log_gamma",
    "monomial_weight",
    "monomial_weights",
    "operator_matrix",
    "parse_carrier",
    "parse_complex",
    "polynomial_from_roots",
    "polynomial_norm_sq",
    "power_exp_density",
    "pre_schwarzian",
    "preset_symbol",
    "rational_derivative",
    "rational_reduce",
    "rational_to_series",
    "rotate_symbol",
    "schwarzian_rational",
    "schwarzian_series",
    "series_divide",
    "series_multiply",
    "spectrum_slope",
    "test_family_rayleigh",
    "volterra_i_norm_sq",
    "volterra_j_norm_sq",
]
