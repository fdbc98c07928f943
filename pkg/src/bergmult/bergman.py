"""Norms on the disk: coefficient-formula Bergman norms, growth-space
norms, Dirichlet-type norms, and an independent area-integral oracle.

The coefficient route is the primary one; the polar quadrature exists so
the two can be cross-checked against each other on arbitrary symbols.
"""

import os
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, InvalidInputError, NumericError
from .series import Polynomial, PowerSeries, RationalMap

#: Default coefficient truncation for series-valued computations.
DEFAULT_TRUNC = 2048


def default_trunc():
    """Truncation depth for series expansions (BERGMAN_TRUNC overrides)."""
    raw = os.environ.get("BERGMAN_TRUNC")
    if raw is None:
        return DEFAULT_TRUNC
    try:
        value = int(raw)
    except ValueError as exc:
        raise InvalidInputError(f"BERGMAN_TRUNC must be an integer, got {raw!r}") from exc
    if value < 8:
        raise InvalidInputError("BERGMAN_TRUNC below 8 is not usable")
    return value

_NORM_KINDS = ("lower-bound", "closed-form", "quadrature", "series")

# Poles this far inside the unit circle disqualify a rational symbol;
# the margin absorbs root-finding noise for poles sitting exactly on it.
_POLE_MARGIN = 1e-9


@dataclass(frozen=True)
class SpaceParams:
    """Weight exponent of the measure (alpha+1)/pi (1-|z|^2)^alpha dA."""

    alpha: float

    def __post_init__(self):
        if not np.isfinite(self.alpha) or self.alpha <= -1.0:
            raise DomainError(f"weight exponent must be > -1, got {self.alpha}")


@dataclass(frozen=True)
class NormEstimate:
    """A squared norm together with how it was obtained.

    ``kind`` is one of lower-bound / closed-form / quadrature / series;
    ``residual`` is the method's own tail or convergence indicator.
    """

    value_sq: float
    kind: str
    trunc: int
    residual: float

    def __post_init__(self):
        if self.kind not in _NORM_KINDS:
            raise InvalidInputError(f"unknown norm-estimate kind {self.kind!r}")
        if not self.value_sq >= 0.0:
            raise NumericError(f"squared norm came out negative: {self.value_sq}")


@dataclass(frozen=True)
class MonomialWeights:
    """Squared monomial norms w_n = n! Gamma(alpha+2) / Gamma(n+alpha+2)."""

    alpha: float
    w: np.ndarray


def monomial_weights(alpha, n_max):
    """Weights w_0..w_{n_max} by the multiplicative recurrence.

    w_0 = 1 and w_{n+1} = w_n (n+1)/(n+alpha+2); the running product
    keeps the relative error at the eps*sqrt(n) level, well inside the
    1e-12 contract for any reachable truncation.
    """
    SpaceParams(alpha)
    n_max = int(n_max)
    if n_max < 0:
        raise DomainError("weight index must be nonnegative")
    w = np.empty(n_max + 1)
    w[0] = 1.0
    if n_max > 0:
        n = np.arange(n_max, dtype=float)
        np.cumprod((n + 1.0) / (n + alpha + 2.0), out=w[1:])
    return MonomialWeights(alpha=alpha, w=w)


def monomial_weight(alpha, n):
    """Single squared monomial norm w_n(alpha)."""
    return float(monomial_weights(alpha, n).w[n])


def bergman_norm_sq(phi, alpha):
    """Squared coefficient-formula norm  sum_n w_n(alpha) |a_n|^2.

    Terms are added in ascending n with compensated summation; the
    residual field carries the last retained term as a tail indicator.
    """
    weights = monomial_weights(alpha, phi.trunc).w
    terms = weights * (phi.coeffs.real**2 + phi.coeffs.imag**2)
    total = kernels.kahan_sum(terms)
    return NormEstimate(
        value_sq=float(total),
        kind="series",
        trunc=phi.trunc,
        residual=float(terms[-1]),
    )


def dirichlet_norm_sq(phi, alpha):
    """Squared Dirichlet-type norm  |a_0|^2 + ||phi'||^2_alpha."""
    inner = bergman_norm_sq(phi.derivative(), alpha)
    a0 = phi.coeffs[0]
    return NormEstimate(
        value_sq=float(a0.real**2 + a0.imag**2 + inner.value_sq),
        kind="series",
        trunc=phi.trunc,
        residual=inner.residual,
    )


def _growth_grid():
    k = np.arange(31, dtype=float)
    radii = 1.0 - 0.5**k
    angles = 2.0 * np.pi * np.arange(4096) / 4096.0
    return radii, np.exp(1j * angles)


def growth_norm(g, gamma_exp):
    """Grid lower estimate of  sup |g(z)| (1-|z|^2)^gamma.

    The radial grid refines geometrically toward the boundary
    (r = 1 - 2^-k, k <= 30) with 4096 angles per circle.  Rational
    inputs must have no poles strictly inside the unit circle.
    """
    if not np.isfinite(gamma_exp):
        raise InvalidInputError("growth exponent must be finite")
    if isinstance(g, RationalMap):
        if np.any(g.pole_moduli() < 1.0 - _POLE_MARGIN):
            raise InvalidInputError("rational symbol has a pole inside the disk")
    radii, circle = _growth_grid()
    best = 0.0
    for r in radii:
        vals = np.abs(g.evaluate(r * circle))
        best = max(best, float(vals.max()) * (1.0 - r * r) ** gamma_exp)
    return best


def _radial_rule():
    """Boundary-refined radial panels with a 6-point rule each.

    Panels are dyadic toward r=1 (breakpoints 1 - 2^-j up to depth 42,
    close to the 256-node budget at 258 nodes); deeper splitting would
    round 1 - 2^-j to 1.0 in float64 and break negative exponents.
    """
    gl_x, gl_w = np.polynomial.legendre.leggauss(6)
    edges = np.concatenate(([0.0], 1.0 - 0.5 ** np.arange(1.0, 43.0), [1.0]))
    nodes, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        nodes.append(a + half * (gl_x + 1.0))
        weights.append(half * gl_w)
    return np.concatenate(nodes), np.concatenate(weights)


def disk_quadrature_norm_sq(g, alpha):
    """Direct area integral  (alpha+1)/pi * I[ |g|^2 (1-|z|^2)^alpha ].

    Polar product rule: boundary-refined Gauss-Legendre radially and a
    1024-node trapezoid (periodic, so rectangle) rule in the angle.
    This is the oracle counterpart of :func:`bergman_norm_sq`.
    """
    SpaceParams(alpha)
    n_ang = 1024
    angles = 2.0 * np.pi * np.arange(n_ang) / n_ang
    circle = np.exp(1j * angles)
    r_nodes, r_weights = _radial_rule()
    ring_means = np.empty_like(r_nodes)
    for i, r in enumerate(r_nodes):
        vals = g.evaluate(r * circle)
        vals = np.asarray(vals, dtype=np.complex128)
        sq = vals.real**2 + vals.imag**2
        if not np.all(np.isfinite(sq)):
            raise NumericError("quadrature hit a non-finite sample inside the disk")
        ring_means[i] = kernels.kahan_sum(sq) / n_ang
    radial_terms = 2.0 * (alpha + 1.0) * r_weights * r_nodes * (1.0 - r_nodes**2) ** alpha * ring_means
    total = kernels.kahan_sum(radial_terms)
    return NormEstimate(
        value_sq=float(total),
        kind="quadrature",
        trunc=r_nodes.shape[0] * n_ang,
        residual=float(abs(radial_terms[-1])),
    )


def polynomial_norm_sq(p, alpha):
    """Coefficient-formula norm of a plain polynomial (convenience)."""
    coeffs = p.coeffs if isinstance(p, Polynomial) else np.asarray(p, dtype=np.complex128)
    if coeffs.shape[0] == 0:
        coeffs = np.zeros(1, dtype=np.complex128)
    return bergman_norm_sq(PowerSeries(coeffs), alpha)
