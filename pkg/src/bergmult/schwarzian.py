"""Pre-Schwarzian and Schwarzian derivatives, boundary critical points,
and the structural second-order Laurent coefficient at such points.

Rational maps are handled by exact quotient-rule arithmetic (with
root-matching reduction); general analytic maps via truncated series.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .series import (
    Polynomial,
    RationalMap,
    rational_derivative,
    rational_reduce,
    roots,
    series_divide,
)


@dataclass(frozen=True)
class CriticalSet:
    """Critical points found on (a tolerance band around) the unit circle."""

    points: tuple
    tolerance: float


def _wronskian_parts(r_map):
    """Denominator Q and Wronskian W = P'Q - PQ' of the reduced map P/Q.

    Both derivatives of P/Q live over powers of Q with W on top
    (f' = W/Q^2), so every quantity below is assembled from these two
    low-degree polynomials instead of from chained quotient rules whose
    unreduced numerators quickly outgrow the root finder.
    """
    reduced = rational_reduce(r_map)
    p, q = reduced.num, reduced.den
    w = (p.derivative() * q - p * q.derivative()).snapped()
    return q, w


def pre_schwarzian(r_map):
    """f''/f' of a non-constant rational map, reduced.

    With f = P/Q and W = P'Q - PQ', this is the logarithmic derivative
    of f' = W/Q^2, namely W'/W - 2Q'/Q = (W'Q - 2WQ')/(WQ).
    """
    q, w = _wronskian_parts(r_map)
    if w.is_zero():
        raise InvalidInputError("pre-Schwarzian of a constant map is undefined")
    num = (w.derivative() * q - 2.0 * (w * q.derivative())).snapped()
    return rational_reduce(RationalMap(num, w * q))


def schwarzian_rational(r_map):
    """Schwarzian derivative N' - N^2/2 with N = f''/f', reduced.

    Exact on rational maps: Moebius transformations come out as the
    identically zero map, not merely a small one.

    Expanding N = W'/W - 2Q'/Q (W the Wronskian of the reduced P/Q)
    turns N' - N^2/2 into

        [W''WQ - (3/2)W'^2 Q + 2WW'Q' - 2W^2 Q''] / (W^2 Q),

    and the Schwarzian is regular at simple poles of the map, so Q
    divides that numerator exactly; the division is performed
    structurally (long division, checked remainder) rather than by
    root matching, leaving only low-degree reductions.
    """
    q, w = _wronskian_parts(r_map)
    if w.is_zero():
        raise InvalidInputError("Schwarzian of a constant map is undefined")
    w1 = w.derivative()
    q1 = q.derivative()
    num = (
        (w1.derivative() * w - 1.5 * (w1 * w1)) * q
        + 2.0 * (w * w1) * q1
        - 2.0 * (w * w) * q1.derivative()
    ).snapped()
    if num.is_zero():
        return RationalMap([0.0], [1.0])
    if q.degree >= 1:
        quo, rem = _poly_divmod(num, q)
        if rem <= 1e-10 * np.abs(num.coeffs).max():
            return rational_reduce(RationalMap(quo.snapped(), w * w))
    # Q has a multiple root (a genuine pole of the Schwarzian), or the
    # division failed to certify: fall back to the undivided form.
    return rational_reduce(RationalMap(num, w * w * q))


def _poly_divmod(num, div):
    """Quotient and max-modulus remainder of polynomial division.

    Least-squares deconvolution rather than synthetic division: the
    remainder then reflects the true distance of ``num`` from an exact
    multiple of ``div``, where sequential long division would amplify
    roundoff through a small leading divisor coefficient.
    """
    m = num.degree - div.degree
    if m < 0:
        return Polynomial([]), float(np.abs(num.coeffs).max())
    # Synthetic division first: on exactly representable inputs (integer
    # coefficients) it produces the exact quotient, which least squares
    # would blur by an ulp or two.
    quo_syn, rem_syn = np.polydiv(num.coeffs[::-1], div.coeffs[::-1])
    rem_syn_max = float(np.abs(rem_syn).max()) if rem_syn.shape[0] else 0.0
    if rem_syn_max <= 1e-12 * np.abs(num.coeffs).max():
        return Polynomial(np.asarray(quo_syn, dtype=np.complex128)[::-1]), rem_syn_max
    mat = np.zeros((num.degree + 1, m + 1), dtype=np.complex128)
    for j in range(m + 1):
        mat[j : j + div.coeffs.shape[0], j] = div.coeffs
    quo, *_ = np.linalg.lstsq(mat, num.coeffs, rcond=None)
    rem = num.coeffs - mat @ quo
    return Polynomial(quo), float(np.abs(rem).max())


def schwarzian_series(f_prime):
    """Schwarzian from the series of f': division, then N' - N^2/2.

    The result carries truncation (input truncation - 2); needs a
    nonvanishing constant term (f locally injective at 0).
    """
    if f_prime.coeffs[0] == 0:
        raise InvalidInputError("series Schwarzian needs f'(0) != 0")
    if f_prime.trunc < 2:
        raise InvalidInputError("series Schwarzian needs truncation >= 2")
    n_series = series_divide(f_prime.derivative(), f_prime)
    return n_series.derivative() - 0.5 * (n_series * n_series)


def critical_points_on_circle(r_map, tol=1e-8):
    """Roots of the reduced numerator of R' lying on the unit circle.

    ``tol`` bounds ||root| - 1|; the default matches the residual level
    of the root finder on the degrees that occur here.
    """
    d1 = rational_derivative(r_map)
    if d1.is_zero():
        raise InvalidInputError("critical points of a constant map are undefined")
    num = d1.num
    if num.degree < 1:
        return CriticalSet(points=(), tolerance=tol)
    candidates = roots(num)
    on_circle = [complex(z) for z in candidates if abs(abs(z) - 1.0) <= tol]
    return CriticalSet(points=tuple(on_circle), tolerance=tol)


def laurent_leading(s_map, z0):
    """Second-order Laurent coefficient  lim (z-z0)^2 S(z)  at a pole.

    Richardson extrapolation of (z-z0)^2 S(z) along the ray
    z = z0 (1+h), h in {1e-2, 1e-3, 1e-4}; accurate to about 1e-6 for
    poles of order <= 2.  Diverging samples (pole order >= 3) and maps
    without poles are rejected.
    """
    if s_map.num.is_zero():
        raise InvalidInputError("map is identically zero: no poles to expand at")
    z0 = complex(z0)
    if z0 == 0:
        raise InvalidInputError("expansion point 0 is not reachable along z0(1+h)")
    h_values = (1e-2, 1e-3, 1e-4)
    samples = []
    for h in h_values:
        z = z0 * (1.0 + h)
        samples.append((z - z0) ** 2 * s_map.evaluate(z))
    v0, v1, v2 = samples
    if abs(v1) > 3.0 * abs(v0) + 1.0 and abs(v2) > 3.0 * abs(v1) + 1.0:
        raise InvalidInputError("samples diverge along the ray: pole order exceeds 2")
    # One step removes the O(h) error (ratio 10 between levels), the
    # second removes O(h^2).
    w01 = (10.0 * v1 - v0) / 9.0
    w12 = (10.0 * v2 - v1) / 9.0
    w = (100.0 * w12 - w01) / 99.0
    if abs(w - w12) > 1e-2 * (1.0 + abs(w)):
        raise InvalidInputError("extrapolation failed to settle: pole order exceeds 2")
    return complex(w)
