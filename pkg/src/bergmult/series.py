"""Polynomial, rational-map and truncated power-series arithmetic.

Rational maps are the carriers for conformal maps R, their derivatives,
pre-Schwarzians and Schwarzians; power series carry symbol expansions
and test functions.  Everything is plain float64/complex128: the maps in
scope have low degree and well-separated root clusters, which is what
the approximate-GCD reduction below relies on.
"""

import re

import numpy as np

from . import kernels
from .errors import DomainError, InvalidInputError, NumericError

# Relative threshold for chopping trailing junk coefficients produced by
# float cancellation in rational arithmetic.
_CHOP_REL = 1e-12

# Root-matching tolerance of the approximate GCD (per contract).
_MATCH_TOL = 1e-9

# Clusters tighter than this are reported as a multiple root.
_CLUSTER_TOL = 1e-7


def _as_coeff_array(coeffs):
    arr = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
    if arr.ndim != 1:
        raise InvalidInputError("coefficients must be one-dimensional")
    return arr


def _trim_exact_zeros(arr):
    n = arr.shape[0]
    while n > 0 and arr[n - 1] == 0:
        n -= 1
    return arr[:n]


class Polynomial:
    """Complex polynomial with ascending coefficients (index = degree).

    The zero polynomial has an empty coefficient array and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = _trim_exact_zeros(_as_coeff_array(coeffs))

    @property
    def degree(self):
        return self.coeffs.shape[0] - 1

    def is_zero(self):
        return self.coeffs.shape[0] == 0

    def evaluate(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            out = out * z + c
        return out if out.shape else complex(out)

    __call__ = evaluate

    def derivative(self):
        if self.coeffs.shape[0] <= 1:
            return Polynomial([])
        n = np.arange(1, self.coeffs.shape[0])
        return Polynomial(self.coeffs[1:] * n)

    def chopped(self, rel=_CHOP_REL):
        """Drop trailing coefficients below ``rel`` times the largest one."""
        if self.is_zero():
            return self
        scale = np.abs(self.coeffs).max()
        keep = self.coeffs.shape[0]
        while keep > 0 and abs(self.coeffs[keep - 1]) <= rel * scale:
            keep -= 1
        return Polynomial(self.coeffs[:keep])

    def snapped(self, rel=_CHOP_REL):
        """Zero coefficients (and real/imag parts) below ``rel`` times the
        largest coefficient, so rounding residue of exact cancellations
        becomes exact zeros."""
        if self.is_zero():
            return self
        scale = np.abs(self.coeffs).max()
        re = self.coeffs.real.copy()
        im = self.coeffs.imag.copy()
        re[np.abs(re) <= rel * scale] = 0.0
        im[np.abs(im) <= rel * scale] = 0.0
        return Polynomial(re + 1j * im)

    def __add__(self, other):
        other = other if isinstance(other, Polynomial) else Polynomial([other])
        n = max(self.coeffs.shape[0], other.coeffs.shape[0])
        a = np.zeros(n, dtype=np.complex128)
        a[: self.coeffs.shape[0]] = self.coeffs
        a[: other.coeffs.shape[0]] += other.coeffs
        return Polynomial(a)

    def __sub__(self, other):
        other = other if isinstance(other, Polynomial) else Polynomial([other])
        return self + Polynomial(-other.coeffs)

    def __neg__(self):
        return Polynomial(-self.coeffs)

    def __mul__(self, other):
        if np.isscalar(other):
            return Polynomial(self.coeffs * other)
        if self.is_zero() or other.is_zero():
            return Polynomial([])
        return Polynomial(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __repr__(self):
        return f"Polynomial(degree={self.degree})"


def polynomial_from_roots(root_list, leading=1.0):
    """Monic product of (z - r) over ``root_list``, scaled by ``leading``."""
    coeffs = np.array([complex(leading)], dtype=np.complex128)
    for r in root_list:
        coeffs = np.convolve(coeffs, np.array([-complex(r), 1.0]))
    return Polynomial(coeffs)


class RationalMap:
    """Quotient of two polynomials.

    The representation is normalized so the denominator's lowest-order
    nonzero coefficient is 1.  ``reduced()`` additionally cancels common
    roots (approximate GCD by root matching).

    Evaluation runs through the root factorization of each side when one
    certifies: Horner on expanded coefficients loses up to all relative
    accuracy right where it matters most (near a high-multiplicity root
    approached from the boundary), while the product of (z - root)
    factors stays accurate to a few ulps there.
    """

    __slots__ = ("num", "den", "_num_factored", "_den_factored")

    def __init__(self, num, den):
        num = num if isinstance(num, Polynomial) else Polynomial(num)
        den = den if isinstance(den, Polynomial) else Polynomial(den)
        if den.is_zero():
            raise InvalidInputError("rational map with identically zero denominator")
        for k in range(den.coeffs.shape[0]):
            if den.coeffs[k] != 0:
                pivot = den.coeffs[k]
                break
        self.num = Polynomial(num.coeffs / pivot)
        self.den = Polynomial(den.coeffs / pivot)
        self._num_factored = None
        self._den_factored = None

    @staticmethod
    def _factorization(poly):
        if poly.degree < 2:
            return False
        try:
            multiset = _polished_multiset(poly)
        except NumericError:
            return False
        root_list = np.array(
            [r for r, m in multiset for _ in range(m)], dtype=np.complex128
        )
        return poly.coeffs[-1], root_list

    @staticmethod
    def _eval_side(poly, factored, z):
        if factored:
            lead, root_list = factored
            out = np.full(np.shape(z), lead, dtype=np.complex128)
            for root in root_list:
                out = out * (z - root)
            return out if out.shape else complex(out)
        return poly.evaluate(z)

    def evaluate(self, z):
        z = np.asarray(z, dtype=np.complex128)
        if self._num_factored is None:
            self._num_factored = self._factorization(self.num)
        if self._den_factored is None:
            self._den_factored = self._factorization(self.den)
        num_val = self._eval_side(self.num, self._num_factored, z)
        den_val = self._eval_side(self.den, self._den_factored, z)
        return num_val / den_val

    __call__ = evaluate

    def is_zero(self):
        return self.num.is_zero()

    def derivative(self):
        return rational_derivative(self)

    def reduced(self):
        return rational_reduce(self)

    def _combine(self, other, sign):
        other = other if isinstance(other, RationalMap) else RationalMap([other], [1.0])
        t1 = self.num * other.den
        t2 = other.num * self.den
        num = t1 + sign * t2
        # Chop relative to the pre-cancellation scale: coefficients that are
        # pure rounding residue of an exact cancellation must become exact
        # zeros (a Moebius Schwarzian is the zero map, not a tiny one).
        scale = 0.0
        if not t1.is_zero():
            scale = float(np.abs(t1.coeffs).max())
        if not t2.is_zero():
            scale = max(scale, float(np.abs(t2.coeffs).max()))
        if not num.is_zero() and scale > 0.0:
            coeffs = num.coeffs.copy()
            coeffs[np.abs(coeffs) <= 1e-13 * scale] = 0.0
            num = Polynomial(coeffs)
        return rational_reduce(RationalMap(num, self.den * other.den))

    def __add__(self, other):
        return self._combine(other, 1.0)

    def __sub__(self, other):
        return self._combine(other, -1.0)

    def __mul__(self, other):
        if np.isscalar(other):
            return RationalMap(self.num * other, self.den)
        return rational_reduce(RationalMap(self.num * other.num, self.den * other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if np.isscalar(other):
            return RationalMap(self.num * (1.0 / other), self.den)
        if other.num.is_zero():
            raise InvalidInputError("division by the zero rational map")
        return rational_reduce(RationalMap(self.num * other.den, self.den * other.num))

    def pole_moduli(self):
        """Moduli of the denominator roots of the reduced map."""
        red = rational_reduce(self)
        if red.den.degree < 1:
            return np.empty(0)
        return np.abs(roots(red.den))

    def __repr__(self):
        return f"RationalMap(num_degree={self.num.degree}, den_degree={self.den.degree})"


class PowerSeries:
    """Truncated Taylor coefficients c_0..c_N of an analytic function.

    ``trunc`` is N; operations may shrink the truncation but never
    silently extend it (``extended`` pads explicitly, asserting the new
    tail coefficients are exactly zero).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = _as_coeff_array(coeffs)
        if self.coeffs.shape[0] == 0:
            raise InvalidInputError("power series needs at least the constant term")

    @property
    def trunc(self):
        return self.coeffs.shape[0] - 1

    def extended(self, trunc):
        """Zero-pad up to ``trunc``; valid when the tail is known to vanish."""
        if trunc < self.trunc:
            return PowerSeries(self.coeffs[: trunc + 1])
        out = np.zeros(trunc + 1, dtype=np.complex128)
        out[: self.coeffs.shape[0]] = self.coeffs
        return PowerSeries(out)

    def derivative(self):
        if self.trunc == 0:
            return PowerSeries([0.0])
        n = np.arange(1, self.coeffs.shape[0])
        return PowerSeries(self.coeffs[1:] * n)

    def evaluate(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            out = out * z + c
        return out if out.shape else complex(out)

    __call__ = evaluate

    def __add__(self, other):
        n = min(self.trunc, other.trunc) + 1
        return PowerSeries(self.coeffs[:n] + other.coeffs[:n])

    def __sub__(self, other):
        n = min(self.trunc, other.trunc) + 1
        return PowerSeries(self.coeffs[:n] - other.coeffs[:n])

    def __mul__(self, other):
        if np.isscalar(other):
            return PowerSeries(self.coeffs * other)
        return series_multiply(self, other)

    __rmul__ = __mul__

    def __repr__(self):
        return f"PowerSeries(trunc={self.trunc})"


# Beyond this size a padded FFT convolution is much faster than the
# direct Cauchy kernel and still leaves relative errors far below the
# truncation residuals it feeds into.
_FFT_MIN_SIDE = 64
_FFT_MIN_WORK = 1 << 22


def series_multiply(a, b):
    """Cauchy product of two power series, truncated to min(a.trunc, b.trunc)."""
    n_out = min(a.trunc, b.trunc)
    ca, cb = a.coeffs, b.coeffs
    if min(ca.shape[0], cb.shape[0]) >= _FFT_MIN_SIDE and ca.shape[0] * cb.shape[0] >= _FFT_MIN_WORK:
        size = 1
        while size < ca.shape[0] + cb.shape[0] - 1:
            size <<= 1
        prod = np.fft.ifft(np.fft.fft(ca, size) * np.fft.fft(cb, size))[: n_out + 1]
        return PowerSeries(prod)
    return PowerSeries(kernels.cauchy_product(ca, cb, n_out))


def series_divide(a, b):
    """Coefficients of a/b up to min(a.trunc, b.trunc); needs b(0) != 0."""
    if b.coeffs[0] == 0:
        raise InvalidInputError("series division needs a nonvanishing constant term")
    n_out = min(a.trunc, b.trunc)
    return PowerSeries(kernels.long_division(a.coeffs, b.coeffs, n_out))


def rational_to_series(r_map, n_max):
    """Expand a rational map in a power series around 0 by long division."""
    den = r_map.den.coeffs
    if den[0] == 0:
        raise InvalidInputError("rational map has a pole at the origin")
    num = r_map.num.coeffs if not r_map.num.is_zero() else np.zeros(1, dtype=np.complex128)
    return PowerSeries(kernels.long_division(num, den, int(n_max)))


def rational_derivative(r_map):
    """Derivative of a rational map, reduced."""
    num = r_map.num.derivative() * r_map.den - r_map.num * r_map.den.derivative()
    return rational_reduce(RationalMap(num, r_map.den * r_map.den))


def _durand_kerner(coeffs):
    """Simultaneous-iteration roots of an exact-degree coefficient array."""
    n = coeffs.shape[0] - 1
    scale = np.abs(coeffs).max()
    lead = coeffs[-1]
    monic = coeffs / lead
    radius = 1.0 + (np.abs(coeffs[:-1]).max() / abs(lead) if n > 0 else 0.0)
    angles = 2.0 * np.pi * np.arange(n) / n + 0.4
    x = radius * np.exp(1j * angles)
    resid_tol = 1e-9 * (1.0 + scale)
    move_tol = 1e-13 * (1.0 + radius)

    def _poly_at(c, pts):
        out = np.zeros_like(pts)
        for ck in c[::-1]:
            out = out * pts + ck
        return out

    best = np.inf
    for _ in range(500):
        px = _poly_at(monic, x)
        diffs = x[:, None] - x[None, :]
        np.fill_diagonal(diffs, 1.0)
        denom = diffs.prod(axis=1)
        step = px / denom
        x = x - step
        if np.abs(step).max() <= move_tol:
            resid = np.abs(_poly_at(coeffs, x))
            best = min(best, resid.max())
            if resid.max() <= resid_tol:
                return x
    resid = np.abs(_poly_at(coeffs, x))
    best = min(best, float(resid.max()))
    if resid.max() <= resid_tol:
        return x
    raise NumericError(
        f"root iteration did not converge (best residual {best:.3e}, tolerance {resid_tol:.3e})",
        best=best,
    )


def _cluster(points, tol):
    """Greedy transitive clustering of complex points within ``tol``."""
    m = points.shape[0]
    labels = -np.ones(m, dtype=int)
    clusters = []
    for i in range(m):
        if labels[i] >= 0:
            continue
        member = [i]
        labels[i] = len(clusters)
        frontier = [i]
        while frontier:
            j = frontier.pop()
            near = np.nonzero((labels < 0) & (np.abs(points - points[j]) <= tol))[0]
            for k in near:
                labels[k] = labels[i]
                member.append(k)
                frontier.append(k)
        clusters.append(np.array(member))
    return clusters


def roots(p):
    """Roots of a polynomial as a multiset (multiple roots repeated).

    Durand-Kerner iteration from deterministic initial guesses; multiple
    roots are reported at their polished center when the multiplicity
    structure certifies, else clusters tighter than 1e-7 are snapped to
    their centroid.  The result is sorted by (real, imag).
    """
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    if p.degree < 1:
        raise InvalidInputError("roots requires degree >= 1")
    try:
        multiset = _polished_multiset(p)
        out = np.array(
            [r for r, m in multiset for _ in range(m)], dtype=np.complex128
        )
    except NumericError as exc:
        if not isinstance(exc.best, np.ndarray):
            raise
        raw = exc.best
        out = raw.copy()
        for members in _cluster(raw, _CLUSTER_TOL):
            if members.shape[0] > 1:
                out[members] = raw[members].mean()
    order = np.lexsort((out.imag, out.real))
    return out[order]


def _newton_polish(coeffs, z, passes=10):
    """A few Newton steps on the polynomial given by ``coeffs``."""
    dcoe = coeffs[1:] * np.arange(1, coeffs.shape[0])
    for _ in range(passes):
        pz = complex(Polynomial(coeffs).evaluate(z))
        dz = complex(Polynomial(dcoe).evaluate(z)) if dcoe.shape[0] else 0.0
        if dz == 0:
            break
        step = pz / dz
        z = z - step
        if abs(step) <= 1e-16 * (1.0 + abs(z)):
            break
    return z


def _poly_eval_scale(coeffs, z):
    return np.abs(coeffs).max() * (1.0 + abs(z)) ** (coeffs.shape[0] - 1)


def _polish_cluster(p, members, raw):
    """Polished (center, multiplicity) for one cluster of raw iterates.

    The centroid cancels the first-order scatter of an m-fold root, and
    Newton on the (m-1)-th derivative — where that root is simple —
    finishes to machine accuracy.
    """
    m = members.shape[0]
    center = raw[members].mean()
    if m == 1:
        return _newton_polish(p.coeffs, center), 1
    deriv = p.coeffs
    for _ in range(m - 1):
        deriv = deriv[1:] * np.arange(1, deriv.shape[0])
    return _newton_polish(deriv, center), m


def _polished_multiset(p):
    """Roots of ``p`` with multiplicities, certified against ``p`` itself.

    The raw iterates of an m-fold root scatter in a disk of radius about
    (eps)^(1/m), so no single clustering tolerance fits every
    multiplicity.  Instead candidate groupings are tried coarse to fine;
    one is accepted only when every polished center passes the residual
    test AND the polynomial rebuilt from the multiset reproduces the
    input coefficients (which rejects both false merges of distinct
    roots and false splits of a genuinely multiple root, whose residuals
    alone are deceptively flat).
    """
    raw = _durand_kerner(p.coeffs)
    spread = 1.0 + np.abs(raw).max()
    coeff_scale = np.abs(p.coeffs).max()
    for level in (4e-2, 1e-2, 1e-3, 1e-5, 1e-7):
        result = []
        certified = True
        for members in _cluster(raw, level * spread):
            polished, m = _polish_cluster(p, members, raw)
            if abs(complex(p.evaluate(polished))) > 1e-9 * _poly_eval_scale(
                p.coeffs, polished
            ):
                certified = False
                break
            result.append((polished, m))
        if not certified:
            continue
        rebuilt = polynomial_from_roots(
            [r for r, m in result for _ in range(m)], leading=p.coeffs[-1]
        )
        if rebuilt.coeffs.shape == p.coeffs.shape and np.all(
            np.abs(rebuilt.coeffs - p.coeffs) <= 1e-6 * coeff_scale
        ):
            return result
    raise NumericError(
        "could not certify a root multiset (multiplicity structure unresolved)",
        best=raw,
    )


def rational_reduce(r_map):
    """Cancel common roots of numerator and denominator.

    Matching tolerance is 1e-9 (relative to 1 + |root|).  When nothing
    cancels — including when no certified root multiset exists, since
    cancelling on uncertain roots could change the map's values — the
    map is returned unchanged apart from normalization; otherwise both
    polynomials are rebuilt from their polished roots, so repeated
    reductions do not accumulate error.
    """
    num = r_map.num.chopped()
    den = r_map.den.chopped()
    if den.is_zero():
        raise InvalidInputError("reduction of a degenerate (~0/~0) rational map")
    if num.is_zero():
        return RationalMap([0.0], [1.0])
    if num.degree < 1 or den.degree < 1:
        return RationalMap(num, den)

    try:
        num_roots = _polished_multiset(num)
        den_roots = _polished_multiset(den)
    except NumericError:
        return RationalMap(num, den)
    cancelled = False
    new_den = []
    for b, mb in den_roots:
        for i, (a, ma) in enumerate(num_roots):
            if ma > 0 and abs(a - b) <= _MATCH_TOL * (1.0 + abs(a)):
                k = min(ma, mb)
                num_roots[i] = (a, ma - k)
                mb -= k
                cancelled = True
                break
        if mb > 0:
            new_den.append((b, mb))
    if not cancelled:
        return RationalMap(num, den)

    lead_ratio = num.coeffs[-1] / den.coeffs[-1]
    num_list = [r for r, m in num_roots for _ in range(m)]
    den_list = [r for r, m in new_den for _ in range(m)]
    return RationalMap(
        polynomial_from_roots(num_list, leading=lead_ratio).snapped(),
        polynomial_from_roots(den_list, leading=1.0).snapped(),
    )


# ---------------------------------------------------------------------------
# plain-text grammar:  "poly: c0 c1 ...", "rat: c0 c1 / d0 d1",
# "series: c0 c1 ...", complex written as a+bi
# ---------------------------------------------------------------------------

_COMPLEX_RE = re.compile(r"^[0-9eEij+.\-]+$")


def parse_complex(token):
    """Parse ``a+bi`` (also plain reals, ``2i``, ``-i``) into a complex."""
    token = token.strip()
    if not token or not _COMPLEX_RE.match(token):
        raise InvalidInputError(f"cannot parse complex number from {token!r}")
    try:
        return complex(token.replace("i", "j"))
    except ValueError as exc:
        raise InvalidInputError(f"cannot parse complex number from {token!r}") from exc


def _parse_coeff_list(body):
    tokens = body.split()
    if not tokens:
        raise InvalidInputError("empty coefficient list")
    return np.array([parse_complex(t) for t in tokens], dtype=np.complex128)


def parse_carrier(text):
    """Parse a polynomial / rational / series literal.

    Grammar: ``poly: c0 c1 ...``, ``rat: c0 c1 ... / d0 d1 ...``,
    ``series: c0 c1 ...`` with coefficients lowest-first and complex
    entries written as ``a+bi``.
    """
    text = text.strip()
    head, sep, body = text.partition(":")
    if not sep:
        raise InvalidInputError(f"carrier literal needs a 'poly:'/'rat:'/'series:' prefix: {text!r}")
    head = head.strip().lower()
    if head == "poly":
        return Polynomial(_parse_coeff_list(body))
    if head == "series":
        return PowerSeries(_parse_coeff_list(body))
    if head == "rat":
        num_body, slash, den_body = body.partition("/")
        if not slash:
            raise InvalidInputError("rational literal needs 'num / den'")
        return RationalMap(_parse_coeff_list(num_body), _parse_coeff_list(den_body))
    raise InvalidInputError(f"unknown carrier kind {head!r}")
