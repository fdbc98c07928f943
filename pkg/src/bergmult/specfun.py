"""Real Gamma / log-Gamma and generalized binomial coefficients.

Everything downstream (monomial weights, closed-form norms, Hardy
constants) reduces to these two primitives, so they are implemented
without external dependencies: a Lanczos approximation for Gamma and a
multiplicative recurrence for the coefficient sequences.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# Lanczos approximation, g = 7, 9 coefficients.  Gives close to full
# double precision on the positive axis.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# exp() overflows past this; gamma.value is reported as inf beyond it.
_MAX_EXP_ARG = 709.78


@dataclass(frozen=True)
class GammaValue:
    """Gamma(x) together with its logarithm.

    ``value == exp(log_value)`` whenever the value is representable in
    float64; for larger arguments ``value`` is ``inf`` and ``log_value``
    remains meaningful.
    """

    value: float
    log_value: float


def gamma(x):
    """Gamma function on the positive real axis.

    Parameters
    ----------
    x : float
        Argument, must be positive and finite.

    Returns
    -------
    GammaValue

    Raises
    ------
    DomainError
        If ``x`` is not a positive finite real.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"gamma requires a positive finite argument, got {x!r}")
    z = x - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i in range(1, 9):
        acc += _LANCZOS_COEFFS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    log_value = 0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(t) - t + math.log(acc)
    value = math.exp(log_value) if log_value < _MAX_EXP_ARG else math.inf
    return GammaValue(value=value, log_value=log_value)


def log_gamma(x):
    """Shorthand for ``gamma(x).log_value``."""
    return gamma(x).log_value


def binomial_coeffs(gamma_exp, n_max):
    """Generalized binomial coefficients of (1-z)^{-gamma_exp}.

    Returns the array c_n = Gamma(n + g) / (n! Gamma(g)) for
    n = 0..n_max, computed by the recurrence c_0 = 1,
    c_n = c_{n-1} (n - 1 + g) / n.  The recurrence never forms a Gamma
    quotient, so there is no overflow at large n.

    Parameters
    ----------
    gamma_exp : float
        The exponent g, must be positive.
    n_max : int
        Largest index, must be >= 0.

    Returns
    -------
    numpy.ndarray of float64, shape (n_max + 1,)
    """
    g = float(gamma_exp)
    if not math.isfinite(g) or g <= 0.0:
        raise DomainError(f"binomial_coeffs requires gamma_exp > 0, got {g!r}")
    n_max = int(n_max)
    if n_max < 0:
        raise DomainError(f"binomial_coeffs requires n_max >= 0, got {n_max}")
    if n_max == 0:
        return np.ones(1)
    n = np.arange(1, n_max + 1, dtype=np.float64)
    out = np.empty(n_max + 1)
    out[0] = 1.0
    np.cumprod((n - 1.0 + g) / n, out=out[1:])
    return out
