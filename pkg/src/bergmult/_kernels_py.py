"""Pure numpy fallback for the compiled kernels.

Matches the semantics of ``_kernels_cy`` but not its exact rounding: the
matrix-vector products and the direct Cauchy product below reduce with
numpy's pairwise summation instead of a strictly sequential loop.  Both
variants are deterministic run-to-run and independent of BLAS thread
counts, which is what the reports require.
"""

import numpy as np


def kahan_sum(terms):
    """Compensated (Kahan) sum of a float64 array in the given order."""
    total = 0.0
    comp = 0.0
    for t in terms:
        y = float(t) - comp
        s = total + y
        comp = (s - total) - y
        total = s
    return total


def cauchy_product(a, b, n_out):
    """First ``n_out + 1`` coefficients of the Cauchy product of a and b."""
    full = np.convolve(a, b)
    out = np.zeros(n_out + 1, dtype=np.complex128)
    m = min(n_out + 1, full.shape[0])
    out[:m] = full[:m]
    return out


def long_division(num, den, n_out):
    """Power-series coefficients of num/den up to degree n_out (den[0] != 0)."""
    q = np.zeros(n_out + 1, dtype=np.complex128)
    d0 = den[0]
    m = den.shape[0] - 1
    for k in range(n_out + 1):
        acc = num[k] if k < num.shape[0] else 0.0
        j0 = max(1, k - n_out)  # always 1 here; kept for clarity of the band
        j1 = min(m, k)
        if j1 >= j0:
            acc = acc - np.dot(den[j0 : j1 + 1], q[k - j1 : k - j0 + 1][::-1])
        q[k] = acc / d0
    return q


def matvec(a, v):
    """a @ v without BLAS (pairwise reduction, thread-count independent)."""
    return (a * v[np.newaxis, :]).sum(axis=1)


def rmatvec(a, w):
    """Conjugate-transpose product a^H @ w, same reduction policy."""
    return (a.conj() * w[:, np.newaxis]).sum(axis=0)
