# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: compensated sums, Cauchy products, series long
division and the dense triangular matvec pair used by the power iteration.

All loops are strictly sequential so results do not depend on thread
count or BLAS build.
"""

import numpy as np


def kahan_sum(double[::1] terms):
    """Compensated (Kahan) sum of a float64 array in the given order."""
    cdef Py_ssize_t i, n = terms.shape[0]
    cdef double total = 0.0, comp = 0.0, y, s
    for i in range(n):
        y = terms[i] - comp
        s = total + y
        comp = (s - total) - y
        total = s
    return total


def cauchy_product(double complex[::1] a, double complex[::1] b, Py_ssize_t n_out):
    """First ``n_out + 1`` coefficients of the Cauchy product of a and b."""
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    out_arr = np.zeros(n_out + 1, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t k, j, j0, j1
    cdef double complex acc
    for k in range(n_out + 1):
        j0 = k - nb + 1
        if j0 < 0:
            j0 = 0
        j1 = k if k < na - 1 else na - 1
        acc = 0
        for j in range(j0, j1 + 1):
            acc = acc + a[j] * b[k - j]
        out[k] = acc
    return out_arr


def long_division(double complex[::1] num, double complex[::1] den, Py_ssize_t n_out):
    """Power-series coefficients of num/den up to degree n_out (den[0] != 0)."""
    cdef Py_ssize_t nn = num.shape[0], m = den.shape[0] - 1
    q_arr = np.zeros(n_out + 1, dtype=np.complex128)
    cdef double complex[::1] q = q_arr
    cdef double complex d0 = den[0], acc
    cdef Py_ssize_t k, j, j1
    for k in range(n_out + 1):
        acc = num[k] if k < nn else 0
        j1 = m if m < k else k
        for j in range(1, j1 + 1):
            acc = acc - den[j] * q[k - j]
        q[k] = acc / d0
    return q_arr


def matvec(double complex[:, ::1] a, double complex[::1] v):
    """a @ v with a fixed sequential reduction order."""
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    out_arr = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double complex acc
    for i in range(m):
        acc = 0
        for j in range(n):
            acc = acc + a[i, j] * v[j]
        out[i] = acc
    return out_arr


def rmatvec(double complex[:, ::1] a, double complex[::1] w):
    """Conjugate-transpose product a^H @ w, sequential over rows."""
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    out_arr = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double complex wi
    for i in range(m):
        wi = w[i]
        for j in range(n):
            out[j] = out[j] + a[i, j].conjugate() * wi
    return out_arr
