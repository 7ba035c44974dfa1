# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled three-term recurrence kernel for normalized ultraspherical polynomials."""
import numpy as np


def ultra_table(double lam, Py_ssize_t kmax, x):
    """Values and first three derivatives of p_0..p_kmax at every point of ``x``.

    Returns four float64 arrays of shape ``(kmax + 1, len(x))``.  Degree is
    the outer loop so every row is written contiguously.
    """
    xarr = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef const double[::1] xs = xarr
    cdef Py_ssize_t m = xs.shape[0]
    P_ = np.empty((kmax + 1, m))
    D1_ = np.empty((kmax + 1, m))
    D2_ = np.empty((kmax + 1, m))
    D3_ = np.empty((kmax + 1, m))
    cdef double[:, ::1] P = P_
    cdef double[:, ::1] D1 = D1_
    cdef double[:, ::1] D2 = D2_
    cdef double[:, ::1] D3 = D3_
    cdef Py_ssize_t j, k
    cdef double a, b, c, xv
    for j in range(m):
        P[0, j] = 1.0
        D1[0, j] = 0.0
        D2[0, j] = 0.0
        D3[0, j] = 0.0
    if kmax == 0:
        return P_, D1_, D2_, D3_
    for j in range(m):
        P[1, j] = xs[j]
        D1[1, j] = 1.0
        D2[1, j] = 0.0
        D3[1, j] = 0.0
    for k in range(1, kmax):
        a = 2.0 * (k + lam)
        b = <double>k
        c = k + 2.0 * lam
        for j in range(m):
            xv = xs[j]
            P[k + 1, j] = (a * xv * P[k, j] - b * P[k - 1, j]) / c
            D1[k + 1, j] = (a * (P[k, j] + xv * D1[k, j]) - b * D1[k - 1, j]) / c
            D2[k + 1, j] = (a * (2.0 * D1[k, j] + xv * D2[k, j]) - b * D2[k - 1, j]) / c
            D3[k + 1, j] = (a * (3.0 * D2[k, j] + xv * D3[k, j]) - b * D3[k - 1, j]) / c
    return P_, D1_, D2_, D3_
