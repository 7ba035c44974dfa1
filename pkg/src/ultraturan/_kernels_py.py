"""Pure NumPy fallback for the recurrence kernel (same contract as ``_kernels``)."""
import numpy as np


def ultra_table(lam, kmax, x):
    """Values and first three derivatives of p_0..p_kmax at every point of ``x``.

    Returns four float64 arrays of shape ``(kmax + 1, len(x))``.
    """
    xs = np.ascontiguousarray(x, dtype=np.float64).ravel()
    m = xs.shape[0]
    P = np.empty((kmax + 1, m))
    D1 = np.empty((kmax + 1, m))
    D2 = np.empty((kmax + 1, m))
    D3 = np.empty((kmax + 1, m))
    P[0], D1[0], D2[0], D3[0] = 1.0, 0.0, 0.0, 0.0
    if kmax == 0:
        return P, D1, D2, D3
    P[1], D1[1], D2[1], D3[1] = xs, 1.0, 0.0, 0.0
    for k in range(1, kmax):
        a = 2.0 * (k + lam)
        c = k + 2.0 * lam
        P[k + 1] = (a * xs * P[k] - k * P[k - 1]) / c
        D1[k + 1] = (a * (P[k] + xs * D1[k]) - k * D1[k - 1]) / c
        D2[k + 1] = (a * (2.0 * D1[k] + xs * D2[k]) - k * D2[k - 1]) / c
        D3[k + 1] = (a * (3.0 * D2[k] + xs * D3[k]) - k * D3[k - 1]) / c
    return P, D1, D2, D3
