"""Zeros of normalized ultraspherical polynomials and bounds on the largest zero."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .gegenbauer import ParameterDomainError, UltraParams, eval_table


class ZeroFinderError(ArithmeticError):
    """Eigen-solver or Newton polish failed to converge."""


class ConsistencyError(ValueError):
    """A ZeroSet was passed with parameters it was not computed for."""


@dataclass(frozen=True)
class ZeroSet:
    params: UltraParams
    zeros: tuple
    residuals: tuple

    @property
    def largest(self) -> float:
        return self.zeros[-1]

    def as_array(self) -> np.ndarray:
        return np.array(self.zeros)

    def require(self, params: UltraParams) -> None:
        if params != self.params:
            raise ConsistencyError(f"zero set was computed for {self.params}, not {params}")


def jacobi_matrix(params: UltraParams):
    """Diagonal and off-diagonal of the symmetric Jacobi matrix of p_0..p_{n-1}.

    From x p_k = a_k p_{k+1} + c_k p_{k-1} with
    a_k = (k + 2 lam) / (2 (k + lam)), c_k = k / (2 (k + lam)) and a_0 = 1,
    the symmetrized off-diagonal is b_k = sqrt(a_k c_{k+1}); the diagonal is 0.
    """
    n, lam = params.n, params.lam
    k = np.arange(n - 1, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        a = (k + 2 * lam) / (2 * (k + lam))
    if n > 1:
        a[0] = 1.0
    c_next = (k + 1) / (2 * (k + 1 + lam))
    return np.zeros(n), np.sqrt(a * c_next)


def _p_dp_extended(lam: float, n: int, x: np.ndarray):
    """p_n and p_n' in extended precision (long double where the platform has it)."""
    ld = np.longdouble
    x = x.astype(ld)
    lam = ld(lam)
    p0, p1 = np.ones_like(x), x.copy()
    d0, d1 = np.zeros_like(x), np.ones_like(x)
    for k in range(1, n):
        a = 2 * (k + lam)
        c = k + 2 * lam
        p0, p1 = p1, (a * x * p1 - k * p0) / c
        d0, d1 = d1, (a * (p0 + x * d1) - k * d0) / c
    return p1, d1


def _newton_polish(params: UltraParams, x: np.ndarray, max_iter: int = 20) -> np.ndarray:
    """Newton on p_n in extended precision, then rounded to binary64."""
    n = params.n
    xl = x.astype(np.longdouble)
    tol = 4 * np.finfo(np.longdouble).eps
    for _ in range(max_iter):
        p, dp = _p_dp_extended(params.lam, n, xl)
        step = p / dp
        xl = xl - step
        if np.all(np.abs(step) <= tol * np.maximum(np.abs(xl), 1e-300)):
            break
    return xl.astype(float)


def residual_scale(dp) -> np.ndarray:
    """Local scale for zero residuals: max(|p_n'(x_k)|, 1)."""
    return np.maximum(np.abs(dp), 1.0)


@lru_cache(maxsize=4096)
def zeros(params: UltraParams) -> ZeroSet:
    """All n zeros: Jacobi-matrix eigenvalues, Newton-polished, then made exactly symmetric."""
    n = params.n
    d, e = jacobi_matrix(params)
    if n == 1:
        x = np.zeros(1)
    else:
        try:
            x = eigh_tridiagonal(d, e, eigvals_only=True)
        except np.linalg.LinAlgError as exc:  # pragma: no cover - not seen for n <= 500
            raise ZeroFinderError(f"tridiagonal eigensolver failed for {params}: {exc}") from exc
        x = _newton_polish(params, np.sort(x))
    x = np.sort(x)
    # exact symmetry: x_k = -x_{n-1-k}, middle zero 0 for odd n
    half = (x - x[::-1]) / 2.0
    x = half
    if n % 2:
        x[n // 2] = 0.0
    if not (np.all(np.diff(x) > 0) and np.all(np.abs(x) < 1.0)):
        raise ZeroFinderError(f"zeros for {params} are not strictly increasing inside (-1, 1): {x}")
    P, _, _, _ = eval_table(params.lam, n, x)
    return ZeroSet(params, tuple(float(v) for v in x), tuple(float(abs(r)) for r in P[n]))


def largest_zero_bound(params: UltraParams) -> float:
    """Upper bound for the square of the largest zero (valid for n >= 2)."""
    n, lam = params.n, params.lam
    if n < 2:
        raise ParameterDomainError("largest-zero bound needs n >= 2 (it divides by n - 1)")
    s = (n + lam) ** 2
    return (s - (lam + 1) ** 2) / (s + 3 * lam + 1.25 + 3 * (lam + 0.5) ** 2 / (n - 1))


def proof_threshold(params: UltraParams) -> float:
    """1 - (2lam+1)(2lam+3) / (4(n+lam)^2 - lam - 3/2): the squared largest zero must stay below it."""
    n, lam = params.n, params.lam
    den = 4 * (n + lam) ** 2 - lam - 1.5
    if den <= 0:
        raise ParameterDomainError(f"threshold denominator 4(n+lam)^2 - lam - 3/2 = {den} is not positive")
    return 1.0 - (2 * lam + 1) * (2 * lam + 3) / den
