"""Normalized ultraspherical (Gegenbauer) polynomials.

``p_n(x) = P_n^{(lam)}(x) / P_n^{(lam)}(1)`` is evaluated through the
normalized three-term recurrence

    (k + 2 lam) p_{k+1} = 2 (k + lam) x p_k - k p_{k-1},   p_0 = 1, p_1 = x,

which stays regular at ``lam = 0`` (Chebyshev polynomials of the first
kind).  Derivatives are carried along by differentiating the recurrence,
so a single pass yields p, p', p'' and p''' for every degree up to n + 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernels import ultra_table


class ParameterDomainError(ValueError):
    """Raised when (lambda, n) or a point lies outside an operation's domain."""


@dataclass(frozen=True)
class UltraParams:
    lam: float
    n: int

    def __post_init__(self):
        lam = float(self.lam)
        if not math.isfinite(lam) or lam <= -0.5:
            raise ParameterDomainError(f"lambda must exceed -1/2, got {self.lam!r}")
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise ParameterDomainError(f"degree n must be an integer >= 1, got {self.n!r}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "n", int(self.n))

    @property
    def nn(self) -> float:
        """n(n + 2 lam), the eigenvalue in the differential equation."""
        return self.n * (self.n + 2.0 * self.lam)


@dataclass(frozen=True)
class PolyEval:
    """p_{n-1}, p_n, p_{n+1} and derivatives of p_n at one point.

    ``d3p`` is not needed by the Turán formulas themselves; it is kept so
    that the third-order differential equation can be checked.
    """

    x: float
    p_prev: float
    p: float
    p_next: float
    dp: float
    d2p: float
    d3p: float


def eval_table(lam: float, kmax: int, x):
    """Arrays ``(P, dP, d2P, d3P)`` of shape ``(kmax + 1, len(x))`` for degrees 0..kmax."""
    return ultra_table(float(lam), int(kmax), np.atleast_1d(np.asarray(x, dtype=float)))


def eval_arrays(params: UltraParams, x):
    """Vectorized :func:`eval_poly`; returns a dict of arrays keyed like PolyEval's fields."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    P, D1, D2, D3 = eval_table(params.lam, params.n + 1, x)
    n = params.n
    return {
        "x": x,
        "p_prev": P[n - 1],
        "p": P[n],
        "p_next": P[n + 1],
        "dp": D1[n],
        "d2p": D2[n],
        "d3p": D3[n],
    }


def eval_poly(params: UltraParams, x: float) -> PolyEval:
    a = eval_arrays(params, [x])
    return PolyEval(**{k: float(v[0]) for k, v in a.items()})


def neighbors_from_center(params: UltraParams, x, p, dp):
    """p_{n+1} and p_{n-1} rebuilt from p_n and p_n' alone.

    Returns ``(p_next, p_prev)``.
    """
    n, lam = params.n, params.lam
    w = 1.0 - np.asarray(x) * x
    p_next = x * p - w * dp / (n + 2.0 * lam)
    p_prev = x * p + w * dp / n
    if np.ndim(p_next) == 0:
        return float(p_next), float(p_prev)
    return p_next, p_prev


def ode_terms(params: UltraParams, e):
    """Individual terms of the second- and third-order differential equations.

    ``e`` may be a :class:`PolyEval` or the dict from :func:`eval_arrays`.
    """
    get = (lambda k: e[k]) if isinstance(e, dict) else (lambda k: getattr(e, k))
    x, p, dp, d2p, d3p = get("x"), get("p"), get("dp"), get("d2p"), get("d3p")
    n, lam = params.n, params.lam
    w = 1.0 - x * x
    t2 = (w * d2p, -(2 * lam + 1) * x * dp, params.nn * p)
    t3 = (w * d3p, -(2 * lam + 3) * x * d2p, (n - 1) * (n + 2 * lam + 1) * dp)
    return t2, t3


def ode_residuals(params: UltraParams, e, relative: bool = False):
    """Residuals ``(r2, r3)`` of the two differential equations satisfied by p_n.

    r2 = (1-x^2) p'' - (2 lam+1) x p' + n(n+2 lam) p
    r3 = (1-x^2) p''' - (2 lam+3) x p'' + (n-1)(n+2 lam+1) p'

    The third derivative comes from the differentiated recurrence, not
    from finite differences.  With ``relative=True`` each residual is
    divided by the magnitude of its largest term (or 1 when all vanish).
    """
    t2, t3 = ode_terms(params, e)
    r2 = t2[0] + t2[1] + t2[2]
    r3 = t3[0] + t3[1] + t3[2]
    if relative:
        s2 = np.maximum.reduce([np.abs(t) for t in t2])
        s3 = np.maximum.reduce([np.abs(t) for t in t3])
        r2 = r2 / np.where(s2 > 0, s2, 1.0)
        r3 = r3 / np.where(s3 > 0, s3, 1.0)
    if np.ndim(r2) == 0:
        return float(r2), float(r3)
    return r2, r3


def unnormalized_at_one(params: UltraParams) -> float:
    """P_n^{(lam)}(1) = binom(n + 2 lam - 1, n) for the classical normalization.

    Undefined at lam = 0, where the classical polynomials vanish identically.
    """
    if params.lam == 0.0:
        raise ParameterDomainError("P_n^(0)(1) is undefined: the classical lambda=0 family degenerates")
    n, lam = params.n, params.lam
    # binom(n+2lam-1, n) = Gamma(n+2lam) / (Gamma(n+1) Gamma(2lam)); sign from Gamma(2lam) for lam<0
    sign = math.copysign(1.0, math.gamma(2 * lam)) if lam < 0 else 1.0
    return sign * math.exp(math.lgamma(n + 2 * lam) - math.lgamma(n + 1) - math.lgamma(2 * lam))
