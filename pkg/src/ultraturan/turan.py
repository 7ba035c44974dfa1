"""Turán determinant, normalized Turán function and the bound families around them.

Notation: ``delta = p_n^2 - p_{n-1} p_{n+1}``, ``phi = delta / (1 - x^2)``
(evaluated through its polynomial closed form), and

    psi = x p'^2 - p p' - x p p'',     phi' = 2 lam / (n (n + 2 lam)) * psi.

psi' is computed from its quadratic form in (p', p'') divided by
n (n + 2 lam) (1 - x^2) away from x = +-1.  Near the endpoints the
quotient is replaced by the polynomial identity
``psi' = x p' p'' - 2 p p'' - x p p'''``, which the quadratic form was
derived from and which has no removable singularity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .gegenbauer import ParameterDomainError, UltraParams, eval_arrays
from .zeros import ZeroSet

# |1 - x^2| below which psi' switches from the quadratic form to the direct polynomial route
ENDPOINT_SWITCH = 1e-3
# removable-singularity guard for the sum form of phi'
SUMFORM_GUARD = 1e-10


@dataclass(frozen=True)
class TuranEval:
    x: float
    delta: float
    phi: float
    dphi: float
    d2phi: float
    psi: float
    dpsi: float


class BoundFamily(str, Enum):
    BASIC15 = "basic15"
    COROLLARY12 = "corollary12"
    SZASZ = "szasz"
    REFINEMENT = "refinement"


@dataclass(frozen=True)
class BoundReport:
    family: BoundFamily
    x: float
    value: float
    lower: float
    upper: float | None
    margin_low: float
    margin_high: float | None
    branch: str

    def holds(self, tol: float = 0.0) -> bool:
        ok = self.margin_low >= -tol
        if self.margin_high is not None:
            ok = ok and self.margin_high >= -tol
        return ok


def dpsi_quadratic_form(params: UltraParams, x, dp, d2p):
    """n (n + 2 lam) (1 - x^2) psi'(x) written as a quadratic form in p', p''."""
    n, lam = params.n, params.lam
    x2 = x * x
    a = (2 * lam + 1) * (n - 1) * (n + 2 * lam + 1) * x2
    b = -(2 * lam + 1) * x * (1 + 2 * (lam + 1) * x2)
    c = (1 - x2) * (2 + (2 * lam + 1) * x2)
    return a * dp * dp + b * dp * d2p + c * d2p * d2p


def dpsi_direct(x, p, dp, d2p, d3p):
    """psi' = x p' p'' - 2 p p'' - x p p''' (no division, valid at x = +-1)."""
    return x * dp * d2p - 2 * p * d2p - x * p * d3p


def turan_arrays(params: UltraParams, x):
    """Vectorized :func:`turan_eval`; returns a dict of arrays keyed like TuranEval's fields."""
    e = eval_arrays(params, x)
    x = e["x"]
    p, dp, d2p, d3p = e["p"], e["dp"], e["d2p"], e["d3p"]
    nn, lam = params.nn, params.lam
    w = 1.0 - x * x
    delta = p * p - e["p_prev"] * e["p_next"]
    phi = (nn * p * p - 2 * lam * x * p * dp + w * dp * dp) / nn
    psi = x * dp * dp - p * dp - x * p * d2p
    near_end = np.abs(w) < ENDPOINT_SWITCH
    safe_w = np.where(near_end, 1.0, w)
    dpsi = np.where(
        near_end,
        dpsi_direct(x, p, dp, d2p, d3p),
        dpsi_quadratic_form(params, x, dp, d2p) / (nn * safe_w),
    )
    k = 2 * lam / nn
    return {"x": x, "delta": delta, "phi": phi, "dphi": k * psi, "d2phi": k * dpsi, "psi": psi, "dpsi": dpsi}


def turan_eval(params: UltraParams, x: float) -> TuranEval:
    a = turan_arrays(params, [x])
    return TuranEval(**{key: float(v[0]) for key, v in a.items()})


def phi_prime_sumform(params: UltraParams, x, zs: ZeroSet):
    """phi'(x) = 4 lam x / (n (n+2 lam)) * sum_k x_k^2 q_k(x)^2 with q_k = p_n(x) / (x^2 - x_k^2).

    Where ``|x^2 - x_k^2| < SUMFORM_GUARD`` the limit p_n'(x) / (2x) is used for q_k.
    """
    zs.require(params)
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    e = eval_arrays(params, x)
    p, dp = e["p"], e["dp"]
    xk = zs.as_array()
    xk = xk[xk != 0.0]  # zero node contributes x_k^2 q_k^2 = 0
    den = x[:, None] ** 2 - xk[None, :] ** 2
    close = np.abs(den) < SUMFORM_GUARD
    with np.errstate(divide="ignore", invalid="ignore"):
        q = np.where(close, (dp / (2 * x))[:, None], p[:, None] / np.where(close, 1.0, den))
    total = np.sum(xk[None, :] ** 2 * q * q, axis=1)
    out = 4 * params.lam * x / params.nn * total
    return float(out[0]) if scalar else out


def hermite_representation(params: UltraParams, x, zs: ZeroSet):
    """delta(x) = (1-x^2)/(n(n+2 lam)) * sum_k l_k(x)^2 (1 - x_k x) p_n'(x_k)^2.

    The Lagrange basis l_k at the zeros is evaluated in barycentric form.
    """
    zs.require(params)
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    xk = zs.as_array()
    dpk = eval_arrays(params, xk)["dp"]
    diff = xk[:, None] - xk[None, :]
    np.fill_diagonal(diff, 1.0)
    # rescale each factor to keep the products in range for large n
    w = 1.0 / np.prod(diff * 2.0, axis=1)
    w = w / np.max(np.abs(w))
    d = x[:, None] - xk[None, :]
    hit = d == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        t = w[None, :] / d
        ell = t / np.sum(t, axis=1, keepdims=True)
    rows = np.any(hit, axis=1)
    ell[rows] = hit[rows].astype(float)
    s = np.sum(ell**2 * (1 - xk[None, :] * x[:, None]) * dpk[None, :] ** 2, axis=1)
    out = (1 - x * x) / params.nn * s
    return float(out[0]) if scalar else out


def discriminants(params: UltraParams, x):
    """(D, D1): the discriminant of the psi' quadratic form and its reduced factor D1."""
    n, lam = params.n, params.lam
    w = 1.0 - np.asarray(x, dtype=float) ** 2
    den = 2 * lam + 3 - (2 * lam + 1) * w
    if np.any(den == 0):
        raise ParameterDomainError("discriminant denominator 2lam+3-(2lam+1)(1-x^2) vanishes")
    d1 = (2 * lam + 1) * (2 * lam + 3 - (2 * lam + 2) * w) ** 2 / den - 4 * (n - 1) * (n + 2 * lam + 1) * w
    d = (2 * lam + 1) * (1 - w) * den * d1
    if np.ndim(d) == 0:
        return float(d), float(d1)
    return d, d1


def delta_second_derivative(params: UltraParams, x):
    """delta'' from delta = (1 - x^2) phi by the product rule."""
    t = turan_arrays(params, x)
    xs = t["x"]
    out = -2 * t["phi"] - 4 * xs * t["dphi"] + (1 - xs * xs) * t["d2phi"]
    return float(out[0]) if np.ndim(x) == 0 else out


def szasz_upper(params: UltraParams) -> float:
    n, lam = params.n, params.lam
    g = math.lgamma(n) + math.lgamma(2 * lam + 1) - math.lgamma(n + 2 * lam + 1)
    return (n + lam) / (lam + 1) * math.exp(g)


def _check_family_domain(family: BoundFamily, lam: float, x: float):
    if family in (BoundFamily.BASIC15, BoundFamily.COROLLARY12):
        if lam == 0.0:
            raise ParameterDomainError(f"{family.value}: needs -1/2 < lambda < 0 or lambda > 0, got lambda=0")
        if family is BoundFamily.BASIC15 and abs(x) > 1:
            raise ParameterDomainError(f"basic15: estimate is stated for |x| <= 1, got x={x}")
    elif family is BoundFamily.SZASZ:
        if not 0.0 < lam < 1.0:
            raise ParameterDomainError(f"szasz: needs 0 < lambda < 1, got lambda={lam}")
        if abs(x) > 1:
            raise ParameterDomainError(f"szasz: bounds are stated for |x| <= 1, got x={x}")
    elif family is BoundFamily.REFINEMENT:
        if not -0.5 < lam <= 0.5:
            raise ParameterDomainError(f"refinement: needs -1/2 < lambda <= 1/2, got lambda={lam}")
        if abs(x) > 1:
            raise ParameterDomainError(f"refinement: stated for |x| <= 1, got x={x}")


def bound_arrays(params: UltraParams, x, family):
    """Vectorized bound evaluation: returns ``(value, lower, upper_or_None, branch)``.

    Bounds are the expressions exactly as displayed for each family; no
    reordering is done for |x| > 1 (see :func:`corollary_envelope`).
    """
    family = BoundFamily(family)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    lam = params.lam
    for xv in (x.min(), x.max()):
        _check_family_domain(family, lam, float(xv))
    e = eval_arrays(params, x)
    delta = e["p"] ** 2 - e["p_prev"] * e["p_next"]
    w = 1 - x * x
    branch = "lambda<0" if lam < 0 else "lambda>0"
    if family in (BoundFamily.BASIC15, BoundFamily.COROLLARY12):
        d0 = float(turan_arrays(params, [0.0])["delta"][0])
        flat = d0 * w
        if family is BoundFamily.BASIC15:
            other = w / (2 * lam + 1)
        else:
            ax = np.abs(x)
            other = ((1 - ax) * d0 + ax / (2 * lam + 1)) * w
        lower, upper = (other, flat) if lam < 0 else (flat, other)
        return delta, lower, upper, branch
    if family is BoundFamily.SZASZ:
        n = params.n
        lower = lam * (1 - e["p"] ** 2) / ((n + lam - 1) * (n + 2 * lam))
        return delta, lower, np.full_like(x, szasz_upper(params)), "0<lambda<1"
    value = np.abs(x) * e["p"] ** 2 - e["p_prev"] * e["p_next"]
    return value, np.zeros_like(x), None, "-1/2<lambda<=1/2"


def bound_report(params: UltraParams, x: float, family) -> BoundReport:
    value, lower, upper, branch = bound_arrays(params, [x], family)
    v, lo = float(value[0]), float(lower[0])
    hi = None if upper is None else float(upper[0])
    return BoundReport(
        family=BoundFamily(family),
        x=float(x),
        value=v,
        lower=lo,
        upper=hi,
        margin_low=v - lo,
        margin_high=None if hi is None else hi - v,
        branch=branch,
    )


def corollary_envelope(params: UltraParams, x):
    """Two-sided envelope ``(low, high)`` of delta that convexity/concavity of phi actually gives.

    On |x| <= 1 this is the corollary estimate as displayed.  For |x| > 1
    the factor (1 - x^2) is negative: both the tangent bound phi(0) and the
    extended chord through (0, phi(0)), (1, phi(1)) bound phi from the same
    side, so after multiplying only the chord side survives (an upper bound
    of delta for lambda > 0, a lower bound for lambda < 0).  The missing side
    is returned as -inf / +inf.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    _, lower, upper, _ = bound_arrays(params, x, BoundFamily.COROLLARY12)
    outside = np.abs(x) > 1
    if params.lam > 0:
        lower = np.where(outside, -np.inf, lower)
    else:
        upper = np.where(outside, np.inf, upper)
    return lower, upper
