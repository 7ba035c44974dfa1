"""The two polynomial inequalities behind the convexity proof, as exact certificates.

ratio inequality
    With t = 1 - x^2 in [0, 1],

        [2lam+3 - (2lam+2)t]^2 / (2lam+3 - (2lam+1)t) <= 2lam+3 - (2lam+5/2)t.

    After multiplying out the (positive) denominator the difference is
    ((2lam+3)/2) t (1-t).

bound comparison
    For real n >= 2 and lam > -1/2 the largest-zero bound lies strictly
    below the proof threshold:

        ((n+lam)^2-(lam+1)^2) / ((n+lam)^2+3lam+5/4+3(lam+1/2)^2/(n-1))
            < 1 - (2lam+1)(2lam+3) / (4(n+lam)^2-lam-3/2).

    With n = m + 2 and lam = s - 1/2 both denominators are cleared; each
    is certified positive separately and the numerator of the difference
    is certified positive on m >= 0, s > 0.
"""
from __future__ import annotations

from fractions import Fraction

from .certificate import Certificate, certify_nonnegative, interval
from .mpoly import MPoly

HALF = Fraction(1, 2)

RATIO_SOURCE = (
    "(2*lam + 3 - (2*lam + 5/2)*t)*(2*lam + 3 - (2*lam + 1)*t) - (2*lam + 3 - (2*lam + 2)*t)**2"
)
RATIO_DENOMINATOR_SOURCE = "2*lam + 3 - (2*lam + 1)*t"

# threshold: 1 - (2lam+1)(2lam+3)/E9 = N9/E9 ; zero bound: N10/E10 after multiplying by (n-1)
E9_SOURCE = "4*(n + lam)**2 - lam - 3/2"
E10_SOURCE = "((n + lam)**2 + 3*lam + 5/4)*(n - 1) + 3*(lam + 1/2)**2"
N9_SOURCE = f"({E9_SOURCE}) - (2*lam + 1)*(2*lam + 3)"
N10_SOURCE = "((n + lam)**2 - (lam + 1)**2)*(n - 1)"
COMPARISON_SOURCE = f"({N9_SOURCE})*({E10_SOURCE}) - ({N10_SOURCE})*({E9_SOURCE})"

SUBST = {"n": "m + 2", "lam": "s - 1/2"}


def ratio_inequality_difference() -> MPoly:
    """(2lam+3-(2lam+5/2)t)(2lam+3-(2lam+1)t) - (2lam+3-(2lam+2)t)^2 in variables (lam, t)."""
    lam, t = MPoly.gens("lam", "t")
    a = 2 * lam + 3
    return (a - (2 * lam + HALF * 5) * t) * (a - (2 * lam + 1) * t) - (a - (2 * lam + 2) * t) ** 2


def _to_st(p: MPoly) -> MPoly:
    s = MPoly.var(("s", "t"), "s")
    return p.compose({"lam": s - HALF}, ("s", "t"))


def certify_ratio_inequality(max_depth: int = 30, difference: MPoly | None = None, name: str = "ratio_inequality") -> Certificate:
    """Certify the ratio inequality on lam in [-1/2, oo), t in [0, 1].

    ``difference`` replaces the target polynomial (in lam, t); it is used
    to exercise refutation on perturbed targets.
    """
    region = {"s": interval(0), "t": interval(0, 1)}
    lam, t = MPoly.gens("lam", "t")
    denom = certify_nonnegative(
        _to_st(2 * lam + 3 - (2 * lam + 1) * t),
        region,
        strict=True,
        target="ratio_denominator",
        statement="2lam+3-(2lam+1)t > 0 for lam >= -1/2, 0 <= t <= 1",
        max_depth=max_depth,
        source=RATIO_DENOMINATOR_SOURCE,
        substitution={"lam": "s - 1/2"},
    )
    perturbed = difference is not None
    diff = ratio_inequality_difference() if difference is None else difference
    return certify_nonnegative(
        _to_st(diff),
        region,
        strict=False,
        target=name,
        statement="cleared ratio inequality >= 0 for lam >= -1/2 (lam = s - 1/2), t = 1 - x^2 in [0, 1]",
        max_depth=max_depth,
        source="" if perturbed else RATIO_SOURCE,
        substitution={"lam": "s - 1/2"},
        side_conditions=[denom],
    )


def comparison_polynomials():
    """(E9, E10, numerator) in variables (m, s) with n = m + 2, lam = s - 1/2."""
    m, s = MPoly.gens("m", "s")
    n = m + 2
    lam = s - HALF
    e9 = 4 * (n + lam) ** 2 - lam - Fraction(3, 2)
    e10 = ((n + lam) ** 2 + 3 * lam + Fraction(5, 4)) * (n - 1) + 3 * (lam + HALF) ** 2
    n9 = e9 - (2 * lam + 1) * (2 * lam + 3)
    n10 = ((n + lam) ** 2 - (lam + 1) ** 2) * (n - 1)
    return e9, e10, n9 * e10 - n10 * e9


def comparison_exact(n, lam) -> Fraction:
    """threshold - zero bound, evaluated directly in exact rationals (no clearing)."""
    n, lam = Fraction(n), Fraction(lam)
    threshold = 1 - (2 * lam + 1) * (2 * lam + 3) / (4 * (n + lam) ** 2 - lam - Fraction(3, 2))
    bound = ((n + lam) ** 2 - (lam + 1) ** 2) / (
        (n + lam) ** 2 + 3 * lam + Fraction(5, 4) + 3 * (lam + HALF) ** 2 / (n - 1)
    )
    return threshold - bound


def certify_bound_comparison(max_depth: int = 30, lambda_cap=None) -> Certificate:
    """Certify zero bound < threshold for real n >= 2 and lam in (-1/2, lambda_cap] (unbounded if None)."""
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    hi = None if lambda_cap is None else Fraction(lambda_cap) + HALF
    if hi is not None and hi <= 0:
        raise ValueError("lambda_cap must exceed -1/2")
    region = {"m": interval(0), "s": interval(0, hi, lo_open=True)}
    e9, e10, num = comparison_polynomials()
    lam_text = "lam > -1/2" if hi is None else f"-1/2 < lam <= {lambda_cap}"
    sides = [
        certify_nonnegative(
            e9, region, strict=True, target="threshold_denominator",
            statement=f"4(n+lam)^2-lam-3/2 > 0 for n >= 2, {lam_text}",
            max_depth=max_depth, source=E9_SOURCE, substitution=SUBST,
        ),
        certify_nonnegative(
            e10, region, strict=True, target="zero_bound_denominator",
            statement=f"((n+lam)^2+3lam+5/4)(n-1)+3(lam+1/2)^2 > 0 for n >= 2, {lam_text}",
            max_depth=max_depth, source=E10_SOURCE, substitution=SUBST,
        ),
    ]
    return certify_nonnegative(
        num,
        region,
        strict=True,
        target="bound_comparison",
        statement=f"cleared (threshold - zero bound) > 0 for real n >= 2 (n = m + 2), {lam_text} (lam = s - 1/2)",
        max_depth=max_depth,
        source=COMPARISON_SOURCE,
        substitution=SUBST,
        side_conditions=sides,
    )
