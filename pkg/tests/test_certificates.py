import time
from dataclasses import replace
from fractions import Fraction

import pytest

from ultraturan.exact import (
    INCONCLUSIVE,
    PROVED,
    REFUTED,
    MPoly,
    certify_bound_comparison,
    certify_nonnegative,
    certify_ratio_inequality,
    check_certificate,
    dumps,
    interval,
    loads,
    ratio_inequality_difference,
)
from ultraturan.exact.textformat import FormatError


def test_ratio_inequality_single_leaf():
    c = certify_ratio_inequality()
    assert c.verdict == PROVED and c.leaf_count() == 1
    leaf = next(c.tree.leaves())
    assert all(v >= 0 for v in leaf.coeffs.values())
    assert check_certificate(c).ok


def test_perturbed_ratio_is_refuted():
    _, t = MPoly.gens("lam", "t")
    c = certify_ratio_inequality(difference=ratio_inequality_difference() - t, name="perturbed")
    assert c.verdict == REFUTED
    assert c.polynomial.evaluate(c.witness) < 0
    assert check_certificate(c).ok


def test_bound_comparison_unbounded_and_capped():
    t0 = time.perf_counter()
    c = certify_bound_comparison()
    assert c.proved and time.perf_counter() - t0 < 60
    assert c.region["s"].hi is None and c.factor == {"s": 1}
    assert check_certificate(c).ok
    capped = certify_bound_comparison(lambda_cap=10)
    assert capped.proved and capped.region["s"].hi == Fraction(21, 2)
    assert check_certificate(capped).ok


def test_bound_comparison_bad_arguments():
    with pytest.raises(ValueError):
        certify_bound_comparison(max_depth=0)
    with pytest.raises(ValueError):
        certify_bound_comparison(lambda_cap=-1)


def test_subdivision_needed():
    # (x - 1/2)^2 + 1/100 has a negative Bernstein coefficient on [0, 1] but is positive
    x = MPoly.var(("x",), "x")
    p = (x - Fraction(1, 2)) ** 2 + Fraction(1, 100)
    c = certify_nonnegative(p, {"x": interval(0, 1)}, strict=True)
    assert c.proved and c.leaf_count() > 1
    assert check_certificate(c).ok


def test_half_line_split():
    x = MPoly.var(("x",), "x")
    p = (x - 3) ** 2 + 1  # monomial coefficients at x >= 0 are mixed in sign
    c = certify_nonnegative(p, {"x": interval(0)}, strict=True)
    assert c.proved and c.leaf_count() > 1
    assert check_certificate(c).ok


def test_refutation_and_inconclusive():
    x = MPoly.var(("x",), "x")
    c = certify_nonnegative(x - Fraction(1, 3), {"x": interval(0, 1)})
    assert c.verdict == REFUTED and c.witness["x"] < Fraction(1, 3)
    # a double root: never closes by subdivision, never refuted
    c = certify_nonnegative((x - Fraction(1, 3)) ** 2, {"x": interval(0, 1)}, strict=True, max_depth=4)
    assert c.verdict in (INCONCLUSIVE, REFUTED)
    if c.verdict == INCONCLUSIVE:
        assert c.uncovered()


def test_strict_zero_polynomial():
    z = MPoly(("x",))
    c = certify_nonnegative(z, {"x": interval(0, Fraction(1, 2), lo_open=True)}, strict=True)
    assert c.verdict == REFUTED and interval(0, Fraction(1, 2), lo_open=True).contains(c.witness["x"])
    assert certify_nonnegative(z, {"x": interval(0, 1)}).proved


def test_text_round_trip_is_exact():
    for c in (certify_ratio_inequality(), certify_bound_comparison(), certify_bound_comparison(lambda_cap=10)):
        text = dumps(c)
        again = loads(text)
        assert dumps(again) == text
        assert again.polynomial == c.polynomial and again.verdict == c.verdict
        assert check_certificate(again).ok


def test_malformed_text():
    with pytest.raises(FormatError):
        loads("not a certificate")
    text = dumps(certify_ratio_inequality())
    with pytest.raises(FormatError):
        loads(text.replace("end certificate", "end nothing", 1))


def _tamper_first_coeff(text: str, new: str) -> str:
    lines = text.splitlines()
    for i, ln in enumerate(lines):
        if ln.strip().startswith("coeff "):
            head = ln.rsplit(" ", 1)[0]
            lines[i] = f"{head} {new}"
            break
    return "\n".join(lines) + "\n"


def test_checker_rejects_tampered_coefficients():
    text = dumps(certify_bound_comparison())
    bad = loads(_tamper_first_coeff(text, "12345/7"))
    res = check_certificate(bad)
    assert not res.ok and res.problems


def test_checker_rejects_wrong_source():
    c = certify_ratio_inequality()
    bad = replace(c, source=c.source + " + t")
    assert not check_certificate(bad).ok


def test_checker_rejects_incomplete_cover():
    x = MPoly.var(("x",), "x")
    p = (x - Fraction(1, 2)) ** 2 + Fraction(1, 100)
    c = certify_nonnegative(p, {"x": interval(0, 1)}, strict=True)
    assert c.leaf_count() > 1
    c.tree.children = [c.tree.children[0], c.tree.children[0]]
    assert not check_certificate(c).ok


def test_checker_rejects_bogus_witness():
    x = MPoly.var(("x",), "x")
    c = certify_nonnegative(x - Fraction(1, 3), {"x": interval(0, 1)})
    c.witness = {"x": Fraction(1)}
    assert not check_certificate(c).ok
