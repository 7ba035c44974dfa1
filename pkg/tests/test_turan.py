import math

import numpy as np
import pytest

from ultraturan import (
    BoundFamily,
    ParameterDomainError,
    UltraParams,
    bound_report,
    corollary_envelope,
    discriminants,
    hermite_representation,
    phi_prime_sumform,
    turan_arrays,
    turan_eval,
    zeros,
)
from ultraturan.gegenbauer import eval_arrays
from ultraturan.turan import delta_second_derivative, dpsi_direct, dpsi_quadratic_form, szasz_upper


def test_legendre_n2_spot():
    e = turan_eval(UltraParams(0.5, 2), 0.5)
    assert e.delta == pytest.approx(0.234375, abs=1e-15)
    assert e.phi == pytest.approx(0.3125, abs=1e-15)
    assert e.dphi == pytest.approx(0.25, abs=1e-15)
    assert e.d2phi == pytest.approx(0.5, abs=1e-15)


def test_legendre_n2_closed_form():
    # delta_2 = (1 - x^4) / 4 and phi = (1 + x^2) / 4, valid off [-1, 1] too
    x = np.linspace(-3, 3, 61)
    t = turan_arrays(UltraParams(0.5, 2), x)
    np.testing.assert_allclose(t["delta"], (1 - x**4) / 4, atol=1e-13)
    np.testing.assert_allclose(t["phi"], (1 + x**2) / 4, atol=1e-13)


@pytest.mark.parametrize("n", [1, 4, 9])
def test_lambda_zero_is_flat(n):
    t = turan_arrays(UltraParams(0.0, n), np.linspace(-2, 2, 9))
    np.testing.assert_allclose(t["phi"], 1.0, atol=1e-12)
    assert np.all(t["dphi"] == 0) and np.all(t["d2phi"] == 0)


@pytest.mark.parametrize("lam", [-0.3, 0.2, 4.0])
def test_degree_one(lam):
    t = turan_arrays(UltraParams(lam, 1), np.linspace(-2, 2, 9))
    np.testing.assert_allclose(t["phi"], 1 / (2 * lam + 1), rtol=1e-14)
    np.testing.assert_allclose(t["dphi"], 0.0, atol=1e-14)


@pytest.mark.parametrize("lam", [-0.45, 0.3, 2.0])
def test_phi_at_one(lam):
    for n in (2, 7, 30):
        assert turan_eval(UltraParams(lam, n), 1.0).phi == pytest.approx(1 / (2 * lam + 1), rel=1e-12)


def test_phi_zero_equals_delta_zero():
    e = turan_eval(UltraParams(1.3, 6), 0.0)
    assert e.phi == pytest.approx(e.delta, rel=1e-15)


def test_sumform_spot_and_trivial():
    p = UltraParams(0.5, 2)
    zs = zeros(p)
    assert phi_prime_sumform(p, 0.5, zs) == pytest.approx(0.25, abs=1e-15)
    assert phi_prime_sumform(p, 0.0, zs) == 0.0
    p0 = UltraParams(0.0, 5)
    assert phi_prime_sumform(p0, 0.3, zeros(p0)) == 0.0


def test_sumform_at_zeros_and_mismatch():
    p = UltraParams(1.5, 8)
    zs = zeros(p)
    x = np.concatenate([zs.as_array(), [0.7]])
    np.testing.assert_allclose(phi_prime_sumform(p, x, zs), turan_arrays(p, x)["dphi"], rtol=1e-10, atol=1e-14)
    with pytest.raises(ValueError):
        phi_prime_sumform(UltraParams(1.5, 9), 0.2, zs)


def test_discriminants_spot():
    d, d1 = discriminants(UltraParams(0.5, 2), 0.5)
    assert d1 == pytest.approx(-9.55, abs=1e-12)
    assert d == pytest.approx(-11.9375, abs=1e-12)
    assert discriminants(UltraParams(0.5, 2), 0.0)[0] == 0.0


def test_discriminant_factorization():
    for lam in (-0.25, 0.7):
        x = np.linspace(0.05, 0.95, 19)
        d, d1 = discriminants(UltraParams(lam, 4), x)
        # D = (2 lam + 1) x^2 (2 lam + 3 - (2 lam + 1)(1 - x^2)) D1
        den = 2 * lam + 3 - (2 * lam + 1) * (1 - x**2)
        np.testing.assert_allclose(d, (2 * lam + 1) * x**2 * den * d1, rtol=1e-13)
        assert np.all(np.sign(d) == np.sign(d1))


def test_dpsi_routes_agree():
    p = UltraParams(0.8, 12)
    x = np.linspace(-0.99, 0.99, 51)
    e = eval_arrays(p, x)
    quad = dpsi_quadratic_form(p, x, e["dp"], e["d2p"]) / (p.nn * (1 - x**2))
    direct = dpsi_direct(x, e["p"], e["dp"], e["d2p"], e["d3p"])
    np.testing.assert_allclose(quad, direct, rtol=1e-9, atol=1e-9 * np.max(np.abs(direct)))


def test_endpoint_second_derivative_is_finite():
    t = turan_arrays(UltraParams(2.0, 30), [-1.0, 1.0])
    assert np.all(np.isfinite(t["d2phi"])) and np.all(t["d2phi"] > 0)


def test_hermite_examples():
    p = UltraParams(0.5, 2)
    zs = zeros(p)
    assert hermite_representation(p, 0.0, zs) == pytest.approx(0.25, abs=1e-15)
    assert hermite_representation(p, 1.0, zs) == 0.0
    q = UltraParams(1.0, 5)
    x = np.random.default_rng(3).uniform(-1, 1, 20)
    np.testing.assert_allclose(hermite_representation(q, x, zeros(q)), turan_arrays(q, x)["delta"], rtol=1e-9)


def test_corollary_triple():
    r = bound_report(UltraParams(0.5, 2), 0.5, "corollary12")
    assert (r.lower, r.value, r.upper) == pytest.approx((0.1875, 0.234375, 0.28125), abs=1e-12)
    assert r.holds()


def test_basic15_at_zero():
    # the flat side is tight at x = 0; the other side is 1/(2 lam + 1), not delta(0)
    r = bound_report(UltraParams(1.2, 5), 0.0, BoundFamily.BASIC15)
    assert r.lower == r.value
    assert r.upper == pytest.approx(1 / 3.4, abs=1e-15)
    assert r.margin_high > 0.2


def test_corollary_collapses_at_zero():
    r = bound_report(UltraParams(1.2, 5), 0.0, BoundFamily.COROLLARY12)
    assert r.lower == r.value == r.upper


def test_negative_lambda_swaps_sides():
    r = bound_report(UltraParams(-0.25, 4), 0.4, "corollary12")
    assert r.branch == "lambda<0" and r.lower <= r.value <= r.upper


def test_szasz_triple():
    r = bound_report(UltraParams(0.5, 2), 0.0, "szasz")
    assert (r.lower, r.value, r.upper) == pytest.approx((1 / 12, 0.25, 5 / 18), abs=1e-12)
    assert szasz_upper(UltraParams(0.5, 2)) == pytest.approx(5 / 18, abs=1e-15)


@pytest.mark.parametrize("n", [2, 4, 10])
def test_refinement_even_equality(n):
    r = bound_report(UltraParams(0.5, n), 0.0, "refinement")
    assert abs(r.value) < 1e-15 and r.upper is None and r.margin_high is None


@pytest.mark.parametrize(
    "lam,x,family",
    [(0.0, 0.3, "basic15"), (0.0, 0.3, "corollary12"), (0.5, 1.5, "basic15"), (1.5, 0.2, "szasz"),
     (0.5, 1.2, "szasz"), (0.7, 0.2, "refinement"), (0.2, -1.1, "refinement")],
)
def test_bound_domain_errors(lam, x, family):
    with pytest.raises(ParameterDomainError):
        bound_report(UltraParams(lam, 3), x, family)


def test_corollary_literal_fails_outside_unit_interval():
    # the tangent side reverses for |x| > 1; the envelope keeps only the chord side
    p = UltraParams(0.5, 2)
    r = bound_report(p, 2.0, "corollary12")
    assert r.margin_low < 0
    lo, hi = corollary_envelope(p, [2.0])
    assert lo[0] == -math.inf and hi[0] >= r.value
    lo, hi = corollary_envelope(UltraParams(-0.3, 3), [-1.8])
    assert hi[0] == math.inf and lo[0] <= turan_eval(UltraParams(-0.3, 3), -1.8).delta


def test_legendre_second_derivative_identity():
    x = np.linspace(-1, 1, 101)
    for n in (1, 3, 8, 25):
        p = UltraParams(0.5, n)
        rhs = -2 / (n * (n + 1)) * eval_arrays(p, x)["dp"] ** 2
        np.testing.assert_allclose(delta_second_derivative(p, x), rhs, atol=1e-12 * np.max(np.abs(rhs)))
