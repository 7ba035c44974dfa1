import math

import numpy as np
import pytest

from ultraturan import ParameterDomainError, UltraParams, eval_arrays, eval_poly, neighbors_from_center, ode_residuals
from ultraturan.gegenbauer import eval_table, unnormalized_at_one

LEGENDRE = [
    lambda x: np.ones_like(x),
    lambda x: x,
    lambda x: (3 * x**2 - 1) / 2,
    lambda x: (5 * x**3 - 3 * x) / 2,
    lambda x: (35 * x**4 - 30 * x**2 + 3) / 8,
]


def test_legendre_spot_values():
    e = eval_poly(UltraParams(0.5, 2), 0.5)
    assert (e.p_prev, e.p, e.p_next, e.dp, e.d2p) == pytest.approx((0.5, -0.125, -0.4375, 1.5, 3.0), abs=1e-15)
    assert e.d3p == 0.0


def test_chebyshev_t3():
    assert eval_poly(UltraParams(0.0, 3), 0.3).p == pytest.approx(4 * 0.3**3 - 3 * 0.3, abs=1e-15)


@pytest.mark.parametrize("lam", [-0.4, 0.0, 0.5, 1.0, 3.7])
@pytest.mark.parametrize("n", [1, 2, 5, 17])
def test_values_at_one(lam, n):
    e = eval_poly(UltraParams(lam, n), 1.0)
    assert (e.p_prev, e.p, e.p_next) == pytest.approx((1.0, 1.0, 1.0), abs=1e-13 * n)
    assert e.dp == pytest.approx(n * (n + 2 * lam) / (2 * lam + 1), rel=1e-13)


def test_legendre_closed_forms():
    x = np.linspace(-1, 1, 41)
    P, _, _, _ = eval_table(0.5, 4, x)
    for k, f in enumerate(LEGENDRE):
        np.testing.assert_allclose(P[k], f(x), atol=1e-15)


def test_chebyshev_second_kind():
    # lam = 1: p_n = U_n / (n + 1) with U_n(cos t) = sin((n+1)t) / sin t
    t = np.linspace(0.1, 3.0, 30)
    P, _, _, _ = eval_table(1.0, 8, np.cos(t))
    for n in range(9):
        np.testing.assert_allclose(P[n], np.sin((n + 1) * t) / np.sin(t) / (n + 1), atol=1e-14)


def test_derivatives_against_numpy_legendre():
    x = np.linspace(-1.2, 1.2, 25)
    e = eval_arrays(UltraParams(0.5, 7), x)
    c = np.polynomial.legendre.Legendre.basis(7)
    for key, k in (("dp", 1), ("d2p", 2), ("d3p", 3)):
        np.testing.assert_allclose(e[key], c.deriv(k)(x), rtol=1e-12, atol=1e-10)


def test_neighbors_examples():
    p = UltraParams(0.5, 2)
    nxt, prv = neighbors_from_center(p, 0.5, -0.125, 1.5)
    assert nxt == pytest.approx(-0.4375, abs=1e-15)
    assert prv == pytest.approx(0.5, abs=1e-15)
    assert neighbors_from_center(UltraParams(2.0, 5), 1.0, 1.0, 123.0) == (1.0, 1.0)
    assert neighbors_from_center(p, 0.0, -0.5, 0.0)[1] == 0.0


def test_neighbors_match_recurrence():
    x = np.linspace(-1, 1, 101)
    p = UltraParams(1.7, 9)
    e = eval_arrays(p, x)
    nxt, prv = neighbors_from_center(p, x, e["p"], e["dp"])
    np.testing.assert_allclose(nxt, e["p_next"], atol=1e-14)
    np.testing.assert_allclose(prv, e["p_prev"], atol=1e-14)


def test_ode_residuals():
    r2, r3 = ode_residuals(UltraParams(0.5, 2), eval_poly(UltraParams(0.5, 2), 0.5))
    assert r2 == 0.0 and r3 == 0.0
    r2, _ = ode_residuals(UltraParams(0.0, 3), eval_poly(UltraParams(0.0, 3), 0.3))
    assert abs(r2) < 1e-14
    p = UltraParams(2.5, 6)
    e = eval_poly(p, 1.0)
    r2, _ = ode_residuals(p, e)
    assert r2 == pytest.approx(-(2 * 2.5 + 1) * e.dp + p.nn * e.p, abs=1e-12)


def test_ode_relative_residuals_on_grid():
    x = np.linspace(-1, 1, 201)
    for lam in (-0.49, 0.1, 10.0):
        p = UltraParams(lam, 40)
        r2, r3 = ode_residuals(p, eval_arrays(p, x), relative=True)
        assert np.max(np.abs(r2)) < 1e-10 and np.max(np.abs(r3)) < 1e-10


@pytest.mark.parametrize("lam,n", [(-0.5, 2), (-1.0, 2), (float("nan"), 2), (0.5, 0), (0.5, 2.5), (0.5, True)])
def test_domain_errors(lam, n):
    with pytest.raises(ParameterDomainError):
        UltraParams(lam, n)


def test_unnormalized_at_one():
    assert unnormalized_at_one(UltraParams(0.5, 4)) == pytest.approx(1.0)  # Legendre
    assert unnormalized_at_one(UltraParams(1.0, 4)) == pytest.approx(5.0)  # U_n(1) = n + 1
    assert unnormalized_at_one(UltraParams(2.0, 3)) == pytest.approx(math.comb(6, 3))
    with pytest.raises(ParameterDomainError):
        unnormalized_at_one(UltraParams(0.0, 3))
