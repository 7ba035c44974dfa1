import math

import numpy as np
import pytest

from ultraturan import ConsistencyError, ParameterDomainError, UltraParams, largest_zero_bound, proof_threshold, zeros
from ultraturan.zeros import jacobi_matrix

ULP = math.ulp(0.5773502691896257)


def test_legendre_n2():
    zs = zeros(UltraParams(0.5, 2))
    # correctly rounded 1/sqrt(3) is ...257; 1/np.sqrt(3) gives ...258 (one ulp)
    assert zs.zeros[1] == pytest.approx(0.5773502691896258, abs=ULP)
    assert zs.zeros == (-zs.zeros[1], zs.zeros[1])


def test_chebyshev_second_kind_n2():
    assert zeros(UltraParams(1.0, 2)).zeros == (-0.5, 0.5)


@pytest.mark.parametrize("lam", [-0.4, 0.0, 0.5, 3.0])
def test_odd_degree_has_exact_zero(lam):
    assert zeros(UltraParams(lam, 3)).zeros[1] == 0.0
    assert zeros(UltraParams(lam, 1)).zeros == (0.0,)


def test_chebyshev_first_kind_zeros():
    n = 12
    got = zeros(UltraParams(0.0, n)).as_array()
    want = np.sort(np.cos((2 * np.arange(n) + 1) * np.pi / (2 * n)))
    np.testing.assert_allclose(got, want, atol=2e-16)


def test_against_gauss_legendre():
    for n in (5, 20, 60):
        np.testing.assert_allclose(zeros(UltraParams(0.5, n)).as_array(), np.polynomial.legendre.leggauss(n)[0], atol=4e-16)


def test_jacobi_matrix_shape():
    d, e = jacobi_matrix(UltraParams(0.5, 4))
    assert d.shape == (4,) and e.shape == (3,)
    assert np.all(d == 0) and np.all(e > 0)


def test_zero_set_consistency():
    zs = zeros(UltraParams(0.5, 4))
    zs.require(UltraParams(0.5, 4))
    with pytest.raises(ConsistencyError):
        zs.require(UltraParams(0.5, 5))


def test_largest_zero_bound_examples():
    assert largest_zero_bound(UltraParams(0.5, 2)) == pytest.approx(1 / 3, abs=1e-15)
    assert largest_zero_bound(UltraParams(1.0, 2)) == pytest.approx(0.25, abs=1e-15)
    assert largest_zero_bound(UltraParams(0.5, 3)) == pytest.approx(10 / 16.5, abs=1e-15)
    assert zeros(UltraParams(0.5, 3)).largest ** 2 == pytest.approx(0.6, abs=1e-15)
    with pytest.raises(ParameterDomainError):
        largest_zero_bound(UltraParams(0.5, 1))


def test_proof_threshold_examples():
    assert proof_threshold(UltraParams(0.5, 2)) == pytest.approx(15 / 23, abs=1e-15)
    assert proof_threshold(UltraParams(0.5, 3)) == pytest.approx(39 / 47, abs=1e-15)
    assert proof_threshold(UltraParams(0.0, 2)) == pytest.approx(1 - 3 / 14.5, abs=1e-15)


def test_bound_is_attained_at_n2():
    # equality cases: x_2^2 equals the bound, so the check is non-strict
    for lam in (0.5, 1.0):
        p = UltraParams(lam, 2)
        assert zeros(p).largest ** 2 <= largest_zero_bound(p) + 1e-15


@pytest.mark.parametrize("lam", [-0.49, 0.1, 10.0])
def test_residuals_and_interlacing(lam):
    for n in (2, 17, 60):
        p = UltraParams(lam, n)
        zs = zeros(p)
        assert max(zs.residuals) < 1e-12 * 10
        nxt = zeros(UltraParams(lam, n + 1)).as_array()
        x = zs.as_array()
        assert np.all(nxt[:-1] < x) and np.all(x < nxt[1:])
