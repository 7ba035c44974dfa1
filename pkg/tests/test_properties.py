"""Property-based checks of the invariants over random (lambda, n, x)."""
from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from ultraturan import UltraParams, turan_arrays, zeros
from ultraturan.exact import comparison_exact, comparison_polynomials
from ultraturan.gegenbauer import eval_arrays
from ultraturan.zeros import largest_zero_bound, proof_threshold

lams = st.floats(min_value=-0.499, max_value=20.0, allow_nan=False)
degrees = st.integers(min_value=1, max_value=60)
unit = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)
wide = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)

settings.register_profile("ci", max_examples=150, deadline=None)
settings.load_profile("ci")


@given(lams, degrees, unit)
def test_turan_nonnegative(lam, n, x):
    assert turan_arrays(UltraParams(lam, n), [x])["delta"][0] >= -1e-12


@given(lams, degrees, wide)
def test_convexity_sign(lam, n, x):
    t = turan_arrays(UltraParams(lam, n), [x])
    assert lam * t["d2phi"][0] >= -1e-10 * max(1.0, abs(t["d2phi"][0]))


@given(lams, degrees, wide)
def test_phi_even_and_parity(lam, n, x):
    p = UltraParams(lam, n)
    a, b = turan_arrays(p, [x, -x])["phi"]
    assert abs(a - b) <= 1e-13 * max(1.0, abs(a))
    ea, eb = eval_arrays(p, [x, -x])["p"]
    assert abs(eb - (-1) ** n * ea) <= 1e-13 * max(1.0, abs(ea))


@given(lams, degrees, unit)
def test_phi_between_endpoint_values(lam, n, x):
    # phi is monotone on [0, 1] (increasing for lam > 0), so it lies between phi(0) and phi(1)
    t = turan_arrays(UltraParams(lam, n), [0.0, x, 1.0])["phi"]
    lo, hi = min(t[0], t[2]), max(t[0], t[2])
    slack = 1e-12 * max(1.0, hi)
    assert lo - slack <= t[1] <= hi + slack


@given(lams, st.integers(min_value=2, max_value=60))
def test_largest_zero_chain(lam, n):
    p = UltraParams(lam, n)
    assert zeros(p).largest ** 2 <= largest_zero_bound(p) + 1e-12
    assert largest_zero_bound(p) < proof_threshold(p)


@given(
    st.fractions(min_value=2, max_value=10**4, max_denominator=1000),
    st.fractions(min_value=Fraction(-499, 1000), max_value=10**3, max_denominator=1000),
)
def test_cleared_comparison_matches_direct(n, lam):
    e9, e10, num = comparison_polynomials()
    v = {"m": n - 2, "s": lam + Fraction(1, 2)}
    assert e9.evaluate(v) > 0 and e10.evaluate(v) > 0 and num.evaluate(v) > 0
    assert num.evaluate(v) / (e9.evaluate(v) * e10.evaluate(v)) == comparison_exact(n, lam)


@given(lams, degrees)
def test_zeros_symmetric_sorted(lam, n):
    x = zeros(UltraParams(lam, n)).as_array()
    assert np.all(np.diff(x) > 0) and np.all(x == -x[::-1])
