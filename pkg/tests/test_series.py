import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfil.errors import WindowExceeded
from qfil.series import (
    Certification,
    IntPolynomial,
    RationalSeries,
    hilbert_polynomial_value,
    infer_denominator_exponent,
    series_coefficients,
    series_from_window,
)


def test_coefficients_two_dim_example():
    # h = 1 + z + z^2 - z^5 - z^6 + z^9 over (1-z)^2
    s = RationalSeries(IntPolynomial([1, 1, 1, 0, 0, -1, -1, 0, 0, 1]), 2)
    e = series_coefficients(s, 2)
    assert e.values == (2, 1, 12)


def test_coefficients_regular():
    s = RationalSeries(IntPolynomial([1]), 3)
    e = series_coefficients(s, 3)
    assert e.values == (1, 0, 0, 0)


def test_coefficients_direct_binomial_sum():
    # e_i = sum C(k, i) h_k computed by hand for h = 2 + z + z^2:
    # e_0 = 4, e_1 = 1*1 + 2*1 = 3
    s = RationalSeries(IntPolynomial([2, 1, 1]), 1)
    e = series_coefficients(s, 1)
    assert e.values == (4, 3)


def test_series_from_window_one_dim():
    H = [2, 3, 4, 4, 4, 4, 4, 4]
    s, cert = series_from_window(H, 1, 3)
    assert s.numerator.coeffs == (2, 1, 1)
    assert s.denom_exponent == 1
    assert cert.label() == "WINDOW(3)"


def test_series_from_window_constant():
    s, _ = series_from_window([5] * 8, 1, 3)
    assert s.numerator.coeffs == (5,)


def test_series_from_window_difference_table():
    s, _ = series_from_window([1, 2, 3, 3, 3, 3, 3], 1, 3)
    assert s.numerator.coeffs == (1, 1, 1)


def test_series_from_window_rejects_dirty_tail():
    with pytest.raises(WindowExceeded):
        series_from_window([1, 2, 3, 4, 5, 6, 7, 8], 0, 3)


def test_normalization_divides_out_one_minus_z():
    # (1 - z^2)/(1-z)^2 normalizes to (1+z)/(1-z)
    s = RationalSeries(IntPolynomial([1, 0, -1]), 2)
    assert s.numerator.coeffs == (1, 1)
    assert s.denom_exponent == 1


@given(
    st.lists(st.integers(-4, 6), min_size=1, max_size=6),
    st.integers(0, 3),
)
@settings(max_examples=120, deadline=None)
def test_polynomial_matches_series_tail(hcoeffs, r):
    h = IntPolynomial(hcoeffs)
    if h.is_zero():
        return
    s = RationalSeries(h, r)
    r_eff = s.denom_exponent
    e = series_coefficients(s, r_eff)
    n_terms = h.degree + r + 8
    vals = s.coefficients(n_terms)
    for n in range(s.numerator.degree + 1, n_terms):
        assert vals[n] == hilbert_polynomial_value(e.values, r_eff, n)


@given(
    st.lists(st.integers(-3, 5), min_size=1, max_size=5),
    st.integers(0, 3),
)
@settings(max_examples=120, deadline=None)
def test_window_roundtrip(hcoeffs, r):
    h = IntPolynomial(hcoeffs)
    if h.is_zero():
        return
    s = RationalSeries(h, r)
    window = 3
    jmax = s.numerator.degree + window + 4
    vals = s.coefficients(jmax + 1)
    back, _ = series_from_window(vals, s.denom_exponent, window)
    assert back == s
    assert infer_denominator_exponent(vals, window) <= s.denom_exponent


def test_certification_combine():
    p = Certification.proven_cert()
    w2 = Certification.window_cert(2)
    w5 = Certification.window_cert(5)
    assert p.combine(p).proven
    assert p.combine(w5) == w5
    assert w2.combine(w5).window == 2
