import pytest

from qfil.artinian import AmbientRing
from qfil.errors import HypothesisFailed
from qfil.filtration import (
    Filtration,
    adic_filtration,
    e_filtration,
    hilbert,
    induced_filtration,
    jadic_filtration,
    mi_filtration,
    prefix_filtration,
    quotient_instance,
)
from qfil.semigroup import AffineSemigroup, SemigroupRing


def test_huno_series():
    ring = SemigroupRing(AffineSemigroup([[4], [5], [6], [7]]))
    f = adic_filtration(ring, ring.ideal([4, 5, 6]))
    data = hilbert(f)
    assert data.series.numerator.coeffs == (2, 1, 1)
    assert data.series.denom_exponent == 1
    assert data.coefficients.values == (4, 3)


def test_x3_example_series():
    base = AmbientRing(["x", "y", "z"])
    rels = ["x^3", "x^2*y^3", "x^2*z^4"]
    ring = AmbientRing(["x", "y", "z"], [base.parse(s) for s in rels])
    f = adic_filtration(ring, ring.maximal_ideal())
    data = hilbert(f, jmax=14)
    assert data.series.numerator.coeffs == (1, 1, 1, 0, 0, -1, -1, 0, 0, 1)
    assert data.series.denom_exponent == 2
    assert data.coefficients.values == (2, 1, 12)


def test_x3_quotient_by_y():
    base = AmbientRing(["x", "y", "z"])
    rels = ["x^3", "x^2*y^3", "x^2*z^4"]
    ring = AmbientRing(["x", "y", "z"], [base.parse(s) for s in rels])
    f = adic_filtration(ring, ring.maximal_ideal())
    g = quotient_instance(f, ring.parse("y"))
    data = hilbert(g, jmax=12)
    assert data.series.numerator.coeffs == (1, 1, 1, 0, 0, 0, -1)
    assert data.series.denom_exponent == 1
    assert data.coefficients.values == (2, -3)
    # e_2 of the quotient, read from the same h-polynomial.
    from qfil.series import series_coefficients

    assert series_coefficients(data.series, 2).values[2] == -14


def test_regular_ring_trivial_series():
    ring = AmbientRing(["x", "y"])
    f = adic_filtration(ring, ring.maximal_ideal())
    data = hilbert(f)
    assert data.series.numerator.coeffs == (1,)
    assert data.series.denom_exponent == 2
    g = quotient_instance(f, ring.parse("x"))
    qd = hilbert(g)
    assert qd.series.numerator.coeffs == (1,)
    assert qd.series.denom_exponent == 1


def test_prefix_example_t345():
    ring = SemigroupRing(AffineSemigroup([[3], [4], [5]]))
    m = ring.maximal_ideal()
    m2 = ring.power(m, 2)
    f = prefix_filtration(ring, m, [m, m2, m2])
    assert ring.equal(f.member(2), m2)
    assert ring.equal(f.member(3), m2)
    assert ring.equal(f.member(4), ring.power(m, 3))
    data = hilbert(f)
    assert data.series.numerator.coeffs == (1, 2, -3, 3)
    assert data.series.denom_exponent == 1
    assert data.coefficients.values == (3, 5)


def test_jadic_t345():
    ring = SemigroupRing(AffineSemigroup([[3], [4], [5]]))
    f = jadic_filtration(ring, ring.ideal([3]))
    data = hilbert(f)
    assert data.coefficients.values == (3, 0)


def test_induced_with_L_equals_q_is_adic():
    ring = AmbientRing(["x", "y"])
    q = ring.ideal_from_strings(["x^2", "y^2"])
    f = induced_filtration(ring, q, q)
    g = adic_filtration(ring, q)
    for n in range(4):
        assert ring.equal(f.member(n), g.member(n))


def test_mi_filtration_members():
    ring = AmbientRing(["x", "y"])
    q = ring.ideal_from_strings(["x^2", "y^2"])
    f = adic_filtration(ring, q)
    mf = mi_filtration(f, ring.maximal_ideal())
    m = ring.maximal_ideal()
    assert ring.equal(mf.member(1), m)
    assert ring.equal(mf.member(2), ring.product(m, q))
    assert ring.equal(mf.member(3), ring.product(m, ring.power(q, 2)))


def test_e_filtration_huno():
    ring = SemigroupRing(AffineSemigroup([[4], [5], [6], [7]]))
    q = ring.ideal([4, 5, 6])
    f = adic_filtration(ring, q)
    ef = e_filtration(f, ring.ideal([4]))
    data = hilbert(ef)
    assert data.series.numerator.coeffs == (2, 2)
    assert data.series.denom_exponent == 1


def test_bad_prefix_rejected():
    ring = AmbientRing(["x", "y"])
    q = ring.ideal_from_strings(["x^2", "y^2"])
    with pytest.raises(HypothesisFailed):
        prefix_filtration(ring, q, [ring.ideal_from_strings(["x^3"])])
    with pytest.raises(HypothesisFailed):
        # not m-primary q
        Filtration(ring, ring.ideal_from_strings(["x"]))


def test_samuel_consistency_huno():
    ring = SemigroupRing(AffineSemigroup([[4], [5], [6], [7]]))
    f = adic_filtration(ring, ring.ideal([4, 5, 6]))
    data = hilbert(f)
    for n in range(len(data.values)):
        assert sum(data.values[: n + 1]) == data.samuel[n]
