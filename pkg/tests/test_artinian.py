import pytest

from qfil.artinian import (
    AmbientRing,
    h0_saturation,
    ideal_colon,
    ideal_equal,
    ideal_intersect,
    ideal_leq,
    ideal_power,
    ideal_product,
    ideal_sum,
    length,
    membership,
    quotient_length,
)
from qfil.backend import InfiniteLength
from qfil.errors import NotComputable, RingMismatch


@pytest.fixture
def kxy():
    return AmbientRing(["x", "y"])


def test_lengths_monomial(kxy):
    q = kxy.ideal_from_strings(["x^4", "x^3*y", "x*y^3", "y^4"])
    assert length(q) == 11
    assert length(kxy.maximal_ideal()) == 1
    assert length(kxy.ideal_from_strings(["x^2", "x*y", "y^3"])) == 4


def test_length_infinite(kxy):
    assert isinstance(length(kxy.ideal_from_strings(["x*y"])), InfiniteLength)


def test_length_infinite_general_with_caveat():
    ring = AmbientRing(["x", "y"], max_truncation=24)
    handle = ring.ideal_from_strings(["x^2+y^3*x"])  # (x)(x + y^3): not primary
    got = length(handle)
    assert isinstance(got, InfiniteLength)
    assert got.caveat


def test_length_general_adaptive(kxy):
    # lambda(S/(x^2, xy + y^3)) = 6, frozen from a Groebner-basis oracle.
    h = kxy.ideal_from_strings(["x^2", "x*y+y^3"])
    assert length(h) == 6


def test_length_general_three_vars():
    ring = AmbientRing(["x", "y", "z"])
    q = ring.ideal_from_strings(["x^2-y^2", "y^2-z^2", "x*y", "x*z", "y*z"])
    assert length(q) == 5
    assert length(ideal_power(q, 2)) == 20


def test_wang_ring_lengths():
    base = AmbientRing(["x", "y", "t", "u", "v"])
    rels = ["t^2", "t*u", "t*v", "u*v", "y*t-u^3", "x*t-v^3"]
    ring = AmbientRing(["x", "y", "t", "u", "v"], [base.parse(s) for s in rels])
    m = ring.maximal_ideal()
    assert length(m) == 1
    assert length(ideal_power(m, 2)) == 6
    assert length(ideal_power(m, 3)) == 15


def test_products_and_powers(kxy):
    x = kxy.ideal_from_strings(["x"])
    y = kxy.ideal_from_strings(["y"])
    xy = ideal_product(x, y)
    assert xy.gens_strings() == ["x*y"]
    q = kxy.ideal_from_strings(["x^2", "y^2"])
    q2 = ideal_power(q, 2)
    assert sorted(q2.gens_strings()) == ["x^2*y^2", "x^4", "y^4"]
    assert ideal_product(q, kxy.unit_ideal()) is q


def test_example_one_second_power(kxy):
    # q^2 equals the full eighth power of the maximal ideal, so
    # lambda(A/q^2) = 36 = e0*3 - e1*2 + e2 with (e0,e1,e2) = (16,6,0).
    q = kxy.ideal_from_strings(["x^4", "x^3*y", "x*y^3", "y^4"])
    q2 = ideal_power(q, 2)
    assert sorted(q2.monomials()) == [(a, 8 - a) for a in range(9)]
    assert length(q2) == 36
    assert quotient_length(q2, q) == 25


def test_colon_rules(kxy):
    q = kxy.ideal_from_strings(["x^2", "y^2"])
    c = ideal_colon(q, kxy.ideal_from_strings(["x"]))
    assert ideal_equal(c, kxy.ideal_from_strings(["x", "y^2"]))
    i = kxy.ideal_from_strings(["x^3", "y^5"])
    assert ideal_equal(ideal_colon(i, kxy.unit_ideal()), i)


def test_example_one_ratliff_rush_witness(kxy):
    q = kxy.ideal_from_strings(["x^4", "x^3*y", "x*y^3", "y^4"])
    q2 = ideal_power(q, 2)
    w = kxy.parse("x^2*y^2")
    assert not membership(w, q)
    assert membership(w, ideal_colon(q2, q))


def test_colon_general_ring():
    ring = AmbientRing(["x", "y"])
    # ((x^2, xy + y^3) : x): contains y^2 since x*y^2 = y*(xy+y^3) - y^4 ... .
    i = ring.ideal_from_strings(["x^2", "x*y+y^3"])
    c = ideal_colon(i, ring.ideal_from_strings(["x"]))
    lam_i = length(i)
    lam_c = length(c)
    assert lam_i == 6
    # (i : x) strictly contains i: x annihilates a nonzero socle element.
    assert lam_c < lam_i
    for g in c.gens:
        assert membership(g.mul(ring.parse("x"), ring.field), i)


def test_intersections(kxy):
    x = kxy.ideal_from_strings(["x"])
    y = kxy.ideal_from_strings(["y"])
    assert ideal_intersect(x, y).gens_strings() == ["x*y"]
    i = kxy.ideal_from_strings(["x^2", "y^2"])
    assert ideal_equal(ideal_intersect(i, i), i)


def test_intersection_nonmonomial(kxy):
    a = kxy.ideal_from_strings(["x^2", "y^2"])
    b = kxy.ideal_from_strings(["x^2", "x*y+y^2", "y^3"])
    got = ideal_intersect(a, b)
    # Inclusion-exclusion of finite lengths certifies the intersection.
    s = ideal_sum(a, b)
    assert length(got) + length(s) == length(a) + length(b)
    assert ideal_leq(got, a) and ideal_leq(got, b)


def test_membership(kxy):
    assert membership(kxy.parse("x^2"), kxy.ideal_from_strings(["x^2", "y^2"]))
    m2 = ideal_power(kxy.maximal_ideal(), 2)
    assert not membership(kxy.parse("x"), m2)
    assert membership(kxy.parse("x^2+3*x*y"), m2)


def test_membership_general():
    ring = AmbientRing(["x", "y"])
    i = ring.ideal_from_strings(["x^2", "x*y+y^3"])
    # Frozen from the Groebner oracle: y^5 reduces to zero, y^4 to -x*y^2.
    assert membership(ring.parse("y^5"), i)
    assert not membership(ring.parse("y^4"), i)
    assert not membership(ring.parse("y^3"), i)


def test_h0_saturation_examples():
    r1 = AmbientRing(["x", "y"], relations=[])
    r1 = AmbientRing(["x", "y"], [r1.parse("x^2"), r1.parse("x*y")])
    w, lam, quotient, status = h0_saturation(r1)
    assert lam == 1
    assert status == "PROVEN"
    assert w.gens_strings() == ["x"]
    assert quotient.mono_relations == ((1, 0),)

    r2 = AmbientRing(["x", "y", "z"])
    r2 = AmbientRing(
        ["x", "y", "z"], [r2.parse("z*x"), r2.parse("z*y"), r2.parse("z^2")]
    )
    w2, lam2, q2, _ = h0_saturation(r2)
    assert lam2 == 1
    # A/W is the polynomial ring in x, y: the z-axis relation becomes (z).
    assert q2.mono_relations == ((0, 0, 1),)

    regular = AmbientRing(["x", "y"])
    _, lam3, q3, _ = h0_saturation(regular)
    assert lam3 == 0 and q3 is regular


def test_ring_mismatch():
    a = AmbientRing(["x", "y"])
    b = AmbientRing(["x", "y"])
    with pytest.raises(RingMismatch):
        ideal_sum(a.maximal_ideal(), b.maximal_ideal())


def test_integral_closure_handles(kxy):
    q = kxy.ideal_from_strings(["x^4", "x^3*y", "x*y^3", "y^4"])
    cl = kxy.integral_closure(q)
    assert membership(kxy.parse("x^2*y^2"), cl)
    m3 = ideal_power(kxy.maximal_ideal(), 3)
    assert ideal_equal(kxy.integral_closure(m3), m3)


def test_truncation_stability(kxy):
    # Recomputing a general length at a larger truncation gives the same value.
    i = kxy.ideal_from_strings(["x^2", "x*y+y^3"])
    first = length(i)
    bigger = AmbientRing(["x", "y"], max_truncation=40)
    j = bigger.ideal_from_strings(["x^2", "x*y+y^3"])
    assert length(j) == first


def test_inclusion_exclusion_random(kxy):
    import random

    rng = random.Random(3)
    for _ in range(15):
        gens_a = ["x^%d" % rng.randint(1, 4), "y^%d" % rng.randint(1, 4)]
        gens_b = ["x^%d" % rng.randint(1, 4), "y^%d" % rng.randint(1, 4)]
        if rng.random() < 0.5:
            gens_a.append("x*y^%d" % rng.randint(1, 3))
        if rng.random() < 0.5:
            gens_b.append("x^%d*y" % rng.randint(1, 3))
        a = kxy.ideal_from_strings(gens_a)
        b = kxy.ideal_from_strings(gens_b)
        lhs = length(ideal_intersect(a, b)) + length(ideal_sum(a, b))
        rhs = length(a) + length(b)
        assert lhs == rhs
