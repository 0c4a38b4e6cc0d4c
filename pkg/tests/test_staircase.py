import random
from itertools import product

import pytest

from qfil.errors import TruncationLimit
from qfil.staircase import (
    INFINITE,
    colon_by_ideal,
    colon_by_monomial,
    gap_count,
    ideal_intersect,
    ideal_product,
    ideal_sum,
    integral_closure_monomial_gens,
    is_m_primary,
    minimalize,
    ring_dimension_monomial,
    saturate_wrt_maximal,
    staircase_count,
    standard_monomials,
)


def brute_count(gens, nvars, box=40):
    """Independent enumeration oracle over a bounded box.

    Only valid when every standard monomial fits in the box, which holds for
    m-primary ideals whose pure powers are below the box size.
    """
    count = 0
    for m in product(range(box), repeat=nvars):
        if not any(all(g[i] <= m[i] for i in range(nvars)) for g in gens):
            count += 1
    return count


def test_example_one_colength():
    gens = [(4, 0), (3, 1), (1, 3), (0, 4)]
    assert staircase_count(gens, 2) == 11
    assert brute_count(gens, 2, box=8) == 11


def test_small_staircase():
    gens = [(2, 0), (1, 1), (0, 3)]
    assert staircase_count(gens, 2) == 4
    assert standard_monomials(gens, 2) == [(0, 0), (0, 1), (1, 0), (0, 2)]


def test_maximal_ideal():
    assert staircase_count([(1, 0), (0, 1)], 2) == 1


def test_not_primary_is_infinite():
    assert staircase_count([(1, 1)], 2) == INFINITE
    assert not is_m_primary([(1, 1)], 2)


def test_count_matches_oracle_randomized():
    rng = random.Random(11)
    for _ in range(60):
        nvars = rng.choice([2, 3])
        gens = [
            tuple(rng.randint(1, 5) if i == j else 0 for i in range(nvars))
            for j in range(nvars)
        ]
        for _ in range(rng.randint(0, 3)):
            gens.append(tuple(rng.randint(0, 4) for _ in range(nvars)))
        gens = [g for g in gens if sum(g) > 0]
        got = staircase_count(gens, nvars)
        if got == INFINITE:
            continue
        assert got == brute_count(gens, nvars, box=7)


def test_colon_rules():
    assert set(colon_by_monomial([(2, 0), (0, 2)], (1, 0))) == {(1, 0), (0, 2)}
    assert set(colon_by_ideal([(2, 0), (0, 2)], [(0, 0)])) == {(2, 0), (0, 2)}


def test_product_and_intersection():
    assert set(ideal_product([(1, 0)], [(0, 1)])) == {(1, 1)}
    assert set(ideal_intersect([(1, 0)], [(0, 1)])) == {(1, 1)}
    q2 = ideal_product([(2, 0), (0, 2)], [(2, 0), (0, 2)])
    assert set(q2) == {(4, 0), (2, 2), (0, 4)}


def test_minimalize_antichain():
    gens = minimalize([(2, 0), (2, 1), (0, 1), (3, 3)])
    assert set(gens) == {(2, 0), (0, 1)}


def test_saturation_examples():
    # k[[x,y]]/(x^2, xy): torsion lift is (x)
    assert set(saturate_wrt_maximal([(2, 0), (1, 1)], 2)) == {(1, 0)}
    # k[x,y,z]/(zx, zy, z^2): torsion lift is (z)
    assert set(saturate_wrt_maximal([(1, 0, 1), (0, 1, 1), (0, 0, 2)], 3)) == {
        (0, 0, 1)
    }


def test_gap_count_torsion_length():
    assert gap_count([(2, 0), (1, 1)], [(1, 0)], 2) == 1
    # Monomials in (z) but not in (zx, zy, z^2): only z itself.
    assert gap_count([(1, 0, 1), (0, 1, 1), (0, 0, 2)], [(0, 0, 1)], 3) == 1


def test_gap_count_unbounded_raises():
    with pytest.raises(TruncationLimit):
        gap_count([(3, 0)], [(1, 0)], 2, bound=24)


def test_ring_dimension():
    assert ring_dimension_monomial([], 2) == 2
    assert ring_dimension_monomial([(3, 0, 0), (2, 3, 0), (2, 0, 4)], 3) == 2
    assert ring_dimension_monomial([(1, 0, 1), (0, 1, 1), (0, 0, 2)], 3) == 2


def closure_oracle(gens, nvars, box, max_power=8):
    """Brute-force closure: v is integral iff N*v lies in the N-fold sum of
    generators for some N; checked by direct monomial membership in I^N."""
    out = []
    powers = {1: tuple(gens)}
    for n in range(2, max_power + 1):
        powers[n] = ideal_product(powers[n - 1], gens)
    for v in product(range(box), repeat=nvars):
        for n in range(1, max_power + 1):
            scaled = tuple(n * c for c in v)
            if any(all(g[i] <= scaled[i] for i in range(nvars)) for g in powers[n]):
                out.append(v)
                break
    return set(minimalize(out))


def test_integral_closure_of_corner_ideal():
    gens = [(4, 0), (0, 4)]
    got = set(integral_closure_monomial_gens(gens, 2))
    assert got == {(4, 0), (3, 1), (2, 2), (1, 3), (0, 4)}
    assert got == closure_oracle(gens, 2, box=6)


def test_powers_of_maximal_ideal_are_closed():
    for k in (1, 2, 3):
        mk = ideal_product([(1, 0), (0, 1)], [(1, 0), (0, 1)]) if k == 2 else None
        gens = [(k - i, i) for i in range(k + 1)]
        assert set(integral_closure_monomial_gens(gens, 2)) == set(gens)


def test_example_one_not_integrally_closed():
    gens = [(4, 0), (3, 1), (1, 3), (0, 4)]
    closure = set(integral_closure_monomial_gens(gens, 2))
    assert (2, 2) in closure
    assert closure == closure_oracle(gens, 2, box=6)
