"""Combinatorics of monomial ideals in a polynomial/power-series ring.

Monomial ideals are minimal generator lists of exponent tuples.  Lengths are
lattice-point counts under the staircase; a closed form is used for two
variables and degree-slab enumeration (with a persistence certificate) in
general.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from .errors import TruncationLimit, Unsupported
from .poly import Monomial, mono_degree, mono_divides, mono_lcm, mono_mul

INFINITE = "INFINITE"


def minimalize(gens: Iterable[Monomial]) -> Tuple[Monomial, ...]:
    """Antichain of generators under divisibility.

    Distinct monomials of equal degree never divide one another, so each
    candidate is tested only against kept generators of smaller degree.
    """
    out: List[Monomial] = []
    buckets: List[List[Monomial]] = []  # kept generators grouped by degree
    degrees: List[int] = []
    for g in sorted(set(gens), key=lambda m: (mono_degree(m), m)):
        d = mono_degree(g)
        dominated = False
        for deg, bucket in zip(degrees, buckets):
            if deg >= d:
                break
            if any(mono_divides(h, g) for h in bucket):
                dominated = True
                break
        if dominated:
            continue
        out.append(g)
        if degrees and degrees[-1] == d:
            buckets[-1].append(g)
        else:
            degrees.append(d)
            buckets.append([g])
    return tuple(out)


def contains_monomial(gens: Sequence[Monomial], m: Monomial) -> bool:
    """Membership of m in the monomial ideal; gens must be degree-sorted
    (minimalize output), allowing the scan to stop early."""
    d = mono_degree(m)
    for g in gens:
        if mono_degree(g) > d:
            return False
        if mono_divides(g, m):
            return True
    return False


def ideal_sum(a: Sequence[Monomial], b: Sequence[Monomial]) -> Tuple[Monomial, ...]:
    return minimalize(list(a) + list(b))


def ideal_product(a: Sequence[Monomial], b: Sequence[Monomial]) -> Tuple[Monomial, ...]:
    return minimalize(mono_mul(x, y) for x in a for y in b)


def ideal_intersect(a: Sequence[Monomial], b: Sequence[Monomial]) -> Tuple[Monomial, ...]:
    return minimalize(mono_lcm(x, y) for x in a for y in b)


def colon_by_monomial(gens: Sequence[Monomial], m: Monomial) -> Tuple[Monomial, ...]:
    out = []
    for g in gens:
        out.append(tuple(max(ge - me, 0) for ge, me in zip(g, m)))
    return minimalize(out)


def colon_by_ideal(
    gens: Sequence[Monomial], by: Sequence[Monomial]
) -> Tuple[Monomial, ...]:
    """(I : J) = intersection over J-generators of (I : g)."""
    result: Optional[Tuple[Monomial, ...]] = None
    for g in by:
        part = colon_by_monomial(gens, g)
        result = part if result is None else ideal_intersect(result, part)
    if result is None:
        raise Unsupported("colon by the zero ideal")
    return result


def monomials_of_degree(nvars: int, degree: int) -> List[Monomial]:
    if nvars == 1:
        return [(degree,)]
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining + 1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    return out


def is_m_primary(gens: Sequence[Monomial], nvars: int) -> bool:
    """Finite colength in k[[x_1..x_d]] iff every axis carries a pure power."""
    for i in range(nvars):
        if not any(all(e == 0 for j, e in enumerate(g) if j != i) and g[i] > 0 for g in gens):
            return False
    return bool(gens)


def staircase_count(gens: Sequence[Monomial], nvars: int):
    """Number of monomials outside the ideal; INFINITE when unbounded."""
    gens = minimalize(gens)
    if not gens:
        return INFINITE
    if any(mono_degree(g) == 0 for g in gens):
        return 0
    if not is_m_primary(gens, nvars):
        return INFINITE
    if nvars == 1:
        return min(g[0] for g in gens)
    if nvars == 2:
        return _staircase_count_2d(gens)
    return len(standard_monomials(gens, nvars))


def _staircase_count_2d(gens: Sequence[Monomial]) -> int:
    """Closed-form lattice count under a 2-variable staircase.

    Minimal generators sorted by x-exponent have strictly descending
    y-exponents; the column over x in [x_i, x_{i+1}) has height y_i.
    m-primariness puts the pure y-power first (x_0 = 0) and x-power last.
    """
    pts = sorted(gens)
    count = 0
    for (x0, y0), (x1, _y1) in zip(pts, pts[1:]):
        count += (x1 - x0) * y0
    return count


def standard_monomials(
    gens: Sequence[Monomial], nvars: int, cutoff: Optional[int] = None
) -> List[Monomial]:
    """Monomials outside the ideal (and below the degree cutoff), ordered.

    Slabs are generated as children of the previous standard slab: every
    divisor of a standard monomial is standard, so nothing is missed.  With
    a cutoff the ideal is implicitly enlarged by the full m^cutoff slab.
    """
    gens = minimalize(gens)
    out: List[Monomial] = []
    frontier = [(0,) * nvars]
    if contains_monomial(gens, frontier[0]) or cutoff == 0:
        return out
    degree = 0
    while frontier:
        out.extend(frontier)
        degree += 1
        if cutoff is not None and degree >= cutoff:
            break
        children = set()
        for m in frontier:
            for i in range(nvars):
                children.add(m[:i] + (m[i] + 1,) + m[i + 1 :])
        frontier = sorted(c for c in children if not contains_monomial(gens, c))
    return out


def gap_count(
    small: Sequence[Monomial], big: Sequence[Monomial], nvars: int, bound: int = 512
):
    """|{monomials in (big) but not in (small)}| for small contained in big.

    Enumeration by total degree; once a slab past the maximal generator
    degree of `big` is empty the difference is exhausted.
    """
    big = minimalize(big)
    small = minimalize(small)
    if not big:
        return 0
    maxdeg = max(mono_degree(g) for g in big)
    count = 0
    degree = min(mono_degree(g) for g in big)
    while degree <= bound:
        slab = [
            m
            for m in monomials_of_degree(nvars, degree)
            if contains_monomial(big, m) and not contains_monomial(small, m)
        ]
        count += len(slab)
        if not slab and degree >= maxdeg:
            return count
        degree += 1
    raise TruncationLimit("monomial gap enumeration exceeded the bound")


def saturate_wrt_maximal(gens: Sequence[Monomial], nvars: int) -> Tuple[Monomial, ...]:
    """(I : m^infinity) computed by iterating the colon with m = (x_1..x_d)."""
    axes = [tuple(1 if j == i else 0 for j in range(nvars)) for i in range(nvars)]
    current = minimalize(gens)
    while True:
        nxt = colon_by_ideal(current, axes)
        if set(nxt) == set(current):
            return current
        current = nxt


def ring_dimension_monomial(relations: Sequence[Monomial], nvars: int) -> int:
    """Krull dimension of S/I for monomial I: nvars minus a minimum cover."""
    rels = [g for g in minimalize(relations) if mono_degree(g) > 0]
    if not rels:
        return nvars
    supports = [frozenset(i for i, e in enumerate(g) if e > 0) for g in rels]
    for size in range(0, nvars + 1):
        for cover in combinations(range(nvars), size):
            cs = set(cover)
            if all(s & cs for s in supports):
                return nvars - size
    return 0


def newton_polyhedron_member(point: Monomial, gens: Sequence[Monomial]) -> bool:
    """Exact test: point in conv(gens) + nonnegative orthant.

    Feasibility of point = sum lambda_i g_i + s, lambda >= 0, sum lambda = 1,
    s >= 0, decided through basic solutions: some support of at most d+1
    columns among the generators and slack unit vectors is feasible.
    """
    d = len(point)
    cols: List[Tuple[Tuple[int, ...], bool]] = [(g, True) for g in gens]
    for i in range(d):
        cols.append((tuple(1 if j == i else 0 for j in range(d)), False))
    target = tuple(point) + (1,)

    def lifted(col):
        vec, is_gen = col
        return tuple(vec) + ((1,) if is_gen else (0,))

    n = len(cols)
    for size in range(1, d + 2):
        for subset in combinations(range(n), size):
            mat = [lifted(cols[i]) for i in subset]
            sol = _solve_nonneg(mat, target)
            if sol is not None:
                return True
    return False


def _solve_nonneg(columns: Sequence[Tuple[int, ...]], target: Tuple[int, ...]):
    """Solve sum x_i columns[i] = target exactly with x_i >= 0, if possible."""
    m = len(target)
    n = len(columns)
    # Gaussian elimination on the m x (n+1) system over Q.
    rows = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(n):
        pr = None
        for rr in range(r, m):
            if rows[rr][c] != 0:
                pr = rr
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c]
        rows[r] = [v / inv for v in rows[r]]
        for rr in range(m):
            if rr != r and rows[rr][c] != 0:
                f = rows[rr][c]
                rows[rr] = [a - f * b for a, b in zip(rows[rr], rows[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    for rr in range(r, m):
        if rows[rr][n] != 0:
            return None
    # Pin free columns to zero; dependent subsets may be rejected spuriously,
    # which is harmless because every independent sub-support is enumerated.
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][n]
    for i in range(m):
        acc = Fraction(0)
        for j in range(n):
            acc += Fraction(columns[j][i]) * sol[j]
        if acc != target[i]:
            return None
    if any(v < 0 for v in sol):
        return None
    return sol


def integral_closure_monomial_gens(
    gens: Sequence[Monomial], nvars: int
) -> Tuple[Monomial, ...]:
    """Monomial generators of the integral closure via the Newton polyhedron."""
    gens = minimalize(gens)
    if not gens:
        raise Unsupported("integral closure of the zero ideal")
    box = [max(g[i] for g in gens) for i in range(nvars)]

    out: List[Monomial] = []

    def rec(prefix: Tuple[int, ...]):
        if len(prefix) == nvars:
            if newton_polyhedron_member(prefix, gens):
                out.append(prefix)
            return
        for e in range(box[len(prefix)] + 1):
            rec(prefix + (e,))

    rec(())
    return minimalize(out)
