"""Ideal arithmetic in A = S/I0 for a power-series ring S over an exact field.

Every finite-length computation is sparse linear algebra over a certified
monomial modulus: a monomial subideal of the target, described by a small
explicit generator list plus an optional "slab" degree s standing for all of
m^s.  Then lambda(A/X) = #staircase(modulus) - rank(span of X), exactly.
Certificates come from three sources:

* literal monomial generators of X (and of the defining ideal I0);
* propagated floors: sums, products, colons of ideals with known floors;
* the truncation certificate: if every monomial of degree s lies in
  X + m^D for some D > s, then m^s lies in X, because ideals of a complete
  local ring are closed in the m-adic topology.

No Groebner machinery, no term orders beyond a fixed degree-compatible
column order, no floating point.
"""

from __future__ import annotations

import threading
from collections import deque
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import staircase as st
from .backend import InfiniteLength
from .errors import NotComputable, RingMismatch, TruncationLimit, Unsupported
from .linalg import Row, SpanBuilder, intersect_spans, kernel_basis
from .poly import (
    Monomial,
    Polynomial,
    mono_degree,
    mono_mul,
    monomial_poly,
    parse_polynomial,
)
from .scalars import field_for_characteristic

MONOMIAL = "MONOMIAL"
GENERAL = "GENERAL"

_FLOOR_GENS_CAP = 1024


class Floor:
    """Certified monomial subideal: explicit generators plus an optional
    slab degree s meaning every monomial of total degree >= s belongs."""

    __slots__ = ("gens", "slab")

    def __init__(self, gens: Iterable[Monomial] = (), slab: Optional[int] = None):
        gens = tuple(gens)
        if slab is not None:
            gens = tuple(g for g in gens if mono_degree(g) < slab)
        self.gens = st.minimalize(gens)
        self.slab = slab

    def is_empty(self) -> bool:
        return not self.gens and self.slab is None

    def key(self) -> Tuple:
        return (self.gens, self.slab)

    def finite_over(self, ring: "AmbientRing") -> bool:
        """Does modulus + I0 cut out a finite staircase?"""
        if self.slab is not None:
            return True
        if not self.gens and not ring.mono_relations:
            return False
        return (
            st.staircase_count(
                st.minimalize(self.gens + ring.mono_relations), ring.nvars
            )
            != st.INFINITE
        )

    def union(self, other: "Floor") -> "Floor":
        if self.slab is not None and other.slab is not None:
            slab: Optional[int] = min(self.slab, other.slab)
        else:
            slab = self.slab if self.slab is not None else other.slab
        return Floor(self.gens + other.gens, slab)

    def product(self, other: "Floor") -> "Floor":
        slab: Optional[int] = None
        if self.slab is not None and other.slab is not None:
            slab = self.slab + other.slab
        gens: Tuple[Monomial, ...] = ()
        if (
            self.gens
            and other.gens
            and len(self.gens) * len(other.gens) <= _FLOOR_GENS_CAP
        ):
            gens = st.ideal_product(self.gens, other.gens)
        # A slab on one side pushes the other side's generators up.
        if self.slab is not None and other.gens:
            alt = self.slab + min(mono_degree(g) for g in other.gens)
            slab = alt if slab is None else min(slab, alt)
        if other.slab is not None and self.gens:
            alt = other.slab + min(mono_degree(g) for g in self.gens)
            slab = alt if slab is None else min(slab, alt)
        return Floor(gens, slab)

    def intersect(self, other: "Floor") -> "Floor":
        slab: Optional[int] = None
        if self.slab is not None and other.slab is not None:
            slab = max(self.slab, other.slab)
        gens: Tuple[Monomial, ...] = ()
        if (
            self.gens
            and other.gens
            and len(self.gens) * len(other.gens) <= _FLOOR_GENS_CAP
        ):
            gens = st.ideal_intersect(self.gens, other.gens)
        return Floor(gens, slab)

    def shifted(self, nvars: int) -> "Floor":
        """Floor of m * (this ideal)."""
        axes = [
            tuple(1 if j == i else 0 for j in range(nvars)) for i in range(nvars)
        ]
        gens = st.ideal_product(self.gens, tuple(axes)) if self.gens else ()
        return Floor(gens, None if self.slab is None else self.slab + 1)

    def explicit_monomials(self, nvars: int) -> Tuple[Monomial, ...]:
        """Materialize all generators, including the slab when present."""
        if self.slab is None:
            return self.gens
        return st.minimalize(
            self.gens + tuple(st.monomials_of_degree(nvars, self.slab))
        )

    def __repr__(self):
        return f"Floor(gens={len(self.gens)}, slab={self.slab})"


EMPTY_FLOOR = Floor()


class AmbientRing:
    """S/I0 with S a power-series ring in named variables over k."""

    def __init__(
        self,
        variables: Sequence[str],
        relations: Sequence[Polynomial] = (),
        characteristic: int = 0,
        max_truncation: int = 64,
    ):
        self.variables = tuple(variables)
        self.nvars = len(self.variables)
        self.field = field_for_characteristic(characteristic)
        self.characteristic = characteristic
        self.max_truncation = max_truncation
        rels = [r for r in relations if not r.is_zero()]
        self.relations = tuple(rels)
        self.mono_relations = st.minimalize(
            r.monomial() for r in rels if r.is_monomial()
        )
        self.poly_relations = tuple(r for r in rels if not r.is_monomial())
        self.relation_class = MONOMIAL if not self.poly_relations else GENERAL
        self._lock = threading.RLock()
        self._fq_cache: Dict[Tuple, "FiniteQuotient"] = {}
        self._span_cache: Dict[Tuple, SpanBuilder] = {}
        self._length_cache: Dict[int, object] = {}
        self._next_id = 0

    # -- construction ---------------------------------------------------

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self.variables, self.field)

    def ideal(
        self, gens: Iterable[Polynomial], floor: Optional[Floor] = None
    ) -> "IdealHandle":
        return IdealHandle(
            self,
            tuple(dict.fromkeys(g for g in gens if not g.is_zero())),
            ("atom",),
            floor,
        )

    def ideal_from_strings(self, texts: Iterable[str]) -> "IdealHandle":
        return self.ideal([self.parse(t) for t in texts])

    def monomial_ideal(self, monos: Iterable[Monomial]) -> "IdealHandle":
        return self.ideal([monomial_poly(self.nvars, m, self.field) for m in monos])

    def unit_ideal(self) -> "IdealHandle":
        return self.monomial_ideal([(0,) * self.nvars])

    def zero_ideal(self) -> "IdealHandle":
        return self.ideal([])

    def maximal_ideal(self) -> "IdealHandle":
        handle = self.monomial_ideal(self._axes())
        handle.learn_slab(1)
        return handle

    def _axes(self) -> List[Monomial]:
        return [
            tuple(1 if j == i else 0 for j in range(self.nvars))
            for i in range(self.nvars)
        ]

    def _new_id(self) -> int:
        with self._lock:
            self._next_id += 1
            return self._next_id

    def dimension_hint(self) -> Optional[int]:
        if self.relation_class == MONOMIAL:
            return st.ring_dimension_monomial(self.mono_relations, self.nvars)
        return None

    def quotient_ring(self, extra: Sequence[Polynomial]) -> "AmbientRing":
        return AmbientRing(
            self.variables,
            list(self.relations) + list(extra),
            self.characteristic,
            self.max_truncation,
        )

    def describe_element(self, p: Polynomial) -> str:
        return p.to_string(self.variables)

    def finite_quotient(self, floor: Floor) -> "FiniteQuotient":
        gens = tuple(sorted(st.minimalize(floor.gens + self.mono_relations)))
        key = (gens, floor.slab)
        with self._lock:
            fq = self._fq_cache.get(key)
            if fq is None:
                fq = FiniteQuotient(self, gens, floor.slab)
                self._fq_cache[key] = fq
            return fq

    # -- backend facade: the filtration engine talks through these names,
    # which the semigroup backend mirrors.  Bodies live at module level.

    def length(self, h):
        return length(h)

    def quotient_len(self, inner, outer):
        return quotient_length(inner, outer)

    def sum(self, a, b):
        return ideal_sum(a, b)

    def product(self, a, b):
        return ideal_product(a, b)

    def power(self, a, k):
        return ideal_power(a, k)

    def colon(self, a, b):
        return ideal_colon(a, b)

    def intersect(self, a, b):
        return ideal_intersect(a, b)

    def leq(self, a, b):
        return ideal_leq(a, b)

    def equal(self, a, b):
        return ideal_equal(a, b)

    def member(self, f, h):
        return membership(f, h)

    def scale(self, a, f):
        return scale_by_element(a, f)

    def add_elem(self, a, f):
        return add_element(a, f)

    def parse_element(self, data):
        if isinstance(data, Polynomial):
            return data
        return self.parse(str(data))

    def element_string(self, f):
        return f.to_string(self.variables)

    def annihilator_data(self, elem, modulo):
        """((modulo : elem), lambda of its image in A/modulo) or None.

        None means the annihilator is outside the exact toolkit for this
        ring class; InfiniteLength as the length means unbounded torsion.
        """
        if not self.relations and modulo.is_zero() and not elem.is_zero():
            # Regular ambient ring is a domain: nonzero elements are regular.
            return self.zero_ideal(), 0
        if (
            self.relation_class == MONOMIAL
            and elem.is_monomial()
            and modulo.all_monomial()
        ):
            base = st.minimalize(tuple(modulo.monomials()) + self.mono_relations)
            if not base:
                return self.zero_ideal(), 0
            colon_gens = st.colon_by_ideal(base, (elem.monomial(),))
            colon = self.monomial_ideal(colon_gens)
            try:
                lam = st.gap_count(base, colon_gens, self.nvars)
            except TruncationLimit:
                return colon, InfiniteLength(caveat=True)
            return colon, lam
        return None

    def h0_data(self, assert_positive_depth: bool = False):
        return h0_saturation(self, assert_positive_depth)

    def quotient_ring_by_element(self, elem):
        return self.quotient_ring([elem])

    def integral_closure(self, h):
        return integral_closure_monomial(h)

    def superficial_candidates(self, q, rng, coeff_bound: int = 9):
        """Monomial scan over the generators first, then seeded random
        combinations with small positive coefficients."""
        gens = sorted(q.gens, key=lambda g: (g.max_degree(), g.key()))
        for g in gens:
            if g.is_monomial():
                yield g
        for g in gens:
            if not g.is_monomial():
                yield g
        while True:
            combo = None
            for g in gens:
                c = self.field.from_int(rng.randint(1, coeff_bound))
                part = g.scale(c, self.field)
                combo = part if combo is None else combo.add(part, self.field)
            yield combo


class IdealHandle:
    """Finitely generated ideal of an AmbientRing (implicitly including I0).

    floor is a certified monomial subideal; its staircase is the
    linear-algebra modulus for exact length computations.
    """

    __slots__ = ("ring", "gens", "structure", "floor", "uid")

    def __init__(
        self,
        ring: AmbientRing,
        gens: Tuple[Polynomial, ...],
        structure: Tuple,
        floor: Optional[Floor] = None,
    ):
        self.ring = ring
        self.gens = gens
        self.structure = structure
        own = tuple(g.monomial() for g in gens if g.is_monomial())
        base = floor if floor is not None else EMPTY_FLOOR
        self.floor = Floor(base.gens + own, base.slab) if own else base
        self.uid = ring._new_id()

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(
            g.is_monomial() and mono_degree(g.monomial()) == 0 for g in self.gens
        )

    def all_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def monomials(self) -> Tuple[Monomial, ...]:
        return tuple(g.monomial() for g in self.gens)

    def poly_gens(self) -> Tuple[Polynomial, ...]:
        return tuple(g for g in self.gens if not g.is_monomial())

    def learn_slab(self, slab: int) -> None:
        """Record a certified containment of the full degree slab."""
        if self.floor.slab is None or slab < self.floor.slab:
            self.floor = Floor(self.floor.gens, slab)

    def learn_floor(self, other: Floor) -> None:
        self.floor = self.floor.union(other)

    def gens_strings(self) -> List[str]:
        return [g.to_string(self.ring.variables) for g in self.gens]

    def __repr__(self):
        return f"Ideal({', '.join(self.gens_strings())})"


class FiniteQuotient:
    """Vector-space model of S/(modulus + I0) on the standard monomials."""

    def __init__(
        self,
        ring: AmbientRing,
        modulus_gens: Tuple[Monomial, ...],
        cutoff: Optional[int],
    ):
        self.ring = ring
        self.modulus_gens = modulus_gens
        self.cutoff = cutoff
        if (
            cutoff is None
            and st.staircase_count(modulus_gens, ring.nvars) == st.INFINITE
        ):
            raise TruncationLimit("modulus ideal is not m-primary")
        self.basis = st.standard_monomials(modulus_gens, ring.nvars, cutoff)
        self.index = {m: i for i, m in enumerate(self.basis)}
        self._rel_span: Optional[SpanBuilder] = None

    def nf_poly(self, p: Polynomial) -> Row:
        f = self.ring.field
        row: Row = {}
        for m, c in p.terms.items():
            i = self.index.get(m)
            if i is not None:
                cur = row.get(i)
                nv = f.add(cur, c) if cur is not None else c
                if f.is_zero(nv):
                    row.pop(i, None)
                else:
                    row[i] = nv
        return row

    def row_times_var(self, row: Row, var: int) -> Row:
        f = self.ring.field
        out: Row = {}
        basis = self.basis
        index = self.index
        for i, c in row.items():
            m = basis[i]
            m2 = m[:var] + (m[var] + 1,) + m[var + 1 :]
            j = index.get(m2)
            if j is not None:
                cur = out.get(j)
                nv = f.add(cur, c) if cur is not None else c
                if f.is_zero(nv):
                    out.pop(j, None)
                else:
                    out[j] = nv
        return out

    def row_times_poly(self, row: Row, p: Polynomial) -> Row:
        f = self.ring.field
        out: Row = {}
        for i, c in row.items():
            m = self.basis[i]
            for pm, pc in p.terms.items():
                j = self.index.get(mono_mul(m, pm))
                if j is not None:
                    coeff = f.mul(c, pc)
                    cur = out.get(j)
                    nv = f.add(cur, coeff) if cur is not None else coeff
                    if f.is_zero(nv):
                        out.pop(j, None)
                    else:
                        out[j] = nv
        return out

    def saturate(self, sb: SpanBuilder, seed_rows: Iterable[Row]) -> None:
        """Close the span under multiplication by the ring variables."""
        queue = deque(seed_rows)
        nvars = self.ring.nvars
        while queue:
            row = queue.popleft()
            if not row or not sb.add(row):
                continue
            for var in range(nvars):
                nxt = self.row_times_var(row, var)
                if nxt:
                    queue.append(nxt)

    def rel_span(self) -> SpanBuilder:
        """Saturated span of the defining poly relations; built once."""
        if self._rel_span is None:
            sb = SpanBuilder(self.ring.field)
            self.saturate(sb, [self.nf_poly(p) for p in self.ring.poly_relations])
            self._rel_span = sb
        return self._rel_span

    def overlay(self) -> SpanBuilder:
        return SpanBuilder(self.ring.field, base=self.rel_span())

    def unit_row(self, i: int) -> Row:
        return {i: self.ring.field.from_int(1)}


def span_of(ideal: IdealHandle, fq: FiniteQuotient) -> SpanBuilder:
    """Echelon span of (ideal + I0 + modulus)/modulus inside fq, cached.

    Cached builders are shared and must be treated as read-only.
    """
    ring = ideal.ring
    key = (ideal.uid, fq.modulus_gens, fq.cutoff)
    with ring._lock:
        hit = ring._span_cache.get(key)
    if hit is not None:
        return hit
    sb = _compute_span(ideal, fq)
    with ring._lock:
        ring._span_cache[key] = sb
    return sb


def _compute_span(ideal: IdealHandle, fq: FiniteQuotient) -> SpanBuilder:
    kind = ideal.structure[0]
    if kind == "product":
        a, b = ideal.structure[1], ideal.structure[2]
        small, big = (a, b) if len(a.gens) <= len(b.gens) else (b, a)
        base = span_of(big, fq)
        # Relation multiples already reduce to zero, so only the rows owned
        # by the factor's layer seed the product.
        sb = fq.overlay()
        seeds: List[Row] = []
        for g in small.gens:
            for row in base.own_rows():
                seeds.append(fq.row_times_poly(row, g))
        fq.saturate(sb, seeds)
        return sb
    if kind == "sum":
        a, b = ideal.structure[1], ideal.structure[2]
        sa = span_of(a, fq)
        out = SpanBuilder(ideal.ring.field, base=sa)
        fq.saturate(out, [dict(r) for r in span_of(b, fq).own_rows()])
        return out
    sb = fq.overlay()
    fq.saturate(sb, [fq.nf_poly(g) for g in ideal.gens])
    return sb


# -- length ----------------------------------------------------------------


def _floor_modulus(ideal: IdealHandle) -> Optional[Floor]:
    if ideal.floor.finite_over(ideal.ring):
        return ideal.floor
    return None


def _certified_socle(fq: FiniteQuotient, sb: SpanBuilder, D: int) -> Optional[int]:
    """Smallest s with every staircase monomial of degree >= s in the span;
    only degrees below D are inspected, and s = D is reported as failure."""
    by_degree: Dict[int, List[int]] = {}
    for i, m in enumerate(fq.basis):
        by_degree.setdefault(mono_degree(m), []).append(i)
    socle = D
    for s in range(D - 1, -1, -1):
        if all(sb.contains(fq.unit_row(i)) for i in by_degree.get(s, [])):
            socle = s
        else:
            break
    return socle if socle <= D - 1 else None


def _adaptive_length(ideal: IdealHandle) -> object:
    """Truncation path: grow the slab cutoff until the socle certificate fires."""
    ring = ideal.ring
    maxdeg = max([g.max_degree() for g in ideal.gens] + [1])
    D = min(max(maxdeg + 2, 4), ring.max_truncation)
    prev_dim = None
    grew = False
    while True:
        fq = ring.finite_quotient(Floor(ideal.floor.gens, D))
        sb = _compute_span(ideal, fq)
        dim = len(fq.basis) - sb.total_rank
        socle = _certified_socle(fq, sb, D)
        if socle is not None:
            ideal.learn_slab(socle)
            return dim
        if prev_dim is not None and dim > prev_dim:
            grew = True
        prev_dim = dim
        if D >= ring.max_truncation:
            if grew:
                return InfiniteLength(caveat=True)
            raise TruncationLimit(
                f"no m-primariness certificate up to truncation {ring.max_truncation}"
            )
        D = min(max(D + 3, (D * 3) // 2), ring.max_truncation)


def length(ideal: IdealHandle) -> object:
    """lambda(A/ideal); InfiniteLength when the colength is not finite."""
    ring = ideal.ring
    cached = ring._length_cache.get(ideal.uid)
    if cached is not None:
        return cached
    result = _length_uncached(ideal)
    with ring._lock:
        ring._length_cache[ideal.uid] = result
    return result


def _length_uncached(ideal: IdealHandle) -> object:
    ring = ideal.ring
    if ideal.is_zero():
        if ring.relation_class == MONOMIAL:
            mono = st.staircase_count(ring.mono_relations, ring.nvars)
            return InfiniteLength() if mono == st.INFINITE else mono
        return _adaptive_length(ideal)
    if ideal.all_monomial() and ring.relation_class == MONOMIAL:
        mono = st.staircase_count(
            st.minimalize(ideal.monomials() + ring.mono_relations), ring.nvars
        )
        return InfiniteLength() if mono == st.INFINITE else mono
    modulus = _floor_modulus(ideal)
    if modulus is None:
        return _adaptive_length(ideal)
    fq = ring.finite_quotient(modulus)
    sb = span_of(ideal, fq)
    return len(fq.basis) - sb.total_rank


# -- ideal algebra ----------------------------------------------------------


def _same_ring(a: IdealHandle, b: IdealHandle) -> AmbientRing:
    if a.ring is not b.ring:
        raise RingMismatch("ideals live over different rings")
    return a.ring


def ideal_sum(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    ring = _same_ring(a, b)
    gens = tuple(dict.fromkeys(a.gens + b.gens))
    return IdealHandle(ring, gens, ("sum", a, b), a.floor.union(b.floor))


def ideal_product(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    ring = _same_ring(a, b)
    if a.is_unit():
        return b
    if b.is_unit():
        return a
    if a.all_monomial() and b.all_monomial():
        monos = st.ideal_product(a.monomials(), b.monomials())
        gens = tuple(monomial_poly(ring.nvars, m, ring.field) for m in monos)
    else:
        gens = tuple(
            dict.fromkeys(x.mul(y, ring.field) for x in a.gens for y in b.gens)
        )
    return IdealHandle(ring, gens, ("product", a, b), a.floor.product(b.floor))


def ideal_power(a: IdealHandle, k: int) -> IdealHandle:
    if k < 0:
        raise Unsupported("negative ideal power")
    if k == 0:
        return a.ring.unit_ideal()
    out = a
    for _ in range(k - 1):
        out = ideal_product(out, a)
    return out


def scale_by_element(a: IdealHandle, f: Polynomial) -> IdealHandle:
    return ideal_product(a.ring.ideal([f]), a)


def add_element(a: IdealHandle, f: Polynomial) -> IdealHandle:
    return ideal_sum(a, a.ring.ideal([f]))


def _floor_shift(a: IdealHandle) -> Optional[Floor]:
    """Certified modulus inside m*a, if available."""
    ring = a.ring
    if a.floor.is_empty():
        val = length(a)  # adaptive path records a slab when it certifies
        if not isinstance(val, int) and a.floor.is_empty():
            return None
    shifted = a.floor.shifted(ring.nvars)
    if shifted.finite_over(ring):
        return shifted
    return None


def ideal_leq(a: IdealHandle, b: IdealHandle) -> bool:
    """Is a contained in b (+ I0)?

    Exact by Nakayama: a lies in b iff a lies in b + m*a, and the latter is a
    finite check over a certified monomial modulus inside b or inside m*a.
    """
    ring = _same_ring(a, b)
    if a.is_zero():
        return True
    if a.all_monomial() and b.all_monomial() and ring.relation_class == MONOMIAL:
        big = st.minimalize(tuple(b.monomials()) + ring.mono_relations)
        return all(st.contains_monomial(big, m) for m in a.monomials())
    shifted = _floor_modulus(b)
    if shifted is None:
        shifted = _floor_shift(a)
    if shifted is None:
        try:
            val = length(b)  # may certify a slab for b
        except TruncationLimit:
            val = None
        if isinstance(val, int):
            shifted = _floor_modulus(b)
    if shifted is None:
        raise NotComputable("containment test needs a certified m-primary floor")
    fq = ring.finite_quotient(shifted)
    sb = SpanBuilder(ring.field, base=span_of(b, fq))
    seeds = []
    for g in a.gens:
        base = fq.nf_poly(g)
        for var in range(ring.nvars):
            seeds.append(fq.row_times_var(base, var))
    fq.saturate(sb, seeds)
    return all(sb.contains(fq.nf_poly(g)) for g in a.gens)


def ideal_equal(a: IdealHandle, b: IdealHandle) -> bool:
    return ideal_leq(a, b) and ideal_leq(b, a)


def membership(f: Polynomial, ideal: IdealHandle) -> bool:
    """f in ideal (+ I0)?"""
    ring = ideal.ring
    if f.is_zero():
        return True
    if f.is_monomial() and ideal.all_monomial() and ring.relation_class == MONOMIAL:
        return st.contains_monomial(
            st.minimalize(tuple(ideal.monomials()) + ring.mono_relations),
            f.monomial(),
        )
    return ideal_leq(ring.ideal([f]), ideal)


def _quotient_basis(fq: FiniteQuotient, sb: SpanBuilder) -> List[int]:
    taken = sb.pivot_columns()
    return [i for i in range(len(fq.basis)) if i not in taken]


def ideal_colon(ideal: IdealHandle, by: IdealHandle) -> IdealHandle:
    """(ideal : by), for m-primary ideal or through the monomial rule."""
    ring = _same_ring(ideal, by)
    if by.is_zero():
        raise Unsupported("colon by the zero ideal")
    if ideal.all_monomial() and by.all_monomial() and ring.relation_class == MONOMIAL:
        gens = st.colon_by_ideal(
            st.minimalize(tuple(ideal.monomials()) + ring.mono_relations),
            by.monomials(),
        )
        return ring.monomial_ideal(gens)
    lam = length(ideal)
    if not isinstance(lam, int):
        raise NotComputable(
            "colon requires an m-primary ideal or the monomial fast path"
        )
    modulus = _floor_modulus(ideal)
    if modulus is None:
        raise NotComputable("no certified modulus for the colon")
    fq = ring.finite_quotient(modulus)
    sb = span_of(ideal, fq)
    qbasis = _quotient_basis(fq, sb)
    width = len(fq.basis)
    images: List[Row] = []
    for bi in qbasis:
        stacked: Row = {}
        row0 = fq.unit_row(bi)
        for t, g in enumerate(by.gens):
            img = sb.reduce(fq.row_times_poly(row0, g))
            for c, v in img.items():
                stacked[t * width + c] = v
        images.append(stacked)
    ker = kernel_basis(images, ring.field, domain_offset=width * (len(by.gens) + 1))
    gens = list(ideal.gens)
    for vec in ker:
        gens.append(
            Polynomial(
                ring.nvars,
                {fq.basis[qbasis[di]]: coeff for di, coeff in vec.items()},
                ring.field,
            )
        )
    return IdealHandle(ring, tuple(gens), ("atom",), ideal.floor)


def ideal_intersect(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    ring = _same_ring(a, b)
    if a.all_monomial() and b.all_monomial() and ring.relation_class == MONOMIAL:
        return ring.monomial_ideal(st.ideal_intersect(a.monomials(), b.monomials()))
    la, lb = length(a), length(b)
    if not isinstance(la, int) or not isinstance(lb, int):
        raise NotComputable("intersection needs m-primary operands here")
    floor = a.floor.intersect(b.floor)
    if not floor.finite_over(ring):
        raise NotComputable("no certified modulus for the intersection")
    fq = ring.finite_quotient(floor)
    sa = span_of(a, fq)
    sbn = span_of(b, fq)
    width = len(fq.basis)
    inter = intersect_spans(sa.all_rows(), sbn.all_rows(), ring.field, offset=width)
    gens: List[Polynomial] = [
        monomial_poly(ring.nvars, m, ring.field)
        for m in floor.explicit_monomials(ring.nvars)
    ]
    for row in inter:
        gens.append(
            Polynomial(ring.nvars, {fq.basis[i]: c for i, c in row.items()}, ring.field)
        )
    return IdealHandle(ring, tuple(gens), ("atom",), floor)


def quotient_length(inner: IdealHandle, outer: IdealHandle) -> int:
    """lambda(outer/inner) for inner contained in outer."""
    li, lo = length(inner), length(outer)
    if isinstance(li, int) and isinstance(lo, int):
        return li - lo
    ring = inner.ring
    if (
        inner.all_monomial()
        and outer.all_monomial()
        and ring.relation_class == MONOMIAL
    ):
        return st.gap_count(
            st.minimalize(tuple(inner.monomials()) + ring.mono_relations),
            outer.monomials(),
            ring.nvars,
        )
    raise NotComputable("relative length outside the finite-colength toolkit")


def h0_saturation(ring: AmbientRing, assert_positive_depth: bool = False):
    """W = (I0 : m^inf)/I0 with lambda(W), the quotient ring and a status tag."""
    if ring.relation_class == MONOMIAL:
        if not ring.mono_relations:
            return ring.zero_ideal(), 0, ring, "PROVEN"
        w_gens = st.saturate_wrt_maximal(ring.mono_relations, ring.nvars)
        lam = st.gap_count(ring.mono_relations, w_gens, ring.nvars)
        if lam == 0:
            return ring.zero_ideal(), 0, ring, "PROVEN"
        quotient = AmbientRing(
            ring.variables,
            [monomial_poly(ring.nvars, m, ring.field) for m in w_gens],
            ring.characteristic,
            ring.max_truncation,
        )
        return ring.monomial_ideal(w_gens), lam, quotient, "PROVEN"
    if assert_positive_depth:
        return ring.zero_ideal(), 0, ring, "ASSERTED"
    raise NotComputable(
        "torsion submodule needs a monomial defining ideal or a depth assertion"
    )


def integral_closure_monomial(ideal: IdealHandle) -> IdealHandle:
    ring = ideal.ring
    if ring.relations or not ideal.all_monomial():
        raise Unsupported(
            "integral closure only for monomial ideals of a regular ring"
        )
    lam = length(ideal)
    if not isinstance(lam, int):
        raise Unsupported("integral closure needs an m-primary monomial ideal")
    return ring.monomial_ideal(
        st.integral_closure_monomial_gens(ideal.monomials(), ring.nvars)
    )
