"""Combinatorial ideal arithmetic for affine semigroup rings k[[Gamma]].

Gamma is a finitely generated sub-semigroup of N^d; monomial ideals are
semigroup ideals, unions of translated copies of Gamma.  All lengths are gap
counts with explicit termination certificates: once a full degree window of
Gamma lies inside an ideal, every higher degree does too, by peeling
generators.
"""

from __future__ import annotations

import math
import threading
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .backend import InfiniteLength
from .errors import NotComputable, RingMismatch, TruncationLimit, Unsupported

Vector = Tuple[int, ...]


def _vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def _vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def _deg(a: Vector) -> int:
    return sum(a)


class AffineSemigroup:
    """Finitely generated sub-semigroup of N^d containing 0."""

    def __init__(
        self,
        generators: Sequence[Sequence[int]],
        enum_bound: int = 4096,
        cover_bound: int = 160,
    ):
        gens = [tuple(int(x) for x in g) for g in generators]
        if not gens:
            raise Unsupported("semigroup needs at least one generator")
        d = len(gens[0])
        if any(len(g) != d for g in gens):
            raise Unsupported("semigroup generators must share a dimension")
        if any(_deg(g) == 0 for g in gens):
            raise Unsupported("semigroup generators must be nonzero")
        if any(any(x < 0 for x in g) for g in gens):
            raise Unsupported("semigroup generators must be nonnegative")
        if d == 1:
            g = 0
            for v in gens:
                g = math.gcd(g, v[0])
            if g > 1:
                gens = [(v[0] // g,) for v in gens]
        self.dimension = d
        self.generators: Tuple[Vector, ...] = tuple(sorted(set(gens)))
        self.max_gen_degree = max(_deg(g) for g in self.generators)
        self.enum_bound = enum_bound
        self.cover_bound = cover_bound
        self._member_memo: Dict[Vector, bool] = {(0,) * d: True}
        self._lock = threading.RLock()
        self._slab_memo: Dict[int, Tuple[Vector, ...]] = {}

    def member(self, v: Sequence[int]) -> bool:
        v = tuple(int(x) for x in v)
        if any(x < 0 for x in v):
            return False
        memo = self._member_memo
        hit = memo.get(v)
        if hit is not None:
            return hit
        stack = [v]
        while stack:
            cur = stack[-1]
            if cur in memo:
                stack.pop()
                continue
            unresolved = []
            verdict = False
            for g in self.generators:
                nxt = _vec_sub(cur, g)
                if any(x < 0 for x in nxt):
                    continue
                known = memo.get(nxt)
                if known:
                    verdict = True
                    break
                if known is None:
                    unresolved.append(nxt)
            if verdict:
                memo[cur] = True
                stack.pop()
            elif unresolved:
                stack.extend(unresolved)
            else:
                memo[cur] = False
                stack.pop()
        return memo[v]

    def elements_of_degree(self, degree: int) -> Tuple[Vector, ...]:
        with self._lock:
            hit = self._slab_memo.get(degree)
            if hit is not None:
                return hit
        if self.dimension == 1:
            out = ((degree,),) if self.member((degree,)) else ()
        else:
            out = tuple(
                v for v in _compositions(degree, self.dimension) if self.member(v)
            )
        with self._lock:
            self._slab_memo[degree] = out
        return out

    def frobenius_conductor(self) -> int:
        """d = 1 only: least c with every n >= c in the semigroup."""
        if self.dimension != 1:
            raise Unsupported("conductor is a numerical-semigroup notion")
        run = 0
        n = 0
        window = min(g[0] for g in self.generators)
        while n < self.enum_bound:
            if self.member((n,)):
                run += 1
                if run >= window:
                    return n - window + 1
            else:
                run = 0
            n += 1
        raise TruncationLimit("no conductor found within the enumeration bound")


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


class SemigroupIdealHandle:
    """Semigroup ideal: union of g + Gamma over an antichain of generators."""

    __slots__ = ("ring", "gens", "uid")

    def __init__(self, ring: "SemigroupRing", gens: Iterable[Vector]):
        self.ring = ring
        self.gens = ring._minimalize(gens)
        self.uid = ring._new_id()

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(_deg(g) == 0 for g in self.gens)

    def gens_strings(self) -> List[str]:
        return [self.ring.describe_element(g) for g in self.gens]

    def __repr__(self):
        return f"SgIdeal({', '.join(self.gens_strings())})"


class SemigroupRing:
    """Backend facade over k[[Gamma]]; the coefficient field never matters."""

    relation_class = "MONOMIAL"

    def __init__(self, semigroup: AffineSemigroup, characteristic: int = 0):
        self.semigroup = semigroup
        self.characteristic = characteristic
        self.dimension = semigroup.dimension
        self._next = 0
        self._lock = threading.RLock()
        self._length_cache: Dict[Tuple[Vector, ...], object] = {}
        self._cover_cache: Dict[Tuple[Vector, ...], int] = {}

    # -- plumbing -------------------------------------------------------

    def _new_id(self) -> int:
        with self._lock:
            self._next += 1
            return self._next

    def _minimalize(self, gens: Iterable[Vector]) -> Tuple[Vector, ...]:
        sg = self.semigroup
        out: List[Vector] = []
        for g in sorted(set(tuple(v) for v in gens), key=lambda v: (_deg(v), v)):
            if not sg.member(g):
                raise Unsupported(f"ideal generator {g} lies outside the semigroup")
            if not any(self._dominates(g, h) for h in out):
                out.append(g)
        return tuple(out)

    def _dominates(self, g: Vector, h: Vector) -> bool:
        diff = _vec_sub(g, h)
        return all(x >= 0 for x in diff) and self.semigroup.member(diff)

    def describe_element(self, v: Vector) -> str:
        if self.dimension == 1:
            return f"t^{v[0]}"
        return "t^(" + ",".join(str(x) for x in v) + ")"

    def parse_element(self, data) -> Vector:
        if isinstance(data, int):
            if self.dimension != 1:
                raise Unsupported("scalar exponent in a multigraded semigroup")
            return (data,)
        return tuple(int(x) for x in data)

    # -- ideal constructors ----------------------------------------------

    def ideal(self, gens: Iterable) -> SemigroupIdealHandle:
        return SemigroupIdealHandle(self, [self.parse_element(g) for g in gens])

    def unit_ideal(self) -> SemigroupIdealHandle:
        return SemigroupIdealHandle(self, [(0,) * self.dimension])

    def zero_ideal(self) -> SemigroupIdealHandle:
        return SemigroupIdealHandle(self, [])

    def maximal_ideal(self) -> SemigroupIdealHandle:
        """All nonzero elements: generated by the semigroup generators."""
        return SemigroupIdealHandle(self, self.semigroup.generators)

    def dimension_hint(self) -> Optional[int]:
        return self.dimension

    # -- membership and lengths -------------------------------------------

    def ideal_member(self, v: Vector, e: SemigroupIdealHandle) -> bool:
        return any(self._dominates(v, g) for g in e.gens)

    def member(self, v, e: SemigroupIdealHandle) -> bool:
        return self.ideal_member(self.parse_element(v), e)

    def _cover_degree(self, e: SemigroupIdealHandle) -> int:
        """Least t certified so that every Gamma element of degree >= t is in e.

        Certificate: a full window of max_gen_degree consecutive degrees whose
        Gamma elements all lie in e; peeling semigroup generators pushes any
        higher-degree element down into the window without leaving e.
        """
        key = e.gens
        hit = self._cover_cache.get(key)
        if hit is not None:
            return hit
        if e.is_zero():
            raise NotComputable("the zero ideal covers nothing")
        sg = self.semigroup
        window = sg.max_gen_degree
        mindeg = min(_deg(g) for g in e.gens)
        run_start = None
        run = 0
        degree = mindeg
        bound = mindeg + sg.cover_bound
        while degree <= bound:
            slab = sg.elements_of_degree(degree)
            if all(self.ideal_member(v, e) for v in slab):
                if run == 0:
                    run_start = degree
                run += 1
                if run >= window:
                    self._cover_cache[key] = run_start
                    return run_start
            else:
                run = 0
            degree += 1
        raise TruncationLimit(
            "no full covered degree window found; the complement may be infinite"
        )

    def length(self, e: SemigroupIdealHandle) -> object:
        """lambda(A/e) = |Gamma \\ e|, with the window termination certificate."""
        key = e.gens
        hit = self._length_cache.get(key)
        if hit is not None:
            return hit
        if e.is_zero():
            return InfiniteLength()
        cover = self._cover_degree(e)
        count = 0
        for degree in range(cover):
            for v in self.semigroup.elements_of_degree(degree):
                if not self.ideal_member(v, e):
                    count += 1
        with self._lock:
            self._length_cache[key] = count
        return count

    def quotient_len(self, inner: SemigroupIdealHandle, outer: SemigroupIdealHandle) -> int:
        li, lo = self.length(inner), self.length(outer)
        if isinstance(li, int) and isinstance(lo, int):
            return li - lo
        # Count elements of outer \ inner directly (finite when it is finite).
        sg = self.semigroup
        if outer.is_zero():
            return 0
        maxdeg = max(_deg(g) for g in outer.gens)
        count = 0
        degree = min(_deg(g) for g in outer.gens)
        run = 0
        bound = degree + sg.cover_bound
        while degree <= bound:
            slab = [
                v
                for v in sg.elements_of_degree(degree)
                if self.ideal_member(v, outer) and not self.ideal_member(v, inner)
            ]
            count += len(slab)
            if not slab and degree >= maxdeg:
                run += 1
                if run >= sg.max_gen_degree:
                    return count
            else:
                run = 0
            degree += 1
        raise TruncationLimit("relative gap enumeration exceeded the bound")

    # -- ideal algebra ----------------------------------------------------

    def _same(self, a: SemigroupIdealHandle, b: SemigroupIdealHandle):
        if a.ring is not self or b.ring is not self:
            raise RingMismatch("semigroup ideals over different rings")

    def sum(self, a: SemigroupIdealHandle, b: SemigroupIdealHandle) -> SemigroupIdealHandle:
        self._same(a, b)
        return SemigroupIdealHandle(self, list(a.gens) + list(b.gens))

    def product(self, a: SemigroupIdealHandle, b: SemigroupIdealHandle) -> SemigroupIdealHandle:
        self._same(a, b)
        if a.is_unit():
            return b
        if b.is_unit():
            return a
        return SemigroupIdealHandle(
            self, [_vec_add(x, y) for x in a.gens for y in b.gens]
        )

    def power(self, a: SemigroupIdealHandle, k: int) -> SemigroupIdealHandle:
        if k < 0:
            raise Unsupported("negative ideal power")
        if k == 0:
            return self.unit_ideal()
        out = a
        for _ in range(k - 1):
            out = self.product(out, a)
        return out

    def scale(self, a: SemigroupIdealHandle, elem) -> SemigroupIdealHandle:
        v = self.parse_element(elem)
        return SemigroupIdealHandle(self, [_vec_add(v, g) for g in a.gens])

    def add_elem(self, a: SemigroupIdealHandle, elem) -> SemigroupIdealHandle:
        return self.sum(a, self.ideal([elem]))

    def colon(self, e: SemigroupIdealHandle, by: SemigroupIdealHandle) -> SemigroupIdealHandle:
        """(e : by) = {z in Gamma : z + by inside e}."""
        self._same(e, by)
        if by.is_zero():
            raise Unsupported("colon by the zero ideal")
        if e.is_zero():
            return self.zero_ideal()
        sg = self.semigroup
        cover = self._cover_degree(e)
        bound = cover + sg.max_gen_degree
        out = []
        for degree in range(bound + 1):
            for z in sg.elements_of_degree(degree):
                if all(
                    self.ideal_member(_vec_add(z, f), e) for f in by.gens
                ):
                    out.append(z)
        return SemigroupIdealHandle(self, out)

    def intersect(self, a: SemigroupIdealHandle, b: SemigroupIdealHandle) -> SemigroupIdealHandle:
        self._same(a, b)
        if a.is_zero() or b.is_zero():
            return self.zero_ideal()
        sg = self.semigroup
        bound = max(self._cover_degree(a), self._cover_degree(b)) + sg.max_gen_degree
        out = []
        for degree in range(bound + 1):
            for z in sg.elements_of_degree(degree):
                if self.ideal_member(z, a) and self.ideal_member(z, b):
                    out.append(z)
        return SemigroupIdealHandle(self, out)

    def leq(self, a: SemigroupIdealHandle, b: SemigroupIdealHandle) -> bool:
        self._same(a, b)
        return all(self.ideal_member(g, b) for g in a.gens)

    def equal(self, a: SemigroupIdealHandle, b: SemigroupIdealHandle) -> bool:
        return self.leq(a, b) and self.leq(b, a)

    # -- engine services ----------------------------------------------------

    def annihilator_data(self, elem, modulo: SemigroupIdealHandle):
        """((modulo : elem), lambda of its image in A/modulo).

        With modulo = 0 this is the honest annihilator, which vanishes because
        semigroup rings are domains.
        """
        v = self.parse_element(elem)
        if modulo.is_zero():
            return self.zero_ideal(), 0
        try:
            colon = self.colon(modulo, self.ideal([v]))
            return colon, self.quotient_len(modulo, colon)
        except TruncationLimit:
            # No combinatorial bound: the engine falls back to the
            # Cohen-Macaulay certification route.
            return None

    def h0_data(self, assert_positive_depth: bool = False):
        # Semigroup rings are integral domains: no finite-length torsion.
        return self.zero_ideal(), 0, self, "PROVEN"

    def quotient_ring_by_element(self, elem):
        return None

    def superficial_candidates(self, q: SemigroupIdealHandle, rng, coeff_bound: int = 9):
        for g in sorted(q.gens, key=lambda v: (_deg(v), v)):
            yield g

    def element_string(self, elem) -> str:
        return self.describe_element(self.parse_element(elem))
