"""Sparse exact row reduction over an ordered column index space.

Rows are dicts {column_index: scalar}.  SpanBuilder maintains a forward
echelon basis (pivot entries normalized to 1); a builder may be chained over
a read-only base builder, so shared sub-spans (defining relations, an ideal
inside a sum, a containment target) are reduced against without copying.
Everything is exact.
"""

from __future__ import annotations

import heapq
from typing import Dict, Iterable, List, Optional, Sequence, Set

Row = Dict[int, object]


class SpanBuilder:
    """Incremental echelon span over columns ordered by their integer index."""

    __slots__ = ("field", "pivots", "base")

    def __init__(self, field, base: Optional["SpanBuilder"] = None):
        self.field = field
        self.pivots: Dict[int, Row] = {}
        self.base = base

    @property
    def rank(self) -> int:
        """Rank of the rows owned by this layer only."""
        return len(self.pivots)

    @property
    def total_rank(self) -> int:
        return len(self.pivots) + (self.base.total_rank if self.base else 0)

    def _find(self, c: int) -> Optional[Row]:
        layer: Optional[SpanBuilder] = self
        while layer is not None:
            row = layer.pivots.get(c)
            if row is not None:
                return row
            layer = layer.base
        return None

    def _has(self, c: int) -> bool:
        return self._find(c) is not None

    def reduce(self, row: Row) -> Row:
        """Normal form of row modulo the combined span (does not insert).

        Pivot rows have support >= their lead column, so eliminating columns
        in ascending order never reintroduces an earlier pivot column.
        """
        f = self.field
        row = dict(row)
        heap = [c for c in row if self._has(c)]
        if not heap:
            return row
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            cur = row.get(c)
            if cur is None:
                continue
            piv = self._find(c)
            if piv is None:
                continue
            for cc, v in piv.items():
                old = row.get(cc)
                nv = f.sub(old, f.mul(cur, v)) if old is not None else f.neg(
                    f.mul(cur, v)
                )
                if f.is_zero(nv):
                    row.pop(cc, None)
                else:
                    if old is None and self._has(cc):
                        heapq.heappush(heap, cc)
                    row[cc] = nv
        return row

    def add(self, row: Row) -> bool:
        """Insert a row into this layer; returns True if the rank grew."""
        f = self.field
        red = self.reduce(row)
        if not red:
            return False
        lead = min(red)
        inv = red[lead]
        self.pivots[lead] = {c: f.div(v, inv) for c, v in red.items()}
        return True

    def contains(self, row: Row) -> bool:
        return not self.reduce(row)

    def pivot_columns(self) -> Set[int]:
        cols: Set[int] = set()
        layer: Optional[SpanBuilder] = self
        while layer is not None:
            cols.update(layer.pivots)
            layer = layer.base
        return cols

    def own_rows(self) -> List[Row]:
        return list(self.pivots.values())

    def all_rows(self) -> List[Row]:
        rows: List[Row] = []
        layer: Optional[SpanBuilder] = self
        while layer is not None:
            rows.extend(layer.pivots.values())
            layer = layer.base
        return rows

    def back_eliminate(self) -> None:
        """Bring a standalone basis to reduced row-echelon form."""
        assert self.base is None, "cannot back-eliminate a chained builder"
        f = self.field
        for lead in sorted(self.pivots, reverse=True):
            row = self.pivots[lead]
            for other_lead, other in self.pivots.items():
                if other_lead >= lead or lead not in other:
                    continue
                coeff = other[lead]
                for c, v in row.items():
                    old = other.get(c)
                    nv = (
                        f.sub(old, f.mul(coeff, v))
                        if old is not None
                        else f.neg(f.mul(coeff, v))
                    )
                    if f.is_zero(nv):
                        other.pop(c, None)
                    else:
                        other[c] = nv

    def rows(self) -> List[Row]:
        return [dict(self.pivots[c]) for c in sorted(self.pivots)]


def echelonize(rows: Iterable[Row], field) -> List[Row]:
    """Reduced row-echelon form; output rows ordered by pivot column."""
    sb = SpanBuilder(field)
    for r in rows:
        sb.add(r)
    sb.back_eliminate()
    return sb.rows()


def rank_of(rows: Iterable[Row], field) -> int:
    sb = SpanBuilder(field)
    for r in rows:
        sb.add(r)
    return sb.rank


def kernel_basis(images: Sequence[Row], field, domain_offset: int) -> List[Row]:
    """Kernel of the linear map e_i -> images[i].

    Rows (images[i] | e_i) are fed with domain columns shifted past every
    image column; inserted rows whose lead falls inside the domain block are
    pure relations, and their domain parts form an independent kernel basis.
    """
    sb = SpanBuilder(field)
    out: List[Row] = []
    one = field.from_int(1)
    for i, img in enumerate(images):
        row = dict(img)
        row[domain_offset + i] = one
        red = sb.reduce(row)
        if not red:
            continue
        lead = min(red)
        inv = red[lead]
        sb.pivots[lead] = {c: field.div(v, inv) for c, v in red.items()}
        if lead >= domain_offset:
            out.append({c - domain_offset: v for c, v in sb.pivots[lead].items()})
    return out


def intersect_spans(
    a_rows: Sequence[Row], b_rows: Sequence[Row], field, offset: int
) -> List[Row]:
    """Basis of span(a) intersect span(b); offset must exceed every column index.

    Zassenhaus: feed (a | a) then (b | 0); inserted rows supported entirely in
    the shadow block are combinations lying in both spans.
    """
    sb = SpanBuilder(field)
    out: List[Row] = []
    for r in a_rows:
        row = dict(r)
        for c, v in r.items():
            row[offset + c] = v
        sb.add(row)
    for r in b_rows:
        red = sb.reduce(dict(r))
        if not red:
            continue
        lead = min(red)
        inv = red[lead]
        sb.pivots[lead] = {c: field.div(v, inv) for c, v in red.items()}
        if lead >= offset:
            out.append({c - offset: v for c, v in sb.pivots[lead].items()})
    return out
