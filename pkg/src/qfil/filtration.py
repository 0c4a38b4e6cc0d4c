"""Good q-filtrations and their Hilbert data.

A filtration is a finite explicit prefix M_1 >= ... >= M_t followed by the
q-adic tail M_{n+1} = q*M_n.  Members are handles of the underlying backend;
all Hilbert values are exact lengths, and series extraction happens through
the window-certified kernel.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .backend import expect_finite
from .errors import HypothesisFailed, InputError, WindowExceeded
from .series import (
    Certification,
    CoefficientVector,
    RationalSeries,
    infer_denominator_exponent,
    series_coefficients,
    series_from_window,
)

ADIC = "ADIC"
INDUCED = "INDUCED"
PREFIX = "PREFIX"
MI = "MI"
JADIC = "JADIC"
EFILT = "EFILT"
SATURATED = "SATURATED"
RATLIFF_RUSH = "RATLIFF_RUSH"

DEFAULT_WINDOW = 3
JMAX_CAP = 64


class Filtration:
    """Descending chain M_0 = A >= M_1 >= ... with the q-adic tail rule."""

    def __init__(
        self,
        ring,
        q,
        prefix: Sequence = (),
        kind: str = ADIC,
        validate: bool = True,
        label: str = "",
    ):
        self.ring = ring
        self.q = q
        self.prefix = tuple(prefix)
        self.kind = kind
        self.label = label or kind
        self._members: List = [ring.unit_ideal(), *self.prefix]
        self._lock = threading.RLock()
        if validate:
            self._validate()

    @property
    def prefix_length(self) -> int:
        return len(self.prefix)

    def _validate(self) -> None:
        lam_q = self.ring.length(self.q)
        if not isinstance(lam_q, int):
            raise HypothesisFailed("q must have finite colength")
        for j in range(len(self._members) - 1):
            a, b = self._members[j], self._members[j + 1]
            if not self.ring.leq(b, a):
                raise HypothesisFailed(f"prefix is not descending at index {j}")
            if not self.ring.leq(self.ring.product(self.q, a), b):
                raise HypothesisFailed(f"q*M_{j} is not inside M_{j + 1}")

    def member(self, n: int):
        """M_n, lazily extended along the tail rule and memoized."""
        if n < 0:
            raise InputError("negative filtration index")
        with self._lock:
            while len(self._members) <= n:
                self._members.append(
                    self.ring.product(self.q, self._members[-1])
                )
            return self._members[n]

    def shifted_by(self, extra) -> "QuotientView":
        return QuotientView(self, extra)

    def __repr__(self):
        return f"Filtration({self.label}, prefix={len(self.prefix)})"


class QuotientView:
    """Members of a filtration modulo a fixed ideal: (M_n + P) as handles.

    This realizes the quotient filtration on A/P without constructing the
    quotient ring: lengths of (M_n + P) compute its Hilbert function.
    """

    def __init__(self, base: Filtration, extra):
        self.base = base
        self.extra = extra
        self.ring = base.ring
        self.q = base.q
        self.kind = base.kind
        self.prefix_length = base.prefix_length
        self._memo = {}

    def member(self, n: int):
        got = self._memo.get(n)
        if got is None:
            got = self.ring.sum(self.base.member(n), self.extra)
            self._memo[n] = got
        return got


@dataclass(frozen=True)
class HilbertData:
    """Window of the Hilbert function with its certified series."""

    values: Tuple[int, ...]  # H(0..jmax)
    samuel: Tuple[int, ...]  # H^1(0..jmax) = lambda(A/M_{j+1})
    series: RationalSeries
    dimension: int
    coefficients: CoefficientVector
    window: int
    certification: Certification

    @property
    def h_vector(self) -> Tuple[int, ...]:
        return self.series.numerator.coeffs

    @property
    def h_degree(self) -> int:
        return self.series.numerator.degree

    @property
    def stabilization_index(self) -> int:
        return max(self.h_degree, 0)

    def e(self, i: int) -> int:
        return self.coefficients.values[i]

    def h(self, i: int) -> int:
        return self.series.numerator.coeff(i)

    @property
    def e0(self) -> int:
        return self.coefficients.values[0]

    def samuel_value(self, n: int) -> int:
        """lambda(A/M_{n+1}) within the computed window."""
        return self.samuel[n]


def hilbert(
    filtration,
    jmax: Optional[int] = None,
    window: int = DEFAULT_WINDOW,
    dimension: Optional[int] = None,
    tail_certified: bool = False,
) -> HilbertData:
    """Exact Hilbert data of a Filtration or QuotientView.

    jmax grows automatically (up to the cap) until the trailing h-window is
    clean.  The certification is WINDOW unless the caller supplies the
    reduction-stabilized tail certificate.
    """
    prefix_len = filtration.prefix_length
    j = jmax if jmax is not None else max(8, 2 * prefix_len + window + 2)
    samuel: List[int] = []
    while True:
        while len(samuel) <= j:
            n = len(samuel)
            samuel.append(
                expect_finite(
                    filtration.ring.length(filtration.member(n + 1)),
                    f"lambda(A/M_{n + 1})",
                )
            )
        values = [samuel[0]] + [samuel[k] - samuel[k - 1] for k in range(1, j + 1)]
        if any(v < 0 for v in values):
            raise HypothesisFailed("Hilbert function is negative: chain not descending")
        try:
            if dimension is None:
                r = infer_denominator_exponent(values, window)
            else:
                r = dimension
            series, cert = series_from_window(values, r, window, tail_certified)
            break
        except WindowExceeded:
            if j >= JMAX_CAP:
                raise
            j = min(2 * j, JMAX_CAP)
    coeffs = CoefficientVector(
        series_coefficients(series, r).values, cert
    )
    return HilbertData(
        values=tuple(values),
        samuel=tuple(samuel),
        series=series,
        dimension=r,
        coefficients=coeffs,
        window=window,
        certification=cert,
    )


# -- derived filtrations -----------------------------------------------------


def adic_filtration(ring, q, label: str = "") -> Filtration:
    return Filtration(ring, q, (), ADIC, label=label or "adic")


def induced_filtration(ring, q, L, label: str = "") -> Filtration:
    """M_0 = A, M_{j+1} = q^j L."""
    return Filtration(ring, q, (L,), INDUCED, label=label or "induced")


def prefix_filtration(ring, q, prefix: Sequence, label: str = "") -> Filtration:
    return Filtration(ring, q, prefix, PREFIX, label=label or "prefix")


def mi_filtration(base: Filtration, I) -> Filtration:
    """M, IM, IM_1, IM_2, ...; a good q-filtration whenever I contains q."""
    ring = base.ring
    if not ring.leq(base.q, I):
        raise HypothesisFailed("the auxiliary ideal must contain q")
    t = base.prefix_length
    prefix = [ring.product(I, base.member(j)) for j in range(t + 1)]
    return Filtration(ring, base.q, prefix, MI, label="mi")


def jadic_filtration(ring, J) -> Filtration:
    return Filtration(ring, J, (), JADIC, label="jadic")


def e_filtration(base: Filtration, J) -> Filtration:
    """M, M_1, J M_1, J^2 M_1, ...; a good J-filtration."""
    return Filtration(
        base.ring, J, (base.member(1),), EFILT, label="efilt"
    )


def saturated_filtration(base: Filtration, torsion_lift, quotient_ring) -> Filtration:
    """Image filtration on A/W; only the artinian backend can host it."""
    ring = base.ring
    if quotient_ring is ring:
        return base
    def push(handle):
        return quotient_ring.ideal(handle.gens)
    t = base.prefix_length
    prefix = [push(base.member(j)) for j in range(1, t + 1)]
    return Filtration(
        quotient_ring, push(base.q), prefix, SATURATED, label="saturated"
    )


def ratliff_rush_filtration(base: Filtration, closures: Sequence) -> Filtration:
    """Prefix of computed closures, then the q-adic tail."""
    return Filtration(
        base.ring, base.q, tuple(closures), RATLIFF_RUSH,
        validate=False, label="ratliff-rush",
    )


def quotient_instance(base: Filtration, element) -> Filtration:
    """The filtration {(M_j + (a))/(a)} on A/(a); artinian backend only."""
    ring = base.ring
    quotient = ring.quotient_ring_by_element(element)
    if quotient is None:
        raise HypothesisFailed(
            "quotient rings are only representable in the power-series backend"
        )
    def push(handle):
        return quotient.ideal(handle.gens)
    prefix = [push(base.member(j)) for j in range(1, base.prefix_length + 1)]
    return Filtration(quotient, push(base.q), prefix, base.kind, label="quotient")
