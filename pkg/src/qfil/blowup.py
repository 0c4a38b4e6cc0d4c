"""Fiber cone and Sally module invariants through filtration identities.

Neither graded object is materialized.  Hilbert values are exact quotient
lengths, the series is extracted from them through the window-certified
kernel, and the defining exact-sequence identity is then asserted as an
equality of rational functions between independently extracted series:

    z P1(f) + P(F)  =  P1(f^I)          (fiber cone)
    (1-z) P(S)      =  P(E) - P(f)      (Sally module)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .backend import expect_finite
from .errors import HypothesisFailed
from .filtration import (
    DEFAULT_WINDOW,
    Filtration,
    HilbertData,
    e_filtration,
    hilbert,
    jadic_filtration,
    mi_filtration,
)
from .invariants import ReductionData
from .series import (
    Certification,
    RationalSeries,
    series_coefficients,
    series_from_window,
)


def _one_minus_z_times(s: RationalSeries) -> RationalSeries:
    if s.denom_exponent >= 1:
        return RationalSeries(s.numerator, s.denom_exponent - 1)
    return RationalSeries(s.numerator.mul_one_minus_z(1), 0)


@dataclass
class FiberConeData:
    aux: Filtration  # the I-shifted filtration M, IM, IM_1, ...
    aux_data: HilbertData
    values: Tuple[int, ...]  # H_F(n) = lambda(M_n / I M_n)
    series: RationalSeries
    f_coeffs: Tuple[int, ...]  # f_0..f_{r-1}
    g_coeffs: Tuple[int, ...]  # g_0..g_r of the shifted filtration
    certification: Certification


def fiber_cone(
    f: Filtration,
    I,
    base: HilbertData,
    window: int = DEFAULT_WINDOW,
) -> FiberConeData:
    """Fiber-cone Hilbert data of f with respect to I >= q."""
    ring = f.ring
    if not ring.leq(f.q, I):
        raise HypothesisFailed("fiber ideal must contain q")
    t = f.prefix_length
    for n in range(t + 2):
        if not ring.leq(f.member(n + 1), ring.product(I, f.member(n))):
            raise HypothesisFailed(
                "fiber cone needs M_{n+1} inside I*M_n on the prefix"
            )
    aux = mi_filtration(f, I)
    aux_data = hilbert(aux, window=window, dimension=base.dimension)
    jmax = min(len(base.samuel), len(aux_data.samuel)) - 1
    direct = []
    for n in range(jmax + 1):
        mn = f.member(n)
        direct.append(
            expect_finite(ring.length(ring.product(I, mn)))
            - expect_finite(ring.length(mn))
        )
    r = base.dimension
    series, cert = series_from_window(direct, r, window)
    # Exact-sequence identity between the three independent extractions.
    lhs = base.series.to_samuel().mul_z().add(series)
    rhs = aux_data.series.to_samuel()
    if lhs != rhs:
        raise HypothesisFailed("fiber-cone series identity failed exactly")
    e = base.coefficients.values
    ei = series_coefficients(aux_data.series, r).values
    f_coeffs = tuple(e[i] + e[i - 1] - ei[i] for i in range(1, r + 1))
    g_coeffs = tuple(
        sum((-1) ** (i - j) * ei[j] for j in range(i + 1)) for i in range(r + 1)
    )
    cert = cert.combine(base.certification).combine(aux_data.certification)
    return FiberConeData(aux, aux_data, tuple(direct), series, f_coeffs, g_coeffs, cert)


@dataclass
class SallyData:
    e_filt: Filtration
    e_data: HilbertData
    n_filt: Filtration
    n_data: HilbertData
    values: Tuple[int, ...]  # H_S(n) = lambda(M_{n+1} / J^n M_1), n >= 0
    series: RationalSeries
    coefficients: Optional[Tuple[int, ...]]  # e_i(S) when dim S = r
    trivial: bool
    full_dimensional: Optional[bool]
    certification: Certification


def sally_module(
    f: Filtration,
    red: ReductionData,
    base: HilbertData,
    window: int = DEFAULT_WINDOW,
    cm: Optional[bool] = None,
) -> SallyData:
    """Sally-module Hilbert data of f with respect to the verified reduction."""
    ring = f.ring
    J = red.handle
    ef = e_filtration(f, J)
    e_data = hilbert(ef, window=window, dimension=base.dimension)
    nf = jadic_filtration(ring, J)
    n_data = hilbert(nf, window=window, dimension=base.dimension)
    jmax = min(len(base.samuel), len(e_data.samuel)) - 1
    direct = [0]
    for n in range(1, jmax + 1):
        val = expect_finite(ring.length(ef.member(n + 1))) - expect_finite(
            ring.length(f.member(n + 1))
        )
        if val < 0:
            raise HypothesisFailed("Sally values must be nonnegative")
        direct.append(val)
    r = base.dimension
    trivial = all(v == 0 for v in direct)
    series, cert = series_from_window(direct, 0 if trivial else r, window)
    # (1-z) P(S) = P(E) - P(f), exactly.
    lhs = _one_minus_z_times(series)
    rhs = e_data.series.sub(base.series)
    if lhs != rhs:
        raise HypothesisFailed("Sally-module series identity failed exactly")
    full_dim = (
        base.e(1) > series_coefficients(e_data.series, r).values[1]
        if r >= 1
        else None
    )
    coeffs: Optional[Tuple[int, ...]] = None
    if full_dim:
        eM = series_coefficients(base.series, r).values
        eE = series_coefficients(e_data.series, r).values
        coeffs = tuple(eM[i + 1] - eE[i + 1] for i in range(r))
        own = series_coefficients(series, series.denom_exponent).values
        for i in range(min(len(own), len(coeffs))):
            if own[i] != coeffs[i]:
                raise HypothesisFailed(
                    "Sally coefficients disagree between the shift identity "
                    "and the computed series"
                )
    if cm:
        for a, b in zip(direct, direct[1:]):
            if b < a:
                raise HypothesisFailed(
                    "Sally Hilbert function must be nondecreasing over a "
                    "Cohen-Macaulay module"
                )
    cert = cert.combine(base.certification).combine(e_data.certification)
    return SallyData(
        ef, e_data, nf, n_data, tuple(direct), series, coeffs, trivial,
        full_dim, cert,
    )


@dataclass
class DepthSandwich:
    target: str
    lower_bound: int
    inputs: Tuple[str, ...]
    certification: Optional[Certification]
    note: str = ""


def fiber_depth_sandwich(
    gr_lb: int,
    gr_cert: Optional[Certification],
    aux_lb: int,
    aux_cert: Optional[Certification],
) -> DepthSandwich:
    """depth F_I >= min(depth gr + 1, depth gr of the I-shifted filtration)."""
    bound = min(gr_lb + 1, aux_lb)
    cert = None
    if gr_cert is not None and aux_cert is not None:
        cert = gr_cert.combine(aux_cert)
    return DepthSandwich(
        "fiber_cone",
        bound,
        (f"gr >= {gr_lb}", f"gr_shift >= {aux_lb}"),
        cert,
        "lower bound only; the true depth may exceed it",
    )


def sally_depth_note(sally: SallyData, gr_lb: int) -> DepthSandwich:
    """The Sally sandwich bounds gr from S and E; with S unmaterialized it
    yields no new certified bound, only a consistency statement."""
    if sally.trivial:
        note = "trivial Sally module: no constraint beyond the gr bounds"
    else:
        note = (
            "depth gr >= min(depth S - 1, depth gr_E) cannot tighten the "
            "certified bound without a depth certificate for S"
        )
    return DepthSandwich("assoc_graded_via_sally", gr_lb, (), None, note)
