"""Per-instance orchestration: one bundle with every computed invariant.

The audit engine and the CLI both consume an Analysis object; everything in
it is exact, and every derived quantity carries its certification level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .backend import expect_finite
from .blowup import (
    DepthSandwich,
    FiberConeData,
    SallyData,
    fiber_cone,
    fiber_depth_sandwich,
    sally_depth_note,
    sally_module,
)
from .errors import HypothesisFailed, NotComputable, QfilError, TruncationLimit
from .filtration import (
    ADIC,
    DEFAULT_WINDOW,
    EFILT,
    INDUCED,
    JADIC,
    MI,
    Filtration,
    HilbertData,
    hilbert,
    jadic_filtration,
    saturated_filtration,
)
from .invariants import (
    DepthCertificate,
    RatliffRushScan,
    ReductionData,
    SequenceBundle,
    certified_depth_lower_bound,
    depth_certificates,
    find_reduction,
    mu_sequence,
    order_in_maximal,
    ratliff_rush_scan,
    rr_filtration,
    sally_membership_index,
    sequences,
    verify_superficial,
)
from .series import Certification, IntPolynomial, RationalSeries, series_coefficients

INDUCED_LIKE_KINDS = (ADIC, INDUCED, JADIC, EFILT)


def is_induced_like(f: Filtration) -> bool:
    """Kinds for which M_{j+1} = q M_j holds from index one on."""
    if f.kind in INDUCED_LIKE_KINDS:
        return True
    if f.kind == MI:
        return True  # constructed from an adic base in this artifact
    return False


@dataclass
class WData:
    computable: bool
    length: Optional[int] = None
    status: str = ""
    lift_gens: Tuple[str, ...] = ()
    note: str = ""


@dataclass
class Analysis:
    name: str
    ring: object
    filtration: Filtration
    base: HilbertData
    reduction: ReductionData
    bundle: SequenceBundle
    n_data: HilbertData  # the J-adic filtration data
    n_theorem: bool  # True when supplied by the CM theorem, not recomputed
    w: WData
    sat_coeffs: Optional[Tuple[int, ...]]
    rr: Optional[RatliffRushScan]
    rr_note: str
    rr_data: Optional[HilbertData]
    rr_bundle: Optional[SequenceBundle]
    rr_m1_colength: Optional[int]
    depth_certs: List[DepthCertificate]
    depth_lb: int
    depth_exact: Optional[int]
    sally: Optional[SallyData]
    fiber: Optional[FiberConeData]
    fiber_ideal: Optional[object]
    fiber_sandwich: Optional[DepthSandwich]
    mi_superficial_ok: Optional[bool]
    mi_bundle: Optional[SequenceBundle]
    mi_colength: Optional[int]  # lambda(A/I M) for the fiber ideal
    mu: Optional[List[int]]
    order_p: Optional[int]
    integrally_closed: Optional[bool]
    rr_closed: Optional[bool]
    sally_index: Optional[int]
    induced_like: bool
    window: int
    seed: Optional[int]
    errors: Dict[str, str] = field(default_factory=dict)

    @property
    def r(self) -> int:
        return self.base.dimension

    @property
    def cm(self) -> bool:
        return bool(self.reduction.ambient_cm)

    def e(self, i: int) -> int:
        return self.base.e(i)

    @property
    def h0(self) -> int:
        return self.base.h(0)

    @property
    def h1(self) -> int:
        return self.base.h(1)

    def e_n(self, i: int) -> int:
        """Hilbert coefficients of the J-adic filtration."""
        return series_coefficients(self.n_data.series, self.r).values[i]


def theorem_parameter_data(lam: int, r: int, window: int) -> HilbertData:
    """P = lam/(1-z)^r for the parameter-adic filtration over a CM module."""
    series = RationalSeries(IntPolynomial([lam]), r)
    jmax = window + 4
    values = tuple(series.coefficients(jmax + 1))
    samuel = []
    acc = 0
    for v in values:
        acc += v
        samuel.append(acc)
    from .series import PROVEN, CoefficientVector

    coeffs = CoefficientVector(series_coefficients(series, r).values, PROVEN)
    return HilbertData(
        values=values,
        samuel=tuple(samuel),
        series=series,
        dimension=r,
        coefficients=coeffs,
        window=window,
        certification=PROVEN,
    )


def analyze(
    name: str,
    ring,
    filtration: Filtration,
    fiber_ideal=None,
    jmax: Optional[int] = None,
    window: int = DEFAULT_WINDOW,
    seed: Optional[int] = 0,
    reduction_elements: Optional[Sequence] = None,
    assert_depth_positive: bool = False,
    max_candidates: int = 24,
) -> Analysis:
    errors: Dict[str, str] = {}
    base = hilbert(filtration, jmax=jmax, window=window)
    red = find_reduction(
        filtration,
        seed=seed,
        window=window,
        base_data=base,
        user_elements=reduction_elements,
        max_candidates=max_candidates,
    )
    # The verified reduction anchors the tail: recompute with the
    # persistence certificate attached.
    base = hilbert(filtration, jmax=jmax, window=window, tail_certified=True)
    bundle = sequences(filtration, red)

    # Torsion submodule W = H^0_m.
    try:
        lift, lam_w, _, status = ring.h0_data(assert_depth_positive)
        w = WData(True, lam_w, status, tuple(lift.gens_strings()))
    except NotComputable as exc:
        if red.ambient_cm:
            w = WData(
                True, 0, "PROVEN",
                note="Cohen-Macaulay certificate forces a trivial torsion submodule",
            )
        else:
            w = WData(False, note=str(exc))

    # Saturated filtration coefficients (same ring when W = 0).
    sat_coeffs: Optional[Tuple[int, ...]] = None
    if w.computable and w.length == 0:
        sat_coeffs = base.coefficients.values
    elif w.computable:
        try:
            lift, lam_w, quotient_ring, _ = ring.h0_data(assert_depth_positive)
            sat = saturated_filtration(filtration, lift, quotient_ring)
            sat_data = hilbert(sat, jmax=jmax, window=window)
            sat_coeffs = series_coefficients(sat_data.series, base.dimension).values
        except QfilError as exc:
            errors["saturated"] = str(exc)

    # J-adic data: theorem-backed over a CM module, honest otherwise.
    if red.ambient_cm:
        lam_j = expect_finite(ring.length(red.handle))
        n_data = theorem_parameter_data(lam_j, base.dimension, window)
        n_theorem = True
    else:
        n_data = hilbert(
            jadic_filtration(ring, red.handle),
            window=window,
            dimension=base.dimension,
        )
        n_theorem = False

    # Ratliff-Rush scan.
    rr = None
    rr_note = ""
    rr_data = None
    rr_bundle = None
    rr_m1 = None
    try:
        rr = ratliff_rush_scan(filtration, red)
        closure_filt = rr_filtration(filtration, rr)
        rr_data = hilbert(closure_filt, window=window, dimension=base.dimension)
        if series_coefficients(rr_data.series, base.dimension).values != tuple(
            base.coefficients.values
        ):
            raise HypothesisFailed(
                "Ratliff-Rush filtration changed the Hilbert coefficients"
            )
        rr_bundle = sequences(closure_filt, red)
        rr_m1 = expect_finite(ring.length(rr.entries[0].handle))
    except (QfilError, NotComputable) as exc:
        rr = None
        rr_note = str(exc)

    torsion_for_depth = w.length if w.computable else None
    certs = depth_certificates(filtration, red, bundle, rr, torsion_for_depth)
    depth_lb, depth_exact = certified_depth_lower_bound(certs, base.dimension)

    # Sally module (dimension >= 1 always here).
    sally = None
    try:
        sally = sally_module(filtration, red, base, window=window, cm=red.ambient_cm)
    except QfilError as exc:
        errors["sally"] = str(exc)

    # Fiber cone for the configured ideal.
    fiber = None
    sandwich = None
    mi_ok = None
    mi_bundle = None
    mi_colength = None
    if fiber_ideal is not None:
        try:
            fiber = fiber_cone(filtration, fiber_ideal, base, window=window)
            mi_colength = expect_finite(ring.length(fiber_ideal))
            mi_ok = all(
                verify_superficial(
                    fiber.aux,
                    elem,
                    prefix=tuple(red.elements[:i]),
                    ambient_cm=red.ambient_cm or None,
                    window=window,
                ).verification
                != "FAILED"
                for i, elem in enumerate(red.elements)
            )
            if mi_ok:
                mi_bundle = sequences(fiber.aux, red, with_u=False)
            aux_lb = _aux_depth_lb(fiber, red, mi_bundle, base)
            sandwich = fiber_depth_sandwich(
                depth_lb, None, aux_lb[0], None
            )
        except QfilError as exc:
            errors["fiber"] = str(exc)

    mu = None
    order_p = None
    if filtration.kind in (ADIC, JADIC):
        mu = mu_sequence(filtration, red)
        order_p = order_in_maximal(filtration)

    closed = None
    rr_closed = None
    try:
        closure = ring.integral_closure(filtration.q)
        closed = ring.equal(closure, filtration.q)
    except (QfilError, AttributeError, NotComputable):
        closed = None
    if rr is not None:
        rr_closed = rr.entries[0].equals_member

    s_index = None
    if rr is not None:
        try:
            s_index = sally_membership_index(filtration, red, rr)
        except QfilError as exc:
            errors["sally_index"] = str(exc)

    return Analysis(
        name=name,
        ring=ring,
        filtration=filtration,
        base=base,
        reduction=red,
        bundle=bundle,
        n_data=n_data,
        n_theorem=n_theorem,
        w=w,
        sat_coeffs=sat_coeffs,
        rr=rr,
        rr_note=rr_note,
        rr_data=rr_data,
        rr_bundle=rr_bundle,
        rr_m1_colength=rr_m1,
        depth_certs=certs,
        depth_lb=depth_lb,
        depth_exact=depth_exact,
        sally=sally,
        fiber=fiber,
        fiber_ideal=fiber_ideal,
        fiber_sandwich=sandwich,
        mi_superficial_ok=mi_ok,
        mi_bundle=mi_bundle,
        mi_colength=mi_colength,
        mu=mu,
        order_p=order_p,
        integrally_closed=closed,
        rr_closed=rr_closed,
        sally_index=s_index,
        induced_like=is_induced_like(filtration),
        window=window,
        seed=seed,
        errors=errors,
    )


def _aux_depth_lb(
    fiber: FiberConeData,
    red: ReductionData,
    mi_bundle: Optional[SequenceBundle],
    base: HilbertData,
) -> Tuple[int, Optional[int]]:
    """Certified depth lower bound for the I-shifted associated graded module."""
    if mi_bundle is None or not red.ambient_cm:
        return 0, None
    r = base.dimension
    e1_aux = series_coefficients(fiber.aux_data.series, r).values[1]
    if e1_aux == sum(mi_bundle.w):
        return r, r
    if e1_aux == sum(mi_bundle.v):
        return r - 1, None
    return 0, None
