"""Superficial elements, reductions, Ratliff-Rush closure, depth certificates.

Verification strategy for a candidate a (modulo an already accepted prefix):

* the corrected e_i-criterion: e_i of the filtration and of its quotient by a
  must agree for i <= r-2, and the (r-1)-st must shift by the exact torsion
  (-1)^(r-1) * lambda(0:a).  Usable whenever the torsion is exactly known:
  zero by the Cohen-Macaulay route, or combinatorial in monomial land;
* the definitional window check: (M_{j+1} : a) = M_j + (0:a) and
  M_j meets (0:a) trivially, observed on a window past stabilization.

Candidates verified by the first route are CRITERION_EI (with a window
corroboration when the torsion is nonzero); by the second, DEFINITIONAL_WINDOW.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .backend import InfiniteLength, expect_finite
from .errors import (
    HypothesisFailed,
    NotComputable,
    SearchExhausted,
    TruncationLimit,
    WindowExceeded,
)
from .filtration import (
    DEFAULT_WINDOW,
    Filtration,
    HilbertData,
    hilbert,
    ratliff_rush_filtration,
)
from .series import Certification, PROVEN

CRITERION_EI = "CRITERION_EI"
DEFINITIONAL_WINDOW = "DEFINITIONAL_WINDOW"
FAILED = "FAILED"
UNKNOWN = "UNKNOWN"

REGULAR_CERTIFIED = "REGULAR_CERTIFIED"


def torsion_tag(t: int) -> str:
    return REGULAR_CERTIFIED if t == 0 else f"TORSION({t})"


@dataclass
class SuperficialCandidate:
    element: object
    provenance: str
    verification: str
    regularity: str
    torsion: Optional[int]
    level: int
    details: Dict[str, object] = field(default_factory=dict)
    provisional: bool = False

    def ok(self) -> bool:
        return self.verification in (CRITERION_EI, DEFINITIONAL_WINDOW) or (
            self.provisional and self.verification == UNKNOWN
        )


@dataclass
class ReductionData:
    elements: Tuple
    handle: object
    reduction_number: int
    stabilization_index: int
    v: Tuple[int, ...]
    records: List[SuperficialCandidate]
    seed: Optional[int]
    candidates_tried: int
    ambient_cm: Optional[bool]
    certification: Certification
    base: HilbertData

    @property
    def dimension(self) -> int:
        return len(self.elements)


@dataclass
class SequenceBundle:
    v: Tuple[int, ...]
    w: Tuple[int, ...]
    vv: Tuple[int, ...]
    u: Optional[Tuple[int, ...]]


def _in_order_one(ring, a, q, prefix_handle) -> bool:
    if not ring.member(a, q):
        return False
    q2 = ring.power(q, 2)
    blocked = ring.sum(q2, prefix_handle) if not prefix_handle.is_zero() else q2
    return not ring.member(a, blocked)


def verify_superficial(
    f: Filtration,
    a,
    prefix: Sequence = (),
    ambient_cm: Optional[bool] = None,
    window: int = DEFAULT_WINDOW,
    base_data: Optional[HilbertData] = None,
    provenance: str = "USER",
    allow_provisional: bool = False,
) -> SuperficialCandidate:
    """Verify a as superficial for the quotient of f by the prefix elements."""
    ring = f.ring
    level = len(prefix)
    prefix_handle = ring.ideal(list(prefix)) if prefix else ring.zero_ideal()
    view = f.shifted_by(prefix_handle) if prefix else f
    if base_data is None:
        base_data = hilbert(view, window=window)
    r_level = base_data.dimension
    if r_level == 0:
        return SuperficialCandidate(
            a, provenance, CRITERION_EI, REGULAR_CERTIFIED, None, level,
            {"note": "nilpotent filtration: every element is superficial"},
        )
    if not _in_order_one(ring, a, f.q, prefix_handle):
        return SuperficialCandidate(
            a, provenance, FAILED, UNKNOWN, None, level,
            {"note": "element does not have order one modulo the prefix"},
        )

    torsion: Optional[int] = None
    torsion_handle = None
    if ambient_cm:
        torsion = 0
    else:
        ann = ring.annihilator_data(a, prefix_handle)
        if ann is not None:
            torsion_handle, tor = ann
            if isinstance(tor, InfiniteLength):
                return SuperficialCandidate(
                    a, provenance, FAILED, UNKNOWN, None, level,
                    {"note": "annihilator has unbounded length"},
                )
            torsion = tor

    quotient_handle = ring.add_elem(prefix_handle, a)
    try:
        quot = hilbert(
            f.shifted_by(quotient_handle), window=window, dimension=r_level - 1
        )
    except (WindowExceeded, TruncationLimit):
        return SuperficialCandidate(
            a, provenance, FAILED, UNKNOWN, torsion, level,
            {"note": "quotient Hilbert data does not have the expected dimension"},
        )

    details: Dict[str, object] = {
        "base_e": base_data.coefficients.values,
        "quot_e": quot.coefficients.values,
        "quot_h": quot.h_vector,
    }
    if torsion is not None:
        details["torsion"] = torsion

    criterion = _criterion_holds(base_data, quot, r_level, torsion)
    details["criterion"] = criterion

    if criterion is True:
        needs_window = torsion is not None and torsion > 0 and not ambient_cm
        if needs_window:
            win_ok = _definitional_window(
                f, a, prefix_handle, torsion_handle, base_data, window
            )
            details["window_check"] = win_ok
            if not win_ok:
                return SuperficialCandidate(
                    a, provenance, FAILED, torsion_tag(torsion), torsion, level, details
                )
        return SuperficialCandidate(
            a, provenance, CRITERION_EI, torsion_tag(torsion or 0), torsion,
            level, details,
        )
    if criterion is False:
        return SuperficialCandidate(
            a, provenance, FAILED,
            torsion_tag(torsion) if torsion is not None else UNKNOWN,
            torsion, level, details,
        )

    # Torsion unknown: fall back to the definitional window with (0:a) = 0,
    # or accept provisionally pending the ambient Cohen-Macaulay test.
    zero_torsion_match = _criterion_holds(base_data, quot, r_level, 0)
    details["criterion_assuming_regular"] = zero_torsion_match
    if not zero_torsion_match:
        return SuperficialCandidate(
            a, provenance, FAILED, UNKNOWN, None, level, details
        )
    if allow_provisional:
        return SuperficialCandidate(
            a, provenance, UNKNOWN, UNKNOWN, None, level, details, provisional=True
        )
    win_ok = _definitional_window(f, a, prefix_handle, None, base_data, window)
    details["window_check"] = win_ok
    if win_ok:
        return SuperficialCandidate(
            a, provenance, DEFINITIONAL_WINDOW, UNKNOWN, None, level, details
        )
    return SuperficialCandidate(a, provenance, FAILED, UNKNOWN, None, level, details)


def _criterion_holds(
    base: HilbertData, quot: HilbertData, r_level: int, torsion: Optional[int]
) -> Optional[bool]:
    """Corrected coefficient criterion; None when the torsion is unknown."""
    for i in range(max(r_level - 1, 0)):
        if base.e(i) != quot.e(i):
            return False
    if r_level >= 1:
        if torsion is None:
            return None
        expected = base.e(r_level - 1) + (-1) ** (r_level - 1) * torsion
        if quot.e(r_level - 1) != expected:
            return False
    return True


def _definitional_window(
    f: Filtration, a, prefix_handle, torsion_handle, base: HilbertData, window: int
) -> bool:
    """(M_{j+1} : a) = M_j + (0:a) and M_j meets (0:a) trivially, for j on a
    window past the observed stabilization degree."""
    ring = f.ring
    start = max(base.stabilization_index, f.prefix_length) + 1
    principal = ring.ideal([a])
    for j in range(start, start + window):
        target = ring.sum(f.member(j + 1), prefix_handle) if not prefix_handle.is_zero() else f.member(j + 1)
        colon = ring.colon(target, principal)
        expected = ring.sum(f.member(j), prefix_handle) if not prefix_handle.is_zero() else f.member(j)
        if torsion_handle is not None and not torsion_handle.is_zero():
            expected = ring.sum(expected, torsion_handle)
        if not ring.equal(colon, expected):
            return False
        if torsion_handle is not None and not torsion_handle.is_zero():
            meet = ring.intersect(
                ring.sum(f.member(j), prefix_handle) if not prefix_handle.is_zero() else f.member(j),
                torsion_handle,
            )
            # The meet must vanish in A/prefix: every generator inside prefix+I0.
            ambient_zero = prefix_handle
            for g in meet.gens:
                if not ring.member(g, ambient_zero):
                    return False
    return True


def find_reduction(
    f: Filtration,
    seed: Optional[int] = 0,
    window: int = DEFAULT_WINDOW,
    base_data: Optional[HilbertData] = None,
    user_elements: Optional[Sequence] = None,
    max_candidates: int = 24,
) -> ReductionData:
    """Maximal superficial sequence, reduction number, and the CM verdict.

    Deterministic for a fixed seed.  Elements are verified level by level on
    the successive quotient filtrations; for GENERAL rings the verification
    may be provisional until the ambient Cohen-Macaulay test settles it.
    """
    ring = f.ring
    base = base_data or hilbert(f, window=window)
    r = base.dimension
    if r < 1:
        raise HypothesisFailed("reductions need a filtration of dimension >= 1")
    elements: List = []
    records: List[SuperficialCandidate] = []
    tried_total = 0
    general_ring = getattr(ring, "relation_class", "MONOMIAL") == "GENERAL"
    for level in range(r):
        rng = random.Random(f"{seed}:{level}")
        level_base = (
            base
            if level == 0
            else hilbert(f.shifted_by(ring.ideal(list(elements))), window=window)
        )
        accepted = None
        tried = 0
        if user_elements is not None:
            if len(user_elements) != r:
                raise HypothesisFailed(
                    f"user reduction must have {r} generators, got {len(user_elements)}"
                )
            streams = [("USER", iter([user_elements[level]]))]
        else:
            streams = [
                (None, ring.superficial_candidates(f.q, rng, coeff_bound=bound))
                for bound in (9, 99)
            ]
        seen = set()
        for provenance, cand_stream in streams:
            level_tried = 0
            for cand in cand_stream:
                key = _element_key(cand)
                if key in seen:
                    continue
                seen.add(key)
                tried += 1
                tried_total += 1
                level_tried += 1
                prov = provenance or (
                    "MONOMIAL_SCAN"
                    if _is_plain_generator(cand, f.q)
                    else f"RANDOM({seed})"
                )
                rec = verify_superficial(
                    f,
                    cand,
                    prefix=tuple(elements),
                    window=window,
                    base_data=level_base,
                    provenance=prov,
                    allow_provisional=general_ring,
                )
                if rec.ok():
                    accepted = rec
                    break
                if level_tried >= max_candidates:
                    break
            if accepted is not None:
                break
        if accepted is None:
            raise SearchExhausted(
                f"no superficial element found at level {level} after {tried} candidates"
            )
        elements.append(accepted.element)
        records.append(accepted)

    J = ring.ideal(list(elements))
    stab = _stabilization_index(f, J)
    _teach_floor(J, f, stab)
    v = tuple(
        ring.quotient_len(ring.product(J, f.member(j)), f.member(j + 1))
        for j in range(stab + 1)
    )
    last_nonzero = max((j for j, val in enumerate(v) if val), default=-1)
    r_j = last_nonzero + 1
    lam_j = ring.length(J)
    ambient_cm = isinstance(lam_j, int) and lam_j == base.e0
    if ambient_cm:
        for rec in records:
            upgradable = (
                rec.provisional
                or rec.verification == UNKNOWN
                or (
                    rec.verification == DEFINITIONAL_WINDOW
                    and rec.details.get("criterion_assuming_regular")
                )
            )
            if upgradable:
                rec.verification = CRITERION_EI
                rec.regularity = REGULAR_CERTIFIED
                rec.torsion = 0
                rec.provisional = False
                rec.details["upgraded_by"] = "cm_parameter_certificate"
    else:
        for rec in records:
            if rec.provisional:
                prefix = tuple(elements[: rec.level])
                prefix_handle = (
                    ring.ideal(list(prefix)) if prefix else ring.zero_ideal()
                )
                lb = base if rec.level == 0 else hilbert(
                    f.shifted_by(prefix_handle), window=window
                )
                win_ok = _definitional_window(
                    f, rec.element, prefix_handle, None, lb, window
                )
                rec.details["window_check"] = win_ok
                rec.provisional = False
                if win_ok:
                    rec.verification = DEFINITIONAL_WINDOW
                else:
                    raise SearchExhausted(
                        "provisional candidate failed the definitional window "
                        "and the ambient ring is not Cohen-Macaulay certified"
                    )
    return ReductionData(
        elements=tuple(elements),
        handle=J,
        reduction_number=r_j,
        stabilization_index=stab,
        v=v,
        records=records,
        seed=seed,
        candidates_tried=tried_total,
        ambient_cm=ambient_cm,
        certification=PROVEN,
        base=base,
    )


def _element_key(elem) -> object:
    key = getattr(elem, "key", None)
    return key() if callable(key) else elem


def _is_plain_generator(cand, q) -> bool:
    if hasattr(cand, "is_monomial"):
        return cand in q.gens
    return True


def _stabilization_index(f: Filtration, J) -> int:
    """First n in the tail with M_{n+1} = J M_n; persists from there on."""
    ring = f.ring
    n = 0
    cap = 64
    while n <= cap:
        if ring.leq(f.member(n + 1), ring.product(J, f.member(n))):
            if n >= f.prefix_length:
                return n
        n += 1
    raise SearchExhausted("no reduction stabilization up to the index cap")


def _teach_floor(J, f: Filtration, stab: int) -> None:
    """After M_{stab+1} = J M_stab is proven, J contains M_{stab+1}."""
    member = f.member(stab + 1)
    if hasattr(J, "learn_floor") and hasattr(member, "floor"):
        J.learn_floor(member.floor)


def sequences(
    f: Filtration,
    red: ReductionData,
    upto: Optional[int] = None,
    with_u: bool = True,
) -> SequenceBundle:
    """The v/w/vv ladder (and u in dimension one, for the base filtration)."""
    ring = f.ring
    J = red.handle
    top = upto if upto is not None else max(red.stabilization_index, red.reduction_number) + 1
    v: List[int] = []
    w: List[int] = []
    vv: List[int] = []
    for j in range(top + 1):
        mj1 = f.member(j + 1)
        jmj = ring.product(J, f.member(j))
        v.append(ring.quotient_len(jmj, mj1))
        w.append(
            expect_finite(ring.length(J)) - expect_finite(ring.length(ring.sum(mj1, J)))
        )
        meet = ring.intersect(J, mj1)
        vv.append(ring.quotient_len(jmj, meet))
    u = None
    if with_u and red.dimension == 1:
        e0 = red.base.e0
        u = tuple(e0 - h for h in red.base.values)
    return SequenceBundle(tuple(v), tuple(w), tuple(vv), u)


def u_by_colon_lengths(f: Filtration, red: ReductionData, upto: int) -> List[int]:
    """Dimension-one u_j recomputed as lambda(M_{j+1}/aM_j) - lambda(0:_{M_j} a)."""
    ring = f.ring
    a = red.elements[0]
    ann = ring.annihilator_data(a, ring.zero_ideal())
    out = []
    for j in range(upto + 1):
        lam1 = ring.quotient_len(ring.scale(f.member(j), a), f.member(j + 1))
        tors = 0
        if ann is not None and not ann[0].is_zero():
            meet = ring.intersect(ann[0], f.member(j))
            # lambda of the image of the meet in A: a finite monomial gap.
            tors = ring.quotient_len(ring.zero_ideal(), meet)
        out.append(lam1 - tors)
    return out


# -- Ratliff-Rush -----------------------------------------------------------


@dataclass
class RatliffRushEntry:
    index: int
    handle: object
    equals_member: bool
    steps: int
    certification: Certification
    witness: Optional[str] = None


def ratliff_rush(
    f: Filtration,
    n: int,
    red: ReductionData,
    stable_steps: int = 2,
    max_steps: int = 12,
) -> RatliffRushEntry:
    """M~_n = union_k (M_{n+k} : q^k), stabilized over consecutive colons."""
    ring = f.ring
    if not _depth_positive_certified(red):
        raise HypothesisFailed(
            "Ratliff-Rush closure needs a certified regular element in q"
        )
    current = None
    stable = 0
    qk = f.q
    k = 1
    while k <= max_steps:
        colon = ring.colon(f.member(n + k), qk)
        if current is not None:
            if not ring.leq(current, colon):
                raise HypothesisFailed("Ratliff-Rush chain failed to ascend")
            if ring.equal(colon, current):
                stable += 1
            else:
                stable = 0
        current = colon
        if stable >= stable_steps:
            break
        k += 1
        qk = ring.product(qk, f.q)
    else:
        raise TruncationLimit("Ratliff-Rush chain did not stabilize")
    # Cross-check against the superficial-element chain (M_{n+k} : a^k).
    a = red.elements[0]
    apow = ring.power(ring.ideal([a]), k)
    alt = ring.colon(f.member(n + k), apow)
    if not ring.leq(current, alt):
        raise HypothesisFailed("Ratliff-Rush cross-check against a-powers failed")
    equals = ring.equal(current, f.member(n))
    witness = None
    if not equals:
        witness = _difference_witness(ring, current, f.member(n))
    cert = Certification.window_cert(stable_steps)
    return RatliffRushEntry(n, current, equals, k, cert, witness)


def _depth_positive_certified(red: ReductionData) -> bool:
    if red.ambient_cm:
        return True
    rec = red.records[0]
    return rec.torsion == 0 and rec.verification in (CRITERION_EI, DEFINITIONAL_WINDOW)


def _difference_witness(ring, bigger, smaller) -> Optional[str]:
    for g in bigger.gens:
        if not ring.member(g, smaller):
            return ring.element_string(g)
    return None


@dataclass
class RatliffRushScan:
    entries: List[RatliffRushEntry]
    all_equal: bool
    first_witness: Optional[Tuple[int, str]]
    coincidence_index: int

    def closure_handles(self):
        return [e.handle for e in self.entries]


def ratliff_rush_scan(
    f: Filtration, red: ReductionData, upto: Optional[int] = None
) -> RatliffRushScan:
    top = upto if upto is not None else max(
        red.reduction_number, f.prefix_length, 1
    ) + 1
    entries = [ratliff_rush(f, n, red) for n in range(1, top + 1)]
    witness = None
    for e in entries:
        if not e.equals_member and witness is None:
            witness = (e.index, e.witness or "")
    coincidence = 1
    for e in reversed(entries):
        if not e.equals_member:
            coincidence = e.index + 1
            break
    for e in entries:
        if e.index >= coincidence and e.equals_member:
            e.certification = PROVEN
    return RatliffRushScan(
        entries, all(e.equals_member for e in entries), witness, coincidence
    )


def rr_filtration(f: Filtration, scan: RatliffRushScan) -> Filtration:
    return ratliff_rush_filtration(f, scan.closure_handles())


# -- depth certificates ------------------------------------------------------


@dataclass
class DepthCertificate:
    name: str
    status: str  # HOLDS | FAILS | UNDETERMINED
    certification: Optional[Certification]
    witness: Optional[str] = None
    note: str = ""


def depth_certificates(
    f: Filtration,
    red: ReductionData,
    bundle: SequenceBundle,
    rr: Optional[RatliffRushScan],
    torsion_length: Optional[int],
) -> List[DepthCertificate]:
    """Theorem-backed certificates for depth of the associated graded module."""
    out: List[DepthCertificate] = []
    r = red.dimension
    e1 = red.base.e(1) if r >= 1 else 0
    sum_v = sum(bundle.v)
    sum_w = sum(bundle.w)
    vv_zero = all(x == 0 for x in bundle.vv)

    if torsion_length is not None and torsion_length > 0:
        out.append(
            DepthCertificate(
                "depth_ge_1",
                "FAILS",
                PROVEN,
                note="finite-length torsion is nonzero, so the module itself has depth 0",
            )
        )
    elif rr is not None:
        if rr.all_equal:
            out.append(
                DepthCertificate(
                    "depth_ge_1",
                    "HOLDS",
                    Certification.window_cert(len(rr.entries)),
                    note="Ratliff-Rush closure coincides with every computed member",
                )
            )
        else:
            n, wit = rr.first_witness
            out.append(
                DepthCertificate(
                    "depth_ge_1",
                    "FAILS",
                    PROVEN,
                    witness=f"{wit} in closure of M_{n} but not in M_{n}",
                    note="a Ratliff-Rush witness forces depth zero",
                )
            )
    else:
        out.append(DepthCertificate("depth_ge_1", "UNDETERMINED", None))

    if red.ambient_cm:
        holds = e1 == sum_v
        out.append(
            DepthCertificate(
                "depth_ge_r_minus_1",
                "HOLDS" if holds else "FAILS",
                PROVEN,
                note=f"e1 = {e1} vs sum of v = {sum_v}",
            )
        )
        cm_by_w = e1 == sum_w
        if cm_by_w != vv_zero:
            raise HypothesisFailed(
                "the w-criterion and the Valabrega-Valla module disagree"
            )
        out.append(
            DepthCertificate(
                "gr_cohen_macaulay",
                "HOLDS" if cm_by_w else "FAILS",
                PROVEN,
                note=f"e1 = {e1} vs sum of w = {sum_w}; vv identically zero: {vv_zero}",
            )
        )
    else:
        out.append(DepthCertificate("depth_ge_r_minus_1", "UNDETERMINED", None))
        out.append(
            DepthCertificate(
                "gr_cohen_macaulay",
                "FAILS" if not vv_zero else "UNDETERMINED",
                PROVEN if not vv_zero else None,
                note="a nonzero Valabrega-Valla component obstructs a regular sequence",
            )
        )
    return out


def certified_depth_lower_bound(certs: List[DepthCertificate], r: int) -> Tuple[int, Optional[int]]:
    """(lower bound, exact value when known) for depth of gr."""
    lb = 0
    exact = None
    by_name = {c.name: c for c in certs}
    ge1 = by_name.get("depth_ge_1")
    germ1 = by_name.get("depth_ge_r_minus_1")
    cm = by_name.get("gr_cohen_macaulay")
    if cm is not None and cm.status == "HOLDS":
        return r, r
    if germ1 is not None and germ1.status == "HOLDS":
        lb = max(lb, r - 1)
        if cm is not None and cm.status == "FAILS":
            exact = r - 1
    if ge1 is not None and ge1.status == "HOLDS":
        lb = max(lb, 1)
    if ge1 is not None and ge1.status == "FAILS":
        exact = 0
        lb = 0
    return lb, exact


# -- bounds and mu ------------------------------------------------------------


@dataclass
class BoundReport:
    name: str
    applicable: bool
    lhs: Optional[int] = None
    rhs: Optional[int] = None
    holds: Optional[bool] = None
    sharp: Optional[bool] = None
    reasons: Tuple[str, ...] = ()


def sally_membership_index(
    f: Filtration, red: ReductionData, rr: RatliffRushScan
) -> int:
    """Largest n with M_{j+1} meet J*M~_j = J*M_j for every j <= n."""
    ring = f.ring
    J = red.handle
    n = -1
    for j in range(len(rr.entries) + 1):
        closure_j = rr.entries[j - 1].handle if j >= 1 else f.ring.unit_ideal()
        target = ring.product(J, closure_j) if j >= 1 else J
        meet = ring.intersect(f.member(j + 1), target)
        jm = ring.product(J, f.member(j))
        if ring.equal(meet, jm):
            n = j
        else:
            break
    return n


def order_in_maximal(f: Filtration) -> int:
    """Largest p with q inside m^p."""
    ring = f.ring
    m = ring.maximal_ideal()
    p = 0
    power = ring.unit_ideal()
    while True:
        power = ring.product(power, m)
        if ring.leq(f.q, power):
            p += 1
        else:
            return p


def mu_sequence(f: Filtration, red: ReductionData) -> List[int]:
    """mu(q^n) = lambda(q^n / m q^n) for n = 0..r_J + 1."""
    if f.kind not in ("ADIC", "JADIC"):
        raise HypothesisFailed("minimal generator counts are tracked for adic filtrations")
    ring = f.ring
    m = ring.maximal_ideal()
    out = []
    for n in range(red.reduction_number + 2):
        qn = f.member(n)
        out.append(ring.quotient_len(ring.product(m, qn), qn))
    return out
