"""Theorem-audit catalog: every implemented inequality, equality and border
characterization evaluated on one analyzed instance.

Checks never assert; each produces a CheckResult with hypotheses listed, both
sides exact, a holds flag, a sharpness flag for inequalities, and a
conclusion_verified flag whenever a triggered border case forces extra
structure that we can recompute.  A failing computation inside one check is
reported on that check and never aborts the audit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Tuple

from .analysis import Analysis
from .backend import expect_finite
from .errors import QfilError
from .filtration import ADIC, JADIC, adic_filtration, hilbert
from .invariants import find_reduction
from .series import IntPolynomial, RationalSeries, series_coefficients


@dataclass
class CheckResult:
    check_id: str
    applicable: bool
    unmet: Tuple[str, ...] = ()
    lhs: Optional[int] = None
    rhs: Optional[int] = None
    relation: str = ""
    holds: Optional[bool] = None
    sharp: Optional[bool] = None
    conclusion_verified: Optional[bool] = None
    certification: str = ""
    values: Dict[str, object] = field(default_factory=dict)
    error: str = ""

    def as_dict(self) -> Dict[str, object]:
        return {
            "check_id": self.check_id,
            "applicable": self.applicable,
            "unmet_hypotheses": list(self.unmet),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation,
            "holds": self.holds,
            "sharp": self.sharp,
            "conclusion_verified": self.conclusion_verified,
            "certification": self.certification,
            "values": _plain(self.values),
            "error": self.error,
        }


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in sorted(obj.items())}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "coeffs"):
        return list(obj.coeffs)
    return obj


def _inapplicable(check_id: str, unmet: List[str]) -> CheckResult:
    return CheckResult(check_id, False, tuple(unmet))


CATALOG_ORDER = [
    "NORTHCOTT-GEN",
    "ABHYANKAR-VALLA",
    "HUCKABA",
    "HM-EQUIV",
    "E1-WJ",
    "GU-VV1",
    "KIRBY",
    "RV-IC",
    "ELIAS-VALLA",
    "BORDER-0",
    "BORDER-1",
    "BORDER-2",
    "NARITA",
    "ITOH-E2",
    "REDNUM",
    "SALLY-GEN",
    "HW",
    "SAT",
    "D1-EXACT",
    "EEN",
    "TH2",
    "FIBER",
    "SALLYMOD",
]


def audit(analysis: Analysis) -> List[CheckResult]:
    out: List[CheckResult] = []
    for check_id in CATALOG_ORDER:
        fn = _CHECKS[check_id]
        try:
            out.append(fn(analysis))
        except QfilError as exc:
            out.append(
                CheckResult(check_id, False, ("internal computation failed",),
                            error=str(exc))
            )
    return out


def _cert(a: Analysis) -> str:
    return a.base.certification.label()


def _depth_status(a: Analysis, name: str) -> Optional[str]:
    for c in a.depth_certs:
        if c.name == name:
            return c.status
    return None


def _gr_depth_ge(a: Analysis, k: int) -> Optional[bool]:
    """Certified answer to depth gr >= k, if any."""
    r = a.r
    if k <= 0:
        return True
    if a.depth_lb >= k:
        return True
    if a.depth_exact is not None and a.depth_exact < k:
        return False
    if k == 1 and _depth_status(a, "depth_ge_1") == "FAILS":
        return False
    if k == r - 1 and _depth_status(a, "depth_ge_r_minus_1") == "FAILS":
        return False
    if k == r and _depth_status(a, "gr_cohen_macaulay") == "FAILS":
        return False
    return None


def _member_colength(a: Analysis, n: int) -> int:
    return expect_finite(a.ring.length(a.filtration.member(n)))


def check_northcott_gen(a: Analysis) -> CheckResult:
    if a.r < 1:
        return _inapplicable("NORTHCOTT-GEN", ["dimension >= 1"])
    ring = a.ring
    J = a.reduction.handle
    e1n = a.e_n(1)
    lhs = a.e(1) - e1n
    rows = {}
    holds = True
    sharp = False
    for s in (1, 2):
        lam_prev = _member_colength(a, s - 1) if s >= 1 else 0
        lam_joint = expect_finite(
            ring.length(ring.sum(a.filtration.member(s), J))
        )
        rhs = s * a.e(0) - lam_prev - lam_joint
        rows[f"s={s}"] = {"rhs": rhs, "lhs": lhs}
        holds = holds and lhs >= rhs
        if s == 1 and lhs == rhs:
            sharp = True
    return CheckResult(
        "NORTHCOTT-GEN", True, (), lhs, rows["s=1"]["rhs"], ">=",
        holds, sharp, None, _cert(a), rows,
    )


def check_abhyankar_valla(a: Analysis) -> CheckResult:
    if not a.cm:
        return _inapplicable("ABHYANKAR-VALLA", ["Cohen-Macaulay module"])
    v1 = a.bundle.v[1] if len(a.bundle.v) > 1 else 0
    lhs = a.e(0)
    rhs = a.h0 + a.h1 + v1
    return CheckResult(
        "ABHYANKAR-VALLA", True, (), lhs, rhs, "=", lhs == rhs, None, None,
        "PROVEN", {"lambda(M2/JM1)": v1},
    )


def check_huckaba(a: Analysis) -> CheckResult:
    if a.r < 1:
        return _inapplicable("HUCKABA", ["dimension >= 1"])
    lhs = a.e(1) - a.e_n(1)
    rhs = sum(a.bundle.v)
    return CheckResult(
        "HUCKABA", True, (), lhs, rhs, "<=", lhs <= rhs, lhs == rhs, None,
        _cert(a), {"v": list(a.bundle.v)},
    )


def check_hm_equiv(a: Analysis) -> CheckResult:
    if not a.cm:
        return _inapplicable("HM-EQUIV", ["Cohen-Macaulay module"])
    r = a.r
    v = a.bundle.v
    e1, e2 = a.e(1), series_coefficients(a.base.series, max(r, 2)).values[2]
    sum_v = sum(v)
    sum_jv = sum(j * val for j, val in enumerate(v))
    ineq_a = e1 <= sum_v
    ineq_b = e2 <= sum_jv
    c3 = e1 == sum_v
    c4 = e2 == sum_jv
    coeffs = series_coefficients(a.base.series, max(r, len(v)) + 1).values
    c2 = all(
        coeffs[i] == sum(comb(j, i - 1) * val for j, val in enumerate(v) if j >= i - 1)
        for i in range(1, r + 1)
    )
    target = [a.h0] + [v[j] - v[j + 1] for j in range(len(v) - 1)]
    c5 = a.base.series == RationalSeries(IntPolynomial(target), r)
    depth_ok = _gr_depth_ge(a, r - 1)
    equiv = len({c2, c3, c4, c5}) == 1 and (depth_ok is None or depth_ok == c3)
    return CheckResult(
        "HM-EQUIV", True, (), e1, sum_v, "<=", ineq_a and ineq_b and equiv,
        c3, c3 if depth_ok is None else (depth_ok == c3),
        "PROVEN",
        {"e2": e2, "sum_jv": sum_jv, "conditions": {"c2": c2, "c3": c3, "c4": c4, "c5": c5}},
    )


def check_e1_wj(a: Analysis) -> CheckResult:
    if not a.cm:
        return _inapplicable("E1-WJ", ["Cohen-Macaulay module"])
    lhs = a.e(1)
    rhs = sum(a.bundle.w)
    equality = lhs == rhs
    vv_zero = all(x == 0 for x in a.bundle.vv)
    concl = None
    if equality:
        concl = vv_zero and _depth_status(a, "gr_cohen_macaulay") == "HOLDS"
    return CheckResult(
        "E1-WJ", True, (), lhs, rhs, ">=", lhs >= rhs, equality, concl,
        "PROVEN", {"w": list(a.bundle.w), "vv_zero": vv_zero},
    )


def check_gu_vv1(a: Analysis) -> CheckResult:
    if not a.cm:
        return _inapplicable("GU-VV1", ["Cohen-Macaulay module"])
    total_vv = sum(a.bundle.vv)
    if total_vv != 1:
        return _inapplicable("GU-VV1", ["lambda(VV) = 1"])
    depth_exact_rm1 = a.e(1) == sum(a.bundle.v)
    return CheckResult(
        "GU-VV1", True, (), total_vv, 1, "=", True, None,
        depth_exact_rm1, "PROVEN",
        {"note": "depth gr = r-1 verified through the v-criterion"},
    )


def check_kirby(a: Analysis) -> CheckResult:
    if a.filtration.kind not in (ADIC, JADIC):
        return _inapplicable("KIRBY", ["adic filtration"])
    if a.order_p is None:
        return _inapplicable("KIRBY", ["order of q in m computed"])
    lhs = a.e(1) - a.e_n(1)
    rhs = comb(a.e(0) - a.order_p + 1, 2)
    return CheckResult(
        "KIRBY", True, (), lhs, rhs, "<=", lhs <= rhs, lhs == rhs, None,
        _cert(a), {"p": a.order_p},
    )


def check_rv_ic(a: Analysis) -> CheckResult:
    unmet = []
    if not a.cm:
        unmet.append("Cohen-Macaulay ring")
    if a.filtration.kind not in (ADIC, JADIC):
        unmet.append("adic filtration")
    if a.mu is None:
        unmet.append("generator counts computed")
    if unmet:
        return _inapplicable("RV-IC", unmet)
    mu_q = a.mu[1]
    lhs = a.e(1)
    rhs = comb(a.e(0), 2) - comb(mu_q - a.r, 2) - a.h0 + 1
    return CheckResult(
        "RV-IC", True, (), lhs, rhs, "<=", lhs <= rhs, lhs == rhs, None,
        "PROVEN", {"mu(q)": mu_q},
    )


def _h_of_filtration(a: Analysis) -> int:
    """h(f) = lambda(M_1 / (J + M_2))."""
    ring = a.ring
    joint = ring.sum(a.reduction.handle, a.filtration.member(2))
    return expect_finite(ring.length(joint)) - _member_colength(a, 1)


def check_elias_valla(a: Analysis) -> CheckResult:
    if not a.cm:
        return _inapplicable("ELIAS-VALLA", ["Cohen-Macaulay module"])
    h_inv = _h_of_filtration(a)
    lhs = a.e(1)
    rhs = 2 * a.e(0) - h_inv - 2 * a.h0
    equality = lhs == rhs
    concl = None
    if equality:
        s_ok = a.base.h_degree <= 2
        vv1 = a.bundle.vv[1] if len(a.bundle.vv) > 1 else 0
        gr_cm = _depth_status(a, "gr_cohen_macaulay") == "HOLDS"
        concl = s_ok and vv1 == 0 and gr_cm
    return CheckResult(
        "ELIAS-VALLA", True, (), lhs, rhs, ">=", lhs >= rhs, equality, concl,
        "PROVEN", {"h(f)": h_inv},
    )


def check_border0(a: Analysis) -> CheckResult:
    if not a.cm:
        return _inapplicable("BORDER-0", ["Cohen-Macaulay module"])
    v = a.bundle.v
    c1 = a.base.h_degree <= 1
    c2 = a.e(1) == a.h1
    c3 = a.e(1) == a.e(0) - a.h0
    c45 = a.e(0) == a.h0 + a.h1
    mm_by_v = (v[1] if len(v) > 1 else 0) == 0
    conditions = {"short_h": c1, "e1=h1": c2, "e1=e0-h0": c3,
                  "minimal_multiplicity": c45, "M2=JM1": mm_by_v}
    consistent = (c1 == c2 == c3) and (c45 == mm_by_v) and (not c2 or c45)
    if a.induced_like:
        consistent = consistent and (c45 == c1)
    concl = None
    if c3:
        expected = RationalSeries(IntPolynomial([a.h0, a.h1]), a.r)
        concl = (
            a.base.series == expected
            and _depth_status(a, "gr_cohen_macaulay") == "HOLDS"
        )
    return CheckResult(
        "BORDER-0", True, (), a.e(1), a.e(0) - a.h0, "implications",
        consistent, c3, concl, "PROVEN", conditions,
    )


def check_border1(a: Analysis) -> CheckResult:
    unmet = []
    if not a.cm:
        unmet.append("Cohen-Macaulay module")
    if not a.induced_like:
        unmet.append("filtration induced by a submodule")
    if unmet:
        return _inapplicable("BORDER-1", unmet)
    triggered = a.e(1) == a.e(0) - a.h0 + 1
    if not triggered:
        return _inapplicable("BORDER-1", ["e1 = e0 - h0 + 1"])
    r = a.r
    e2 = series_coefficients(a.base.series, max(r, 2)).values[2]
    vv1 = a.bundle.vv[1] if len(a.bundle.vv) > 1 else 0
    values: Dict[str, object] = {"e2": e2, "vv1": vv1}
    holds = True
    concl = True
    series_sal = RationalSeries(IntPolynomial([a.h0, a.h1, 1]), r)
    series_deep = RationalSeries(IntPolynomial([a.h0, a.h1, 3, -1]), r)
    if r == 2:
        branch = None
        if a.base.series == series_sal:
            branch = "short"
        elif a.base.series == series_deep:
            branch = "depth_zero"
        values["dichotomy_branch"] = branch
        holds = branch is not None
        if branch == "short":
            concl = concl and _gr_depth_ge(a, 1) is True
        elif branch == "depth_zero":
            concl = concl and a.depth_exact == 0
    if e2 != 0:
        sal_ok = (
            e2 == 1
            and a.base.series == series_sal
            and _gr_depth_ge(a, r - 1) is True
        )
        values["e2_nonzero_branch"] = sal_ok
        holds = holds and sal_ok
    if vv1 == 0:
        nor1 = a.base.series == series_sal
        values["vv1_zero_branch"] = nor1
        holds = holds and nor1
    gr_cm = _depth_status(a, "gr_cohen_macaulay")
    values["gr_cohen_macaulay"] = gr_cm
    return CheckResult(
        "BORDER-1", True, (), a.e(1), a.e(0) - a.h0 + 1, "=",
        holds, True, concl, "PROVEN", values,
    )


def check_border2(a: Analysis) -> CheckResult:
    unmet = []
    if not a.cm:
        unmet.append("Cohen-Macaulay module")
    if not a.induced_like:
        unmet.append("filtration induced by a submodule")
    if unmet:
        return _inapplicable("BORDER-2", unmet)
    triggered = a.e(1) == a.e(0) - a.h0 + 2
    if not triggered:
        return _inapplicable("BORDER-2", ["e1 = e0 - h0 + 2"])
    r = a.r
    e2 = series_coefficients(a.base.series, max(r, 2)).values[2]
    vv1 = a.bundle.vv[1] if len(a.bundle.vv) > 1 else 0
    values: Dict[str, object] = {"e2": e2, "vv1": vv1}
    holds = True
    concl: Optional[bool] = None
    if vv1 == 0:
        flat = RationalSeries(IntPolynomial([a.h0, a.h1, 2]), r)
        cube = RationalSeries(IntPolynomial([a.h0, a.h1, 0, 1]), r)
        if a.base.series == flat:
            concl = _depth_status(a, "gr_cohen_macaulay") == "HOLDS"
            values["branch"] = "two_z2"
        elif a.base.series == cube:
            concl = (
                _gr_depth_ge(a, r - 1) is True
                and _depth_status(a, "gr_cohen_macaulay") == "FAILS"
            )
            values["branch"] = "z3"
        else:
            holds = False
    if e2 == 2:
        expected = RationalSeries(IntPolynomial([a.h0, a.h1, 2]), r)
        nor2 = a.base.series == expected and _gr_depth_ge(a, r - 1) is True
        values["e2_equals_2_branch"] = nor2
        holds = holds and nor2
    if vv1 != 0 and e2 != 2:
        return _inapplicable(
            "BORDER-2", ["either M2 meet JM = JM1 or e2 = 2"]
        )
    return CheckResult(
        "BORDER-2", True, (), a.e(1), a.e(0) - a.h0 + 2, "=",
        holds, True, concl, "PROVEN", values,
    )


def check_narita(a: Analysis) -> CheckResult:
    if not a.cm:
        return _inapplicable("NARITA", ["Cohen-Macaulay module"])
    r = a.r
    e2 = series_coefficients(a.base.series, max(r, 2)).values[2]
    holds = e2 >= 0
    values: Dict[str, object] = {"e2": e2}
    concl = None
    if e2 == 0 and r == 2 and a.filtration.kind == ADIC:
        found = None
        for n in range(1, 5):
            try:
                power = a.ring.power(a.filtration.q, n)
                fn = adic_filtration(a.ring, power)
                dn = hilbert(fn, window=a.window)
                redn = find_reduction(fn, seed=a.seed, base_data=dn)
                if redn.reduction_number <= 1:
                    found = n
                    break
            except QfilError:
                continue
        values["power_with_reduction_number_one"] = found
        concl = found is not None
    return CheckResult(
        "NARITA", True, (), e2, 0, ">=", holds, e2 == 0, concl,
        "PROVEN", values,
    )


def check_itoh_e2(a: Analysis) -> CheckResult:
    unmet = []
    if not a.cm:
        unmet.append("Cohen-Macaulay module")
    if a.r != 2:
        unmet.append("dimension 2")
    if a.rr is None:
        unmet.append("Ratliff-Rush closure computed")
    if unmet:
        return _inapplicable("ITOH-E2", unmet)
    e2 = series_coefficients(a.base.series, 2).values[2]
    lam_rr1 = a.rr_m1_colength
    rhs = a.e(1) - a.e(0) + lam_rr1
    holds = e2 >= rhs >= 0
    sharp = e2 == rhs
    values: Dict[str, object] = {"lambda(A/rr(M1))": lam_rr1}
    concl = None
    if e2 == 0 and a.rr.entries[0].equals_member:
        concl = (
            a.e(1) == a.e(0) - a.h0
            and a.base.h_degree <= 1
            and _depth_status(a, "gr_cohen_macaulay") == "HOLDS"
        )
    if a.integrally_closed:
        strong_rhs = a.e(1) - a.e(0) + a.h0
        values["integrally_closed_bound"] = strong_rhs
        holds = holds and e2 >= strong_rhs
    return CheckResult(
        "ITOH-E2", True, (), e2, rhs, ">=", holds, sharp, concl,
        _cert(a), values,
    )


def check_rednum(a: Analysis) -> CheckResult:
    unmet = []
    if not a.cm:
        unmet.append("Cohen-Macaulay module")
    if not a.induced_like:
        unmet.append("filtration induced by a submodule")
    if a.r > 2 and _gr_depth_ge(a, a.r - 2) is not True:
        unmet.append("depth gr >= r-2 certified")
    if unmet:
        return _inapplicable("REDNUM", unmet)
    lhs = a.reduction.reduction_number
    rhs = a.e(1) - a.e(0) + a.h0 + 1
    values: Dict[str, object] = {}
    if a.rr is not None and a.rr_bundle is not None and a.sally_index is not None:
        n = a.sally_index
        bound2 = (
            sum(a.rr_bundle.v)
            + n
            + 1
            - sum(a.bundle.v[: n + 1])
        )
        values["membership_index"] = n
        values["rr_chain_bound"] = bound2
        values["rr_chain_holds"] = lhs <= bound2
    holds = lhs <= rhs and values.get("rr_chain_holds", True)
    return CheckResult(
        "REDNUM", True, (), lhs, rhs, "<=", holds, lhs == rhs, None,
        "PROVEN", values,
    )


def check_sally_gen(a: Analysis) -> CheckResult:
    unmet = []
    if not a.cm:
        unmet.append("Cohen-Macaulay module")
    if not a.induced_like:
        unmet.append("filtration induced by a submodule")
    if unmet:
        return _inapplicable("SALLY-GEN", unmet)
    v, vv = a.bundle.v, a.bundle.vv
    p_found = None
    for p in range(1, len(v)):
        if all(vv[j] == 0 for j in range(p)) and v[p] <= 1:
            p_found = p
            break
    values: Dict[str, object] = {"p": p_found}
    concl = None
    holds = True
    if p_found is not None:
        concl = _gr_depth_ge(a, a.r - 1) is True
    amm = a.e(0) == a.h0 + a.h1 + 1
    series_family = None
    if a.base.h_degree >= 2:
        coeffs = a.base.h_vector
        series_family = (
            len(coeffs) >= 3
            and coeffs[0] == a.h0
            and coeffs[1] == a.h1
            and coeffs[-1] == 1
            and all(c == 0 for c in coeffs[2:-1])
        )
    values["almost_minimal_multiplicity"] = amm
    values["series_in_family"] = series_family
    if amm:
        holds = holds and bool(series_family)
        s = a.base.h_degree
        holds = holds and 2 <= s <= a.e(0) - 1
        values["s"] = s
    elif series_family:
        holds = False  # the family must force almost minimal multiplicity
    return CheckResult(
        "SALLY-GEN", True, (), None, None, "family", holds, None, concl,
        "PROVEN", values,
    )


def check_hw(a: Analysis) -> CheckResult:
    unmet = []
    if not a.cm:
        unmet.append("Cohen-Macaulay module")
    if a.r != 1:
        unmet.append("dimension 1")
    if a.filtration.kind not in (ADIC, JADIC) or a.mu is None:
        unmet.append("adic filtration")
    if unmet:
        return _inapplicable("HW", unmet)
    s = a.base.h_degree
    p = a.order_p
    mu = a.mu
    gen_growth = all(mu[n] > n for n in range(1, min(s, len(mu) - 1) + 1))
    stable = all(
        mu[n] == mu[n + 1] for n in range(s, len(mu) - 1)
    )
    hf_bound = all(
        a.base.values[n] >= n + p for n in range(1, min(s, len(a.base.values) - 1) + 1)
    )
    lhs = s
    rhs = a.e(0) - p
    holds = gen_growth and stable and hf_bound and lhs <= rhs
    return CheckResult(
        "HW", True, (), lhs, rhs, "<=", holds, lhs == rhs, None, "PROVEN",
        {"mu": list(mu), "p": p, "s": s,
         "reduction_number_matches_s": s == a.reduction.reduction_number},
    )


def check_sat(a: Analysis) -> CheckResult:
    if not a.w.computable:
        return _inapplicable("SAT", ["torsion submodule computable"])
    if a.sat_coeffs is None:
        return _inapplicable("SAT", ["saturated filtration computable"])
    r = a.r
    lam_w = a.w.length
    e = a.base.coefficients.values
    ok = all(e[i] == a.sat_coeffs[i] for i in range(r))
    ok = ok and e[r] == a.sat_coeffs[r] + (-1) ** r * lam_w
    values: Dict[str, object] = {
        "lambda(W)": lam_w,
        "sat_coefficients": list(a.sat_coeffs),
    }
    if r == 1:
        values["minus_e1_parameter"] = -a.e_n(1)
        ok = ok and lam_w == -a.e_n(1)
    return CheckResult(
        "SAT", True, (), None, None, "=", ok, None, None, a.w.status, values
    )


def check_d1_exact(a: Analysis) -> CheckResult:
    if a.r != 1:
        return _inapplicable("D1-EXACT", ["dimension 1"])
    if not a.w.computable:
        return _inapplicable("D1-EXACT", ["torsion submodule computable"])
    ring = a.ring
    aelem = a.reduction.elements[0]
    lhs = a.e(1) - a.e_n(1)
    values: Dict[str, object] = {}
    holds = True
    top_s = max(a.base.h_degree, 1)
    n_obs = len(a.base.samuel) - 1
    for s in range(1, min(top_s, 3) + 1):
        lam_ms = _member_colength(a, s)
        u_part = s * a.e(0) - lam_ms
        if a.w.length:
            w_lift = ring.ideal([ring.parse_element(g) for g in a.w.lift_gens])
            joint = ring.sum(a.filtration.member(s), w_lift)
            w_term = lam_ms - expect_finite(ring.length(joint))
        else:
            w_term = 0
        residuals = []
        for n in (n_obs - 1, n_obs):
            shifted = a.filtration.member(s)
            power = ring.power(ring.ideal([aelem]), n - s)
            an_ms = ring.product(power, shifted)
            residuals.append(
                expect_finite(ring.length(an_ms)) - _member_colength(a, n)
            )
        if residuals[0] != residuals[1]:
            holds = False
            values[f"s={s}"] = {"residual_unstable": residuals}
            continue
        rhs = u_part + w_term + residuals[1]
        values[f"s={s}"] = {"rhs": rhs, "residual": residuals[1], "w_term": w_term}
        holds = holds and lhs == rhs
        if a.filtration.kind in (ADIC, JADIC):
            eq_no_residual = lhs == u_part
            contained = ring.leq(
                a.filtration.member(s + 1),
                ring.sum(
                    ring.scale(a.filtration.member(s), aelem),
                    ring.ideal(
                        [ring.parse_element(g) for g in a.w.lift_gens]
                    )
                    if a.w.length
                    else ring.ideal([]),
                ),
            )
            w_in_ms = (
                all(
                    ring.member(ring.parse_element(g), a.filtration.member(s))
                    for g in a.w.lift_gens
                )
                if a.w.length
                else True
            )
            values[f"s={s}"]["corr_equiv"] = eq_no_residual == (
                contained and w_in_ms
            )
            holds = holds and values[f"s={s}"]["corr_equiv"]
    return CheckResult(
        "D1-EXACT", True, (), lhs, None, "=", holds, None, None,
        _cert(a), values,
    )


def check_een(a: Analysis) -> CheckResult:
    if a.sally is None:
        return _inapplicable("EEN", ["E-filtration data computed"])
    if not a.w.computable:
        return _inapplicable("EEN", ["torsion submodule computable"])
    ring = a.ring
    r = a.r
    e1_e = series_coefficients(a.sally.e_data.series, r).values[1]
    lhs = e1_e - a.e_n(1)
    if a.w.length:
        w_lift = ring.ideal([ring.parse_element(g) for g in a.w.lift_gens])
        joint = ring.sum(a.filtration.member(1), w_lift)
        w_term = _member_colength(a, 1) - expect_finite(ring.length(joint))
    else:
        w_term = 0
    rhs = a.e(0) - a.h0 + w_term
    holds = lhs == rhs if r == 1 else lhs >= rhs
    return CheckResult(
        "EEN", True, (), lhs, rhs, "=" if r == 1 else ">=", holds,
        lhs == rhs, None, _cert(a), {"w_term": w_term},
    )


def check_th2(a: Analysis) -> CheckResult:
    if a.filtration.kind != ADIC or not a.ring.equal(
        a.filtration.q, a.ring.maximal_ideal()
    ):
        return _inapplicable("TH2", ["maximal-adic filtration"])
    lhs = a.e(1) - a.e_n(1)
    rhs = sum(a.bundle.v)
    equality = lhs == rhs
    rm1 = _gr_depth_ge(a, a.r - 1)
    if not a.cm:
        structural = False
    elif rm1 is None:
        structural = None
    else:
        structural = rm1
    holds = (equality == structural) if structural is not None else None
    return CheckResult(
        "TH2", True, (), lhs, rhs, "=", holds, equality, holds, _cert(a),
        {"cm": a.cm, "depth_ge_r_minus_1": rm1},
    )


def check_fiber(a: Analysis) -> CheckResult:
    if a.fiber is None:
        return _inapplicable("FIBER", ["fiber ideal configured"])
    ring = a.ring
    r = a.r
    fib = a.fiber
    values: Dict[str, object] = {
        "f": list(fib.f_coeffs),
        "g": list(fib.g_coeffs),
        "series": list(fib.series.numerator.coeffs),
    }
    holds = True
    lam_im = a.mi_colength
    # Shah: q^2 = J q forces a Cohen-Macaulay fiber cone with known series.
    v1 = a.bundle.v[1] if len(a.bundle.v) > 1 else 0
    if v1 == 0 and a.cm and a.filtration.kind in (ADIC, JADIC) and a.mu:
        expected = RationalSeries(IntPolynomial([1, a.mu[1] - r]), r)
        shah_ok = fib.series == expected
        values["shah_series_ok"] = shah_ok
        holds = holds and shah_ok
    # f0 bounds.
    if a.cm and a.filtration.kind in (ADIC, JADIC) and a.mu is not None:
        f0 = fib.f_coeffs[0]
        b1 = a.e(1) - a.e(0) - a.e_n(1) + a.h0 + a.mu[1] - r + 1
        b2 = a.e(1) - a.e_n(1) + 1
        values["f0_bounds"] = {"f0": f0, "b1": b1, "b2": b2}
        holds = holds and f0 <= min(b1, b2)
    # g1 bounds against the shifted filtration sequences.
    if a.mi_bundle is not None and lam_im is not None:
        g1 = fib.g_coeffs[1]
        w_shift = sum(a.mi_bundle.w[1:])
        v_shift = sum(a.mi_bundle.v[1:])
        lower = w_shift - lam_im
        values["g1"] = {"g1": g1, "lower": lower}
        holds = holds and g1 >= lower
        if a.cm:
            upper = v_shift - lam_im
            values["g1"]["upper"] = upper
            holds = holds and g1 <= upper
            aux_e = series_coefficients(fib.aux_data.series, r).values
            gr_shift_cm = aux_e[1] == sum(a.mi_bundle.w)
            values["g1"]["equality_iff_shift_cm"] = (g1 == lower) == gr_shift_cm
            holds = holds and values["g1"]["equality_iff_shift_cm"]
            if r >= 2:
                g2 = fib.g_coeffs[2]
                upper2 = sum(
                    (n - 1) * val
                    for n, val in enumerate(a.mi_bundle.v)
                    if n >= 2
                ) + lam_im
                values["g2_upper"] = {"g2": g2, "upper": upper2}
                holds = holds and g2 <= upper2
    # Minimal/Goto-minimal multiplicity flags.
    mm = a.e(0) == a.h0 + a.h1
    values["minimal_multiplicity"] = mm
    if a.mi_bundle is not None:
        goto_mm = a.mi_bundle.v[1] == 0 if len(a.mi_bundle.v) > 1 else False
        goto_amm = a.mi_bundle.v[1] == 1 if len(a.mi_bundle.v) > 1 else False
        values["goto_minimal_multiplicity"] = goto_mm
        values["goto_almost_minimal_multiplicity"] = goto_amm
        if goto_amm and a.cm and _gr_depth_ge(a, r - 2) is True:
            aux_e = series_coefficients(fib.aux_data.series, r).values
            shift_deep = aux_e[1] == sum(a.mi_bundle.v)
            values["fiber_depth_ge_r_minus_1"] = shift_deep
            holds = holds and shift_deep
    if a.fiber_sandwich is not None:
        values["depth_lower_bound"] = a.fiber_sandwich.lower_bound
    return CheckResult(
        "FIBER", True, (), None, None, "composite", holds, None, None,
        fib.certification.label(), values,
    )


def check_sallymod(a: Analysis) -> CheckResult:
    if a.sally is None:
        return _inapplicable("SALLYMOD", ["Sally data computed"])
    s = a.sally
    r = a.r
    values: Dict[str, object] = {
        "H_S": list(s.values),
        "series": list(s.series.numerator.coeffs),
        "trivial": s.trivial,
        "full_dimensional": s.full_dimensional,
    }
    holds = True
    if a.cm:
        expect_full = a.e(1) > a.e(0) - a.h0
        values["dim_criterion_matches"] = expect_full == bool(s.full_dimensional)
        holds = holds and values["dim_criterion_matches"]
        if s.full_dimensional:
            e0s = s.coefficients[0]
            values["e0_S"] = e0s
            holds = holds and e0s == a.e(1) - a.e(0) + a.h0
            bound = a.e(1) - a.e_n(1) - a.e(0) + a.h0
            values["e0S_upper"] = bound
            holds = holds and e0s <= bound
            if a.induced_like:
                vtail = sum(a.bundle.v[1:])
                values["vaz_bound"] = vtail
                holds = holds and e0s <= vtail
                eq_chain = {
                    "e0S_max": e0s == vtail,
                    "e1_sum_v": a.e(1) == sum(a.bundle.v),
                    "depth": _gr_depth_ge(a, r - 1),
                    "series_form": s.series
                    == RationalSeries(
                        IntPolynomial([0] + list(a.bundle.v[1:])), r
                    ),
                }
                values["vaz_equivalences"] = eq_chain
                flags = [eq_chain["e0S_max"], eq_chain["e1_sum_v"],
                         eq_chain["series_form"]]
                if eq_chain["depth"] is not None:
                    flags.append(eq_chain["depth"])
                holds = holds and len(set(flags)) == 1
        if a.induced_like:
            trivial_iff = s.trivial == (
                (a.bundle.v[1] if len(a.bundle.v) > 1 else 0) == 0
            )
            values["trivial_iff_M2_eq_JM1"] = trivial_iff
            holds = holds and trivial_iff
    if (
        a.filtration.kind == ADIC
        and a.ring.equal(a.filtration.q, a.ring.maximal_ideal())
        and s.full_dimensional
    ):
        e0s = (
            s.coefficients[0]
            if s.coefficients is not None
            else None
        )
        if e0s is not None:
            bound = sum(a.bundle.v) - a.e(0) + 1
            values["ncm_bound"] = bound
            holds = holds and e0s <= bound
            eq1 = e0s == bound
            eq2 = a.e(1) - a.e_n(1) == sum(a.bundle.v)
            eq3 = a.cm and _gr_depth_ge(a, r - 1) is True
            values["ncm_equivalences"] = {"eq1": eq1, "eq2": eq2, "eq3": eq3}
            holds = holds and (eq1 == eq2)
            if _gr_depth_ge(a, r - 1) is not None:
                holds = holds and (eq2 == eq3)
    return CheckResult(
        "SALLYMOD", True, (), None, None, "composite", holds, None, None,
        s.certification.label(), values,
    )


_CHECKS = {
    "NORTHCOTT-GEN": check_northcott_gen,
    "ABHYANKAR-VALLA": check_abhyankar_valla,
    "HUCKABA": check_huckaba,
    "HM-EQUIV": check_hm_equiv,
    "E1-WJ": check_e1_wj,
    "GU-VV1": check_gu_vv1,
    "KIRBY": check_kirby,
    "RV-IC": check_rv_ic,
    "ELIAS-VALLA": check_elias_valla,
    "BORDER-0": check_border0,
    "BORDER-1": check_border1,
    "BORDER-2": check_border2,
    "NARITA": check_narita,
    "ITOH-E2": check_itoh_e2,
    "REDNUM": check_rednum,
    "SALLY-GEN": check_sally_gen,
    "HW": check_hw,
    "SAT": check_sat,
    "D1-EXACT": check_d1_exact,
    "EEN": check_een,
    "TH2": check_th2,
    "FIBER": check_fiber,
    "SALLYMOD": check_sallymod,
}
