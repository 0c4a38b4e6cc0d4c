"""Report assembly: one deterministic structured document per analysis.

The JSON document is byte-stable for a fixed instance and seed: keys are
emitted in a fixed order and no timing or environment data is included.
"""

from __future__ import annotations

import json
from typing import Dict, List, Optional

from .analysis import Analysis
from .audit import CheckResult


def _series_dict(series) -> Dict:
    return {
        "numerator": list(series.numerator.coeffs),
        "denominator_exponent": series.denom_exponent,
    }


def _element_strings(analysis: Analysis, elems) -> List[str]:
    ring = analysis.ring
    return [ring.element_string(ring.parse_element(e)) for e in elems]


def analysis_report(analysis: Analysis, checks: Optional[List[CheckResult]] = None) -> Dict:
    red = analysis.reduction
    doc: Dict = {
        "instance": analysis.name,
        "dimension": analysis.r,
        "series": _series_dict(analysis.base.series),
        "series_certification": analysis.base.certification.label(),
        "hilbert_function": list(analysis.base.values),
        "hilbert_samuel": list(analysis.base.samuel),
        "coefficients": list(analysis.base.coefficients.values),
        "reduction": {
            "generators": _element_strings(analysis, red.elements),
            "reduction_number": red.reduction_number,
            "stabilization_index": red.stabilization_index,
            "seed": red.seed,
            "candidates_tried": red.candidates_tried,
            "ambient_cohen_macaulay": red.ambient_cm,
            "records": [
                {
                    "element": analysis.ring.element_string(
                        analysis.ring.parse_element(r.element)
                    ),
                    "provenance": r.provenance,
                    "verification": r.verification,
                    "regularity": r.regularity,
                    "level": r.level,
                }
                for r in red.records
            ],
        },
        "sequences": {
            "v": list(analysis.bundle.v),
            "w": list(analysis.bundle.w),
            "vv": list(analysis.bundle.vv),
            "u": list(analysis.bundle.u) if analysis.bundle.u else None,
        },
        "parameter_adic_coefficients": [
            analysis.e_n(i) for i in range(analysis.r + 1)
        ],
        "torsion": {
            "computable": analysis.w.computable,
            "length": analysis.w.length,
            "status": analysis.w.status,
            "lift": list(analysis.w.lift_gens),
        },
        "saturated_coefficients": (
            list(analysis.sat_coeffs) if analysis.sat_coeffs else None
        ),
        "ratliff_rush": None,
        "depth": {
            "certificates": [
                {
                    "name": c.name,
                    "status": c.status,
                    "certification": c.certification.label()
                    if c.certification
                    else None,
                    "witness": c.witness,
                    "note": c.note,
                }
                for c in analysis.depth_certs
            ],
            "lower_bound": analysis.depth_lb,
            "exact": analysis.depth_exact,
        },
        "mu_sequence": analysis.mu,
        "order_in_maximal": analysis.order_p,
        "integrally_closed": analysis.integrally_closed,
        "ratliff_rush_closed": analysis.rr_closed,
        "sally_membership_index": analysis.sally_index,
        "errors": dict(sorted(analysis.errors.items())),
    }
    if analysis.rr is not None:
        doc["ratliff_rush"] = {
            "all_members_closed": analysis.rr.all_equal,
            "first_witness": (
                {
                    "index": analysis.rr.first_witness[0],
                    "element": analysis.rr.first_witness[1],
                }
                if analysis.rr.first_witness
                else None
            ),
            "coincidence_index": analysis.rr.coincidence_index,
            "entries": [
                {
                    "index": e.index,
                    "closed": e.equals_member,
                    "steps": e.steps,
                    "certification": e.certification.label(),
                }
                for e in analysis.rr.entries
            ],
        }
    elif analysis.rr_note:
        doc["ratliff_rush"] = {"unavailable": analysis.rr_note}
    if analysis.sally is not None:
        s = analysis.sally
        doc["sally"] = {
            "values": list(s.values),
            "series": _series_dict(s.series),
            "coefficients": list(s.coefficients) if s.coefficients else None,
            "trivial": s.trivial,
            "full_dimensional": s.full_dimensional,
            "e_filtration_series": _series_dict(s.e_data.series),
        }
    else:
        doc["sally"] = None
    if analysis.fiber is not None:
        f = analysis.fiber
        doc["fiber_cone"] = {
            "values": list(f.values),
            "series": _series_dict(f.series),
            "f_coefficients": list(f.f_coeffs),
            "g_coefficients": list(f.g_coeffs),
            "shifted_series": _series_dict(f.aux_data.series),
            "depth_lower_bound": (
                analysis.fiber_sandwich.lower_bound
                if analysis.fiber_sandwich
                else None
            ),
        }
    else:
        doc["fiber_cone"] = None
    if checks is not None:
        doc["checks"] = [c.as_dict() for c in checks]
    return doc


def to_json(doc: Dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def human_summary(doc: Dict) -> str:
    lines = []
    lines.append(f"instance: {doc['instance']}")
    num = doc["series"]["numerator"]
    r = doc["series"]["denominator_exponent"]
    lines.append(
        f"series:   ({_poly_str(num)}) / (1-z)^{r}   [{doc['series_certification']}]"
    )
    lines.append(f"coefficients e_0..e_{r}: {doc['coefficients']}")
    red = doc["reduction"]
    lines.append(
        "reduction: J = ({}), r_J = {}, CM ambient: {}".format(
            ", ".join(red["generators"]),
            red["reduction_number"],
            red["ambient_cohen_macaulay"],
        )
    )
    seq = doc["sequences"]
    lines.append(f"v: {seq['v']}  w: {seq['w']}  vv: {seq['vv']}")
    depth = doc["depth"]
    lines.append(
        f"depth of gr: lower bound {depth['lower_bound']}"
        + (f", exact {depth['exact']}" if depth["exact"] is not None else "")
    )
    rr = doc.get("ratliff_rush")
    if isinstance(rr, dict) and "all_members_closed" in rr:
        if rr["all_members_closed"]:
            lines.append("ratliff-rush: every computed member is closed")
        else:
            w = rr["first_witness"]
            lines.append(
                f"ratliff-rush: witness {w['element']} at index {w['index']}"
            )
    if doc.get("checks"):
        lines.append("checks:")
        for c in doc["checks"]:
            if not c["applicable"]:
                status = "inapplicable ({})".format(
                    "; ".join(c["unmet_hypotheses"]) or "see error"
                )
            else:
                status = "holds" if c["holds"] else "FAILS"
                if c.get("sharp"):
                    status += ", sharp"
                if c.get("conclusion_verified") is not None:
                    status += ", conclusion " + (
                        "verified" if c["conclusion_verified"] else "NOT verified"
                    )
            lines.append(f"  {c['check_id']:<16} {status}")
    return "\n".join(lines) + "\n"


def _poly_str(coeffs: List[int]) -> str:
    from .series import IntPolynomial

    return str(IntPolynomial(coeffs))
