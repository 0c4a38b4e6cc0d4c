"""Golden corpus: fourteen fixed instances with frozen expectations.

Every expectation is an exact value; a mismatch is a hard failure naming the
instance and the report field.  The fixture files live next to this module
and double as format documentation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .analysis import Analysis
from .audit import audit
from .errors import QfilError
from .filtration import hilbert, quotient_instance
from .instances import analyze_instance, load_instance_file
from .invariants import verify_superficial
from .reports import analysis_report
from .series import series_coefficients

CORPUS_DIR = Path(__file__).parent / "corpus"


@dataclass
class GoldenInstance:
    name: str
    filename: str
    expectations: List[Tuple[str, object]]
    extras: Optional[Callable[[Analysis], Dict[str, object]]] = None


def _x3_extras(a: Analysis) -> Dict[str, object]:
    ring = a.ring
    quot = quotient_instance(a.filtration, ring.parse("y"))
    data = hilbert(quot, jmax=12)
    rec = verify_superficial(a.filtration, ring.parse("y"), base_data=a.base)
    return {
        "quotient_numerator": list(data.series.numerator.coeffs),
        "quotient_denominator": data.series.denom_exponent,
        "quotient_coefficients": list(
            series_coefficients(data.series, 2).values
        ),
        "y_verification": rec.verification,
        "y_regularity": rec.regularity,
    }


def _corner_extras(a: Analysis) -> Dict[str, object]:
    ring = a.ring
    bad = verify_superficial(a.filtration, ring.parse("x^7"), base_data=a.base)
    good = verify_superficial(
        a.filtration, ring.parse("x^7+y^7"), base_data=a.base
    )
    return {
        "corner_verification": bad.verification,
        "diagonal_verification": good.verification,
        "diagonal_regularity": good.regularity,
    }


GOLDEN: List[GoldenInstance] = [
    GoldenInstance(
        "x3-quotient",
        "x3-quotient.toml",
        [
            ("series.numerator", [1, 1, 1, 0, 0, -1, -1, 0, 0, 1]),
            ("series.denominator_exponent", 2),
            ("coefficients", [2, 1, 12]),
            ("torsion.length", 12),
            ("depth.exact", 0),
            ("extras.quotient_numerator", [1, 1, 1, 0, 0, 0, -1]),
            ("extras.quotient_denominator", 1),
            ("extras.quotient_coefficients", [2, -3, -14]),
            ("extras.y_verification", "CRITERION_EI"),
            ("extras.y_regularity", "TORSION(4)"),
        ],
        _x3_extras,
    ),
    GoldenInstance(
        "numerical-4567",
        "numerical-4567.toml",
        [
            ("series.numerator", [2, 1, 1]),
            ("series.denominator_exponent", 1),
            ("coefficients", [4, 3]),
            ("reduction.reduction_number", 2),
            ("reduction.ambient_cohen_macaulay", True),
            ("checks.REDNUM.holds", True),
            ("checks.REDNUM.sharp", True),
            ("sally.series.numerator", [0, 1]),
            ("sally.coefficients", [1]),
        ],
    ),
    GoldenInstance(
        "prefix-345",
        "prefix-345.toml",
        [
            ("series.numerator", [1, 2, -3, 3]),
            ("series.denominator_exponent", 1),
            ("coefficients", [3, 5]),
            ("parameter_adic_coefficients", [3, 0]),
            ("checks.D1-EXACT.holds", True),
        ],
    ),
    GoldenInstance(
        "torsion-line",
        "torsion-line.toml",
        [
            ("series.numerator", [1, 1, -1]),
            ("series.denominator_exponent", 1),
            ("coefficients", [1, -1]),
            ("torsion.length", 1),
            ("parameter_adic_coefficients", [1, -1]),
            ("checks.NORTHCOTT-GEN.sharp", True),
            ("checks.SAT.holds", True),
        ],
    ),
    GoldenInstance(
        "plane-with-fat-origin",
        "plane-with-fat-origin.toml",
        [
            ("series.numerator", [2, -2, 1]),
            ("series.denominator_exponent", 2),
            ("coefficients", [1, 0, 1]),
            ("torsion.length", 1),
        ],
    ),
    GoldenInstance(
        "quadrics-e2-zero",
        "quadrics-e2-zero.toml",
        [
            ("series.numerator", [5, 0, 6, -4, 1]),
            ("series.denominator_exponent", 3),
            ("coefficients", [8, 4, 0, 0]),
            ("depth.exact", 0),
            ("reduction.ambient_cohen_macaulay", True),
        ],
    ),
    GoldenInstance(
        "socle-cubes",
        "socle-cubes.toml",
        [
            ("series.numerator", [1, 3, 0, 3, -1]),
            ("series.denominator_exponent", 2),
            ("coefficients", [6, 8, 3]),
            ("checks.ITOH-E2.holds", True),
            ("checks.ITOH-E2.sharp", True),
            ("depth.exact", 0),
            ("reduction.ambient_cohen_macaulay", True),
        ],
    ),
    GoldenInstance(
        "staircase-16",
        "staircase-16.toml",
        [
            ("series.numerator", [11, 3, 3, -1]),
            ("series.denominator_exponent", 2),
            ("coefficients", [16, 6, 0]),
            ("ratliff_rush.first_witness.element", "x^2*y^2"),
            ("ratliff_rush.first_witness.index", 1),
            ("integrally_closed", False),
            ("depth.exact", 0),
            ("checks.BORDER-1.values.dichotomy_branch", "depth_zero"),
            ("checks.NARITA.conclusion_verified", True),
            ("sally.coefficients", [1, 0]),
        ],
    ),
    GoldenInstance(
        "staircase-88",
        "staircase-88.toml",
        [
            ("series.numerator", [61, 26, 1]),
            ("series.denominator_exponent", 2),
            ("coefficients", [88, 28, 1]),
            ("checks.BORDER-1.applicable", True),
            ("checks.BORDER-1.values.dichotomy_branch", "short"),
            ("checks.BORDER-1.values.gr_cohen_macaulay", "FAILS"),
            ("depth.lower_bound", 1),
            ("depth.exact", 1),
        ],
    ),
    GoldenInstance(
        "staircase-77",
        "staircase-77.toml",
        [
            ("series.numerator", [49, 25, 3, 1, -1]),
            ("series.denominator_exponent", 2),
            ("coefficients", [77, 30, 0]),
            ("checks.BORDER-2.applicable", False),
            ("depth.exact", 0),
        ],
    ),
    GoldenInstance(
        "staircase-126",
        "staircase-126.toml",
        [
            ("series.numerator", [87, 37, 2]),
            ("series.denominator_exponent", 2),
            ("coefficients", [126, 41, 2]),
            ("checks.BORDER-2.applicable", True),
            ("checks.BORDER-2.holds", True),
            ("depth.lower_bound", 1),
        ],
    ),
    GoldenInstance(
        "corner-pair",
        "corner-pair.toml",
        [
            ("series.numerator", [32, 11, 7, 0, -1]),
            ("series.denominator_exponent", 2),
            ("coefficients", [49, 21, 1]),
            ("extras.corner_verification", "FAILED"),
            ("extras.diagonal_verification", "CRITERION_EI"),
            ("extras.diagonal_regularity", "REGULAR_CERTIFIED"),
        ],
        _corner_extras,
    ),
    GoldenInstance(
        "veronese-fiber",
        "veronese-fiber.toml",
        [
            ("series.numerator", [2, 0, 3, -1]),
            ("series.denominator_exponent", 2),
            ("coefficients", [4, 3, 0]),
            ("fiber_cone.g_coefficients", [4, -1, 1]),
            ("fiber_cone.depth_lower_bound", 1),
            ("reduction.ambient_cohen_macaulay", True),
        ],
    ),
    GoldenInstance(
        "square-power-fiber",
        "square-power-fiber.toml",
        [
            ("series.numerator", [3, 1]),
            ("series.denominator_exponent", 2),
            ("coefficients", [4, 1, 0]),
            ("fiber_cone.series.numerator", [1, 1]),
            ("fiber_cone.series.denominator_exponent", 2),
            ("sally.trivial", True),
            ("checks.FIBER.values.shah_series_ok", True),
        ],
    ),
]


def _resolve(doc: Dict, path: str):
    cur: object = doc
    for part in path.split("."):
        if isinstance(cur, dict) and part in cur:
            cur = cur[part]
        elif (
            isinstance(cur, list)
            and cur
            and isinstance(cur[0], dict)
            and "check_id" in cur[0]
        ):
            match = [c for c in cur if c["check_id"] == part]
            if not match:
                return ("<no such check>",)
            cur = match[0]
        else:
            return ("<missing>", part)
    return cur


@dataclass
class CorpusResult:
    name: str
    ok: bool
    mismatches: List[str]
    elapsed: float
    report: Dict


def corpus_run(
    selection: Optional[Sequence[str]] = None,
) -> List[CorpusResult]:
    """Analyze and audit every selected golden instance against expectations."""
    results: List[CorpusResult] = []
    for golden in GOLDEN:
        if selection is not None and golden.name not in selection:
            continue
        start = time.monotonic()
        mismatches: List[str] = []
        report: Dict = {}
        try:
            inst = load_instance_file(CORPUS_DIR / golden.filename)
            analysis = analyze_instance(inst)
            checks = audit(analysis)
            report = analysis_report(analysis, checks)
            if golden.extras is not None:
                report["extras"] = golden.extras(analysis)
            for path, expected in golden.expectations:
                got = _resolve(report, path)
                if got != expected:
                    mismatches.append(
                        f"{golden.name}: {path} expected {expected!r}, got {got!r}"
                    )
        except QfilError as exc:
            mismatches.append(f"{golden.name}: analysis failed: {exc}")
        elapsed = time.monotonic() - start
        results.append(
            CorpusResult(golden.name, not mismatches, mismatches, elapsed, report)
        )
    return results


def corpus_names() -> List[str]:
    return [g.name for g in GOLDEN]
