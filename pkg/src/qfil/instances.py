"""Instance documents: the TOML schema and its loader.

Schema (one table per concern):

    name = "example"                    # optional; defaults to the file stem

    [ring]
    backend = "artinian"                # or "semigroup"
    variables = ["x", "y"]              # artinian
    relations = ["x^2", "x*y"]          # artinian, optional
    characteristic = 0                  # optional prime-field mode
    max_truncation = 64                 # optional
    generators = [4, 5, 6, 7]           # semigroup (ints for d = 1,
                                        #  vectors like [[4,0],[0,4]] else)

    [filtration]
    kind = "adic"                       # adic | induced | prefix
    q = ["x^4", "y^4"]                  # generators of q
    L = ["x^2"]                         # induced kind only
    prefix = [["x^2","y^2"], ...]       # prefix kind only
    I = ["x", "y"]                      # optional fiber-cone ideal

    [analysis]
    jmax = 12                           # optional
    window = 3
    seed = 0
    reduction = ["y^4", "x^4"]          # optional user-supplied reduction
    max_candidates = 24
    max_trunc = 64                      # alias for ring.max_truncation
    assert_depth_positive = false

Polynomial grammar: integer coefficients, ^ powers, * products, + and -.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - exercised on 3.10
    import tomli as tomllib

from .artinian import AmbientRing
from .errors import InputError
from .filtration import (
    Filtration,
    adic_filtration,
    induced_filtration,
    prefix_filtration,
)
from .semigroup import AffineSemigroup, SemigroupRing


@dataclass
class Instance:
    name: str
    ring: object
    filtration: Filtration
    fiber_ideal: Optional[object]
    options: Dict[str, object] = field(default_factory=dict)
    note: str = ""


def load_instance_file(path, char_override: Optional[int] = None) -> Instance:
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise InputError(f"cannot read instance file {path}: {exc}") from None
    name = doc.get("name", path.stem)
    return build_instance(name, doc, char_override)


def build_instance(
    name: str, doc: Dict, char_override: Optional[int] = None
) -> Instance:
    try:
        ring_cfg = doc["ring"]
        filt_cfg = doc["filtration"]
    except KeyError as exc:
        raise InputError(f"instance is missing the {exc.args[0]} table") from None
    analysis_cfg = doc.get("analysis", {})

    backend = ring_cfg.get("backend", "artinian")
    char = (
        char_override
        if char_override is not None
        else int(ring_cfg.get("characteristic", 0))
    )
    max_trunc = int(
        analysis_cfg.get("max_trunc", ring_cfg.get("max_truncation", 64))
    )
    if backend == "artinian":
        variables = ring_cfg.get("variables")
        if not variables:
            raise InputError("artinian ring needs a variables list")
        plain = AmbientRing(variables, [], char, max_trunc)
        relations = [plain.parse(t) for t in ring_cfg.get("relations", [])]
        ring = AmbientRing(variables, relations, char, max_trunc)
        def parse_gens(items):
            return ring.ideal([ring.parse(str(t)) for t in items])
    elif backend == "semigroup":
        gens = ring_cfg.get("generators")
        if not gens:
            raise InputError("semigroup ring needs a generators list")
        ring = SemigroupRing(AffineSemigroup([g if isinstance(g, list) else [g] for g in gens]), char)
        def parse_gens(items):
            return ring.ideal(list(items))
    else:
        raise InputError(f"unknown backend {backend!r}")

    kind = filt_cfg.get("kind", "adic")
    q_items = filt_cfg.get("q")
    if not q_items:
        raise InputError("filtration needs q generators")
    q = parse_gens(q_items)
    if kind == "adic":
        filtration = adic_filtration(ring, q)
    elif kind == "induced":
        L_items = filt_cfg.get("L")
        if not L_items:
            raise InputError("induced filtration needs L generators")
        filtration = induced_filtration(ring, q, parse_gens(L_items))
    elif kind == "prefix":
        prefix_items = filt_cfg.get("prefix")
        if not prefix_items:
            raise InputError("prefix filtration needs a prefix list")
        filtration = prefix_filtration(
            ring, q, [parse_gens(p) for p in prefix_items]
        )
    else:
        raise InputError(f"unknown filtration kind {kind!r}")

    fiber = None
    if filt_cfg.get("I"):
        fiber = parse_gens(filt_cfg["I"])

    options: Dict[str, object] = {}
    if "jmax" in analysis_cfg:
        options["jmax"] = int(analysis_cfg["jmax"])
    options["window"] = int(analysis_cfg.get("window", 3))
    options["seed"] = int(analysis_cfg.get("seed", 0))
    options["max_candidates"] = int(analysis_cfg.get("max_candidates", 24))
    options["assert_depth_positive"] = bool(
        analysis_cfg.get("assert_depth_positive", False)
    )
    if analysis_cfg.get("reduction"):
        if backend == "artinian":
            options["reduction"] = [
                ring.parse(str(t)) for t in analysis_cfg["reduction"]
            ]
        else:
            options["reduction"] = [
                ring.parse_element(t) for t in analysis_cfg["reduction"]
            ]
    return Instance(
        name, ring, filtration, fiber, options, doc.get("note", "")
    )


def analyze_instance(inst: Instance):
    from .analysis import analyze

    return analyze(
        inst.name,
        inst.ring,
        inst.filtration,
        fiber_ideal=inst.fiber_ideal,
        jmax=inst.options.get("jmax"),
        window=inst.options.get("window", 3),
        seed=inst.options.get("seed", 0),
        reduction_elements=inst.options.get("reduction"),
        assert_depth_positive=inst.options.get("assert_depth_positive", False),
        max_candidates=inst.options.get("max_candidates", 24),
    )
