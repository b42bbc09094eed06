"""Analysis reports as plain, key-sorted JSON-ready dicts."""

from __future__ import annotations

import hashlib
import json
import time
from fractions import Fraction
from typing import Iterable

from .core import RuleBase, format_rule_base
from .measures import MEASURES, RULE_BASED, get_measure
from .mis import checked_universe
from .shapley import ShapleyVector, adjusted_shapley_vector, culpability_ranking, shapley_vector

SCHEMA_VERSION = 1


def decimal(x: Fraction) -> str:
    return format(float(x), ".6g")


def number(x: Fraction) -> dict[str, str]:
    return {"fraction": str(Fraction(x)), "decimal": decimal(x)}


def vector_rows(vec: ShapleyVector) -> list[dict[str, str]]:
    return [{"element": str(e), **number(v)} for e, v in vec]


def input_digest(base: RuleBase) -> dict:
    text = format_rule_base(base)
    return {
        "canonical": text,
        "sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
        "elements": len(base),
        "facts": len(base.facts),
        "rules": len(base.rules_only),
        "atoms": len(base.signature),
    }


def measures_section(base: RuleBase, names: Iterable[str] = tuple(MEASURES)) -> dict:
    return {n: number(get_measure(n)(base)) for n in names}


def mi_section(base: RuleBase) -> dict:
    u = checked_universe(base)
    listing = lambda masks: [[str(r) for r in u.sub_base(m)] for m in masks]
    return {"mi": listing(u.mis), "mi_without_facts": listing(u.mis_without_facts)}


def shapley_section(base: RuleBase, names: Iterable[str], classical: bool = False) -> dict:
    out = {}
    for n in names:
        entry = {"adjusted": vector_rows(adjusted_shapley_vector(n, base))}
        if classical:
            entry["classical"] = vector_rows(shapley_vector(n, base))
        out[n] = entry
    return out


def ranking_rows(base: RuleBase, name: str, hide_facts: bool = False) -> list[dict]:
    ranking = culpability_ranking(name, base)
    if hide_facts:
        ranking = ranking.without_facts()
    return [{"rank": i + 1, "element": str(e), "fact": e.is_fact, **number(v)} for i, (e, v) in enumerate(ranking)]


def analyze(
    base: RuleBase,
    shapley_measures: Iterable[str] = RULE_BASED,
    classical: bool = False,
    hide_facts: bool = False,
    timing: bool = False,
) -> dict:
    """Full report: MI listings, all eight measures, Shapley vectors, rankings."""
    shapley_measures = list(shapley_measures)
    started = time.perf_counter()
    report = {
        "schema": SCHEMA_VERSION,
        "input": input_digest(base),
        **mi_section(base),
        "measures": measures_section(base),
        "shapley": shapley_section(base, shapley_measures, classical),
        "ranking": {n: ranking_rows(base, n, hide_facts) for n in shapley_measures},
    }
    if timing:
        report["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
