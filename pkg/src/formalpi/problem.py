"""JSON problem files: one document per run, rationals as ``"p/q"`` strings.

Multi-indices are 1-based and sorted.  Action entries are derivative tensor
entries ``f^(n)[i1..in]``, not monomial coefficients; the same holds for map
and vector-field entries, which also name their output ``component``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import jsonschema

from .jets import ActionJet, MapJet, SymmetricTensor

RATIONAL = r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$"
DECIMAL = r"^\s*[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?(\s*/\s*\d+)?\s*$"

_ENTRY = {
    "type": "object",
    "properties": {
        "multi_index": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "value": {"type": "string", "pattern": RATIONAL},
    },
    "required": ["multi_index", "value"],
    "additionalProperties": False,
}
_MAP_ENTRY = {
    "type": "object",
    "properties": {
        "component": {"type": "integer", "minimum": 1},
        "multi_index": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "value": {"type": "string", "pattern": RATIONAL},
    },
    "required": ["component", "multi_index", "value"],
    "additionalProperties": False,
}

SCHEMA = {
    "type": "object",
    "properties": {
        "dimension": {"type": "integer", "minimum": 1},
        "truncation": {"type": "integer", "minimum": 2},
        "value_at_critical": {"type": "string", "pattern": RATIONAL},
        "action": {"type": "array", "items": _ENTRY},
        "map": {"type": "array", "items": _MAP_ENTRY},
        "vector_field": {"type": "array", "items": _MAP_ENTRY},
        "task": {
            "type": "object",
            "properties": {
                "max_order": {"type": "integer", "minimum": 0},
                "regime": {"enum": ["laplace", "oscillatory"]},
                "kappa": {"type": "array", "items": {"type": "string", "pattern": DECIMAL}},
                "s": {"type": "array", "items": {"type": "string", "pattern": RATIONAL}},
            },
            "additionalProperties": False,
        },
    },
    "required": ["dimension", "truncation", "action"],
    "additionalProperties": False,
}


class ProblemError(ValueError):
    pass


@dataclass
class Problem:
    dimension: int
    truncation: int
    action: ActionJet
    map: Optional[MapJet] = None
    vector_field: Optional[MapJet] = None
    max_order: Optional[int] = None
    regime: str = "laplace"
    kappa: list = field(default_factory=list)
    s: list = field(default_factory=list)


def _index(raw, dim, where):
    if list(raw) != sorted(raw):
        raise ProblemError(f"{where}: multi-index {raw} is not sorted")
    if any(i > dim for i in raw):
        raise ProblemError(f"{where}: multi-index {raw} exceeds dimension {dim}")
    return tuple(i - 1 for i in raw)


def _tensors(entries, dim, order, where):
    buckets = [dict() for _ in range(order + 1)]
    for k, entry in enumerate(entries):
        idx = _index(entry["multi_index"], dim, f"{where}[{k}]")
        if len(idx) > order:
            raise ProblemError(f"{where}[{k}]: order {len(idx)} exceeds truncation {order}")
        if idx in buckets[len(idx)]:
            raise ProblemError(f"{where}[{k}]: duplicate multi-index {entry['multi_index']}")
        buckets[len(idx)][idx] = Fraction(entry["value"].replace(" ", ""))
    return buckets


def _map_jet(entries, dim, order, where):
    comps = [[dict() for _ in range(dim)] for _ in range(order)]
    for k, entry in enumerate(entries):
        c = entry["component"]
        if c > dim:
            raise ProblemError(f"{where}[{k}]: component {c} exceeds dimension {dim}")
        idx = _index(entry["multi_index"], dim, f"{where}[{k}]")
        if len(idx) > order:
            raise ProblemError(f"{where}[{k}]: order {len(idx)} exceeds truncation {order}")
        comps[len(idx) - 1][c - 1][idx] = Fraction(entry["value"].replace(" ", ""))
    return MapJet(dim, [[SymmetricTensor(n + 1, dim, comps[n][i]) for i in range(dim)] for n in range(order)])


def parse_problem(doc) -> Problem:
    """Validate a decoded JSON document and build the jets it describes."""
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ProblemError(f"invalid problem file: {exc.message}") from None
    dim, order = doc["dimension"], doc["truncation"]
    buckets = _tensors(doc["action"], dim, order, "action")
    if buckets[0]:
        raise ProblemError("action: put f(c) in value_at_critical, not as an empty multi-index")
    if buckets[1]:
        raise ProblemError("action: first-derivative entries given; the origin must be critical")
    value = Fraction(doc.get("value_at_critical", "0").replace(" ", ""))
    ders = [SymmetricTensor(0, dim, {(): value})] + [SymmetricTensor(n, dim, buckets[n]) for n in range(1, order + 1)]
    action = ActionJet(dim, ders)
    task = doc.get("task", {})
    return Problem(
        dimension=dim,
        truncation=order,
        action=action,
        map=_map_jet(doc["map"], dim, order, "map") if "map" in doc else None,
        vector_field=_map_jet(doc["vector_field"], dim, order, "vector_field") if "vector_field" in doc else None,
        max_order=task.get("max_order"),
        regime=task.get("regime", "laplace"),
        kappa=[float(Fraction(k.replace(" ", ""))) for k in task.get("kappa", [])],
        s=[Fraction(v.replace(" ", "")) for v in task.get("s", [])],
    )


def load_problem(path) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ProblemError(f"cannot read problem file {path}: {exc}") from None
    return parse_problem(doc)
