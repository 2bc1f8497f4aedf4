"""Category data files and deterministic JSON output.

A category file is a JSON document::

    {
      "name": "ising",
      "objects": ["vac", "sigma", "psi"],
      "unit": "vac",
      "dual": {"vac": "vac", "sigma": "sigma", "psi": "psi"},
      "fusion": [["sigma", "sigma", "vac"], ...],
      "F": [{"a": .., "b": .., "c": .., "d": .., "e": .., "f": .., "value": [re, im]}, ...],
      "R": [{"a": .., "b": .., "c": .., "value": [re, im]}, ...],
      "twists": [{"a": .., "value": [re, im]}, ...]
    }

Labels are object names. F entries with a unit among ``a, b, c`` and R
entries with a unit leg may be omitted and default to 1; a missing twist
defaults to 1 only for the unit. Floats are written with 17 significant
digits so every value survives a save/load round trip bit for bit.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .category import CategoryError, RibbonCategory

FORMAT_VERSION = 1


class CategoryFileError(CategoryError):
    """Unreadable or inconsistent category file."""


# ---------------------------------------------------------------------------
# Deterministic JSON


def _fmt_float(v: float) -> str:
    if not math.isfinite(v):
        raise ValueError(f"non-finite value {v!r} cannot be written")
    return format(v, ".17g")


def _is_flat(v) -> bool:
    return isinstance(v, (list, tuple)) and all(not isinstance(x, (list, tuple, dict)) for x in v)


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON text with fixed float formatting; flat lists stay on one line."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        if all(not isinstance(v, (list, tuple, dict)) or _is_flat(v) for v in obj.values()) and len(obj) <= 8:
            return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v, indent)}" for k, v in obj.items()) + "}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if _is_flat(obj):
            return "[" + ", ".join(dumps(v, indent) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item(), indent, _level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def complex_pair(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


# ---------------------------------------------------------------------------
# Category <-> document


def category_to_dict(cat: RibbonCategory) -> dict:
    nm = cat.name_of
    u = cat.unit
    k = cat.num_objects
    fusion = [
        [nm(a), nm(b), nm(c)]
        for a in range(k)
        for b in range(k)
        for c in cat.fuse(a, b)
    ]
    f_records = []
    for key in sorted(cat.f):
        val = cat.f[key]
        if u in key[:3] and val == 1:
            continue
        rec = dict(zip("abcdef", (nm(v) for v in key)))
        rec["value"] = complex_pair(val)
        f_records.append(rec)
    r_records = []
    for key in sorted(cat.r):
        val = cat.r[key]
        if u in key[:2] and val == 1:
            continue
        rec = dict(zip("abc", (nm(v) for v in key)))
        rec["value"] = complex_pair(val)
        r_records.append(rec)
    return {
        "format": FORMAT_VERSION,
        "name": cat.name,
        "objects": cat.names(),
        "unit": nm(u),
        "dual": {nm(a): nm(cat.dual(a)) for a in range(k)},
        "fusion": fusion,
        "F": f_records,
        "R": r_records,
        "twists": [{"a": nm(a), "value": complex_pair(cat.theta(a))} for a in range(k)],
    }


def _value(rec: dict, where: str) -> complex:
    v = rec.get("value")
    if not (isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v)):
        raise CategoryFileError(f"{where}: value must be a [re, im] pair, got {v!r}")
    return complex(float(v[0]), float(v[1]))


def category_from_dict(doc: dict) -> RibbonCategory:
    if not isinstance(doc, dict):
        raise CategoryFileError("category document must be a JSON object")
    for key in ("name", "objects", "unit", "fusion"):
        if key not in doc:
            raise CategoryFileError(f"missing required field {key!r}")
    names = doc["objects"]
    if not isinstance(names, list) or not names or not all(isinstance(s, str) for s in names):
        raise CategoryFileError("objects must be a non-empty list of names")
    ids = {s: i for i, s in enumerate(names)}
    if len(ids) != len(names):
        raise CategoryFileError(f"object names are not unique: {names}")

    def lookup(label, where):
        if label not in ids:
            raise CategoryFileError(f"{where}: unknown object {label!r}")
        return ids[label]

    unit = lookup(doc["unit"], "unit")
    dual_map = doc.get("dual", {})
    dual = []
    for s in names:
        if s not in dual_map:
            raise CategoryFileError(f"dual: no entry for {s!r}")
        dual.append(lookup(dual_map[s], "dual"))
    fusion = []
    for i, t in enumerate(doc["fusion"]):
        if not (isinstance(t, list) and len(t) == 3):
            raise CategoryFileError(f"fusion[{i}]: expected [a, b, c], got {t!r}")
        fusion.append(tuple(lookup(v, f"fusion[{i}]") for v in t))
    f = {}
    for i, rec in enumerate(doc.get("F", [])):
        where = f"F[{i}]"
        key = tuple(lookup(rec.get(c), where) for c in "abcdef")
        if key in f:
            raise CategoryFileError(f"{where}: duplicate entry")
        f[key] = _value(rec, where)
    r = {}
    for i, rec in enumerate(doc.get("R", [])):
        where = f"R[{i}]"
        key = tuple(lookup(rec.get(c), where) for c in "abc")
        if key in r:
            raise CategoryFileError(f"{where}: duplicate entry")
        r[key] = _value(rec, where)
    twist = [None] * len(names)
    for i, rec in enumerate(doc.get("twists", [])):
        a = lookup(rec.get("a"), f"twists[{i}]")
        twist[a] = _value(rec, f"twists[{i}]")
    if twist[unit] is None:
        twist[unit] = 1.0
    missing = [names[a] for a, t in enumerate(twist) if t is None]
    if missing:
        raise CategoryFileError(f"twists: no value for {missing}")
    return RibbonCategory.from_data(str(doc["name"]), names, unit, dual, fusion, f, r, twist)


def _parse_int(text: str):
    # keeps "-0" as -0.0 so signed zeros survive the round trip
    return float(text) if text.startswith("-0") else int(text)


def dumps_category(cat: RibbonCategory) -> str:
    return dumps(category_to_dict(cat)) + "\n"


def loads_category(text: str) -> RibbonCategory:
    try:
        doc = json.loads(text, parse_int=_parse_int)
    except json.JSONDecodeError as exc:
        raise CategoryFileError(f"not valid JSON: {exc}") from exc
    return category_from_dict(doc)


def save_category(cat: RibbonCategory, path: str | Path) -> None:
    Path(path).write_text(dumps_category(cat), encoding="utf-8")


def load_category(path: str | Path) -> RibbonCategory:
    return loads_category(Path(path).read_text(encoding="utf-8"))
