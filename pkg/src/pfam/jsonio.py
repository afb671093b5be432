"""JSON schemas for ideals, families and regions, and report encoders.

Exact rationals are written as {"exact": "num/den", "approx": 12-digit float}.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import fields, is_dataclass
from fractions import Fraction

from .errors import DimensionMismatch
from .family import (
    ClosedPower,
    Constant,
    Frobenius,
    OrdinaryPower,
    ShiftedProduct,
    Table,
    Truncation,
)
from .monomial import MonomialIdeal, minimalize
from .regions import make_convex, make_staircase


class SchemaError(ValueError):
    """Input JSON does not match the expected schema."""


def rational(v):
    v = Fraction(v)
    return {"exact": f"{v.numerator}/{v.denominator}", "approx": float(f"{float(v):.12g}")}


def parse_rational(v):
    if isinstance(v, bool):
        raise SchemaError("booleans are not numbers")
    if isinstance(v, dict) and "exact" in v:
        v = v["exact"]
    try:
        return Fraction(v) if not isinstance(v, float) else Fraction(str(v))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"not a rational: {v!r}") from exc


def _require(obj, key, what):
    if not isinstance(obj, dict):
        raise SchemaError(f"{what} must be a JSON object")
    if key not in obj:
        raise SchemaError(f'{what} is missing "{key}"')
    return obj[key]


def parse_ideal(obj, dim=None):
    d = _require(obj, "dim", "ideal")
    gens = _require(obj, "gens", "ideal")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise SchemaError('"dim" must be a positive integer')
    if dim is not None and d != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {d}")
    if not isinstance(gens, list) or not all(
        isinstance(g, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in g) for g in gens
    ):
        raise SchemaError('"gens" must be a list of integer lists')
    if any(len(g) != d for g in gens):
        raise DimensionMismatch(f"generator length differs from dim={d}")
    try:
        return minimalize(gens, d)
    except DimensionMismatch:
        raise
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def ideal_json(I):
    return {"dim": I.dim, "gens": [list(g) for g in I.gens]}


_SIMPLE = {
    "frobenius": Frobenius,
    "ordinary_power": OrdinaryPower,
    "closed_power": ClosedPower,
    "constant": Constant,
}


def parse_family(obj, dim=None):
    """Family AST: {"op": ..., ...}; see README for the grammar."""
    op = _require(obj, "op", "family")
    if op in _SIMPLE:
        return _SIMPLE[op](parse_ideal(_require(obj, "ideal", op), dim))
    if op == "table":
        entries = _require(obj, "entries", op)
        if not isinstance(entries, list) or not entries:
            raise SchemaError('"entries" must be a nonempty list')
        ideals = [parse_ideal(x, dim) for x in entries]
        if len({I.dim for I in ideals}) != 1:
            raise DimensionMismatch("table entries of different dimensions")
        return Table(tuple(ideals), bool(obj.get("extend", True)))
    if op == "truncate":
        a = _require(obj, "a", op)
        if not isinstance(a, int) or a < 0:
            raise SchemaError('"a" must be a nonnegative integer')
        return Truncation(parse_family(_require(obj, "arg", op), dim), a)
    if op == "shifted_product":
        base = obj.get("base_b")
        if base is not None and (not isinstance(base, int) or base < 0):
            raise SchemaError('"base_b" must be a nonnegative integer or null')
        factors = parse_factors(_require(obj, "factors", op), dim)
        return ShiftedProduct(tuple(factors), base, obj.get("dim", dim))
    raise SchemaError(f"unknown family op {op!r}")


def parse_factors(items, dim=None):
    if not isinstance(items, list):
        raise SchemaError("factors must be a list")
    out = []
    for item in items:
        fam = parse_family(_require(item, "family", "factor"), dim)
        shift = item.get("shift", 0)
        if not isinstance(shift, int) or shift < 0:
            raise SchemaError('"shift" must be a nonnegative integer')
        out.append((fam, shift))
    if len({f.dim for f, _ in out}) > 1:
        raise DimensionMismatch("factors of different dimensions")
    return out


def family_json(F):
    for name, cls in _SIMPLE.items():
        if isinstance(F, cls):
            return {"op": name, "ideal": ideal_json(F.ideal)}
    if isinstance(F, Table):
        return {"op": "table", "entries": [ideal_json(I) for I in F.entries], "extend": F.extend}
    if isinstance(F, Truncation):
        return {"op": "truncate", "a": F.a, "arg": family_json(F.family)}
    if isinstance(F, ShiftedProduct):
        return {
            "op": "shifted_product",
            "base_b": F.base,
            "factors": [{"family": family_json(f), "shift": n} for f, n in F.factors],
        }
    raise TypeError(f"not a family: {F!r}")


def parse_region(obj):
    kind = _require(obj, "kind", "region")
    d = _require(obj, "dim", "region")
    key = "apexes" if kind == "staircase" else "vertices"
    pts = _require(obj, key, "region")
    if not isinstance(pts, list) or not pts:
        raise SchemaError(f'"{key}" must be a nonempty list')
    pts = [tuple(parse_rational(v) for v in p) for p in pts]
    if any(len(p) != d for p in pts):
        raise DimensionMismatch(f"point length differs from dim={d}")
    if kind == "staircase":
        return make_staircase(pts, d)
    if kind == "convex":
        return make_convex(pts, d)
    raise SchemaError(f"unknown region kind {kind!r}")


def region_json(R):
    key = "apexes" if R.kind == "staircase" else "vertices"
    return {
        "kind": R.kind,
        "dim": R.dim,
        key: [[rational(v) for v in p] for p in R.points],
        "exact": R.exact,
    }


def encode(obj):
    """Recursively convert results to JSON-ready values."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, MonomialIdeal):
        return ideal_json(obj)
    if is_dataclass(obj) and hasattr(obj, "kind") and hasattr(obj, "points"):
        return region_json(obj)
    if is_dataclass(obj):
        return {f.name: encode(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, dict):
        return {_key(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    return str(obj)


def _key(k):
    if isinstance(k, tuple):
        return ",".join(str(v) for v in k)
    return str(k)


def dumps(obj):
    return json.dumps(encode(obj), sort_keys=True, indent=2) + "\n"


def csv_rows(rows, columns):
    """CSV text with fixed column order; Fraction cells expand to num, den."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([row[c] for c in columns])
    return buf.getvalue()


def sequence_rows(entries, p, d):
    """(b, e, q, num, den, float) rows for limit sequences."""
    out = []
    for b, e, v in entries:
        v = Fraction(v)
        out.append(
            {
                "b": "live" if b is None else b,
                "e": e,
                "q": p**e,
                "num": v.numerator,
                "den": v.denominator,
                "float": f"{float(v):.12g}",
            }
        )
    return out


SEQUENCE_COLUMNS = ["b", "e", "q", "num", "den", "float"]
