"""JSON encodings of field elements, matrices, partitions, witnesses and specs.

Field element:  {"m": 4, "c": ["1/2", "-3"]}  means 1/2 - 3 zeta_4; a bare
rational string such as "3/2" (or an int) is accepted wherever an element
is expected.  Matrix: {"m": 4, "rows": [[elem, ...], ...]}.
"""

from __future__ import annotations

import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from .cyclofield import CycNum, conductor_normalize, descend, lcm
from .errors import FieldError, ParseError
from .exactmat import CycMatrix
from .kgroup import KClass
from .nhom import NHomSpec
from .npotent import NPartition
from .witness import EquivWitness, SimWitness

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {value!r}") from None
    raise ParseError(f"expected an integer or 'p/q' string, got {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q)


def cyc_from_json(obj, m: int | None = None) -> CycNum:
    """Decode an element; bare coefficient lists are read in Q(zeta_m)."""
    if isinstance(obj, dict):
        if "c" not in obj:
            raise ParseError("field element object needs a 'c' coefficient list")
        order = obj.get("m", 1)
        if not isinstance(order, int) or order < 1:
            raise ParseError(f"bad field order {order!r}")
        return CycNum(order, [parse_rational(c) for c in obj["c"]])
    if isinstance(obj, list):
        return CycNum(m or 1, [parse_rational(c) for c in obj])
    return CycNum.rational(parse_rational(obj))


def cyc_to_json(x: CycNum) -> dict:
    return {"m": x.order, "c": [format_rational(c) for c in x.coeffs]}


def _entry_to_json(x: CycNum):
    return format_rational(x.to_fraction()) if x.is_rational() else cyc_to_json(x)


def matrix_from_json(obj) -> CycMatrix:
    if not isinstance(obj, dict) or "rows" not in obj:
        raise ParseError("matrix object needs a 'rows' list")
    m = obj.get("m", 1)
    if not isinstance(m, int) or m < 1:
        raise ParseError(f"bad field order {m!r}")
    rows = obj["rows"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError("'rows' must be a non-empty list of lists")
    order = conductor_normalize(m)
    try:
        data = [[descend(cyc_from_json(v, m), order) for v in r] for r in rows]
    except FieldError as exc:
        raise FieldError(f"matrix entry outside Q(zeta_{order}): {exc}") from None
    if len({len(r) for r in rows}) != 1:
        raise ParseError("ragged matrix rows")
    return CycMatrix(data, order)


def matrix_to_json(A: CycMatrix) -> dict:
    return {"m": A.order, "rows": [[_entry_to_json(x) for x in A.row(i)] for i in range(A.rows)]}


def partition_to_json(p: NPartition) -> dict:
    return {"n": p.n, "m": p.order, "components": [matrix_to_json(c) for c in p.components]}


def partition_from_json(obj) -> NPartition:
    try:
        n, m, comps = obj["n"], obj.get("m", 1), obj["components"]
    except (KeyError, TypeError):
        raise ParseError("partition object needs 'n' and 'components'") from None
    mats = [matrix_from_json(c) for c in comps]
    if not mats:
        raise ParseError("partition has no components")
    order = lcm(conductor_normalize(m), *(c.order for c in mats))
    mats = [c.lift(order) for c in mats]
    return NPartition(n, mats[0].rows, order, tuple(mats))


def witness_to_json(w) -> dict:
    if isinstance(w, EquivWitness):
        return {
            "kind": "algebraic",
            "n": w.n,
            "e": matrix_to_json(w.e),
            "f": matrix_to_json(w.f),
            "a": matrix_to_json(w.a),
            "b": matrix_to_json(w.b),
        }
    return {
        "kind": "similarity",
        "n": w.n,
        "e": matrix_to_json(w.e),
        "f": matrix_to_json(w.f),
        "z": matrix_to_json(w.z),
        "z_inv": matrix_to_json(w.z_inv),
    }


def witness_from_json(obj):
    try:
        kind, n = obj["kind"], obj["n"]
        e, f = matrix_from_json(obj["e"]), matrix_from_json(obj["f"])
        if kind == "algebraic":
            return EquivWitness(e, f, matrix_from_json(obj["a"]), matrix_from_json(obj["b"]), n)
        if kind == "similarity":
            return SimWitness(e, f, matrix_from_json(obj["z"]), matrix_from_json(obj["z_inv"]), n)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed witness: missing {exc}") from None
    raise ParseError(f"unknown witness kind {kind!r}")


def nhom_to_json(spec: NHomSpec) -> dict:
    return {
        "n": spec.n,
        "source_m": spec.source_order,
        "target_m": spec.target_order,
        "matrix": [[format_rational(v) for v in row] for row in spec.matrix],
    }


def nhom_from_json(obj) -> NHomSpec:
    try:
        rows = [[parse_rational(v) for v in row] for row in obj["matrix"]]
        return NHomSpec.from_rows(obj["n"], obj["source_m"], obj["target_m"], rows)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed n-homomorphism spec: {exc}") from None
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def kclass_to_json(x: KClass) -> dict:
    return {"n": x.n, "field": x.base_order, "orbits": x.orbits.to_list(), "values": list(x.values)}


def kclass_from_json(obj, n: int | None = None, field: int | None = None) -> KClass:
    """Missing "n"/"field" keys fall back to the given defaults."""
    try:
        return KClass.of(obj.get("n", n), obj.get("field", field), obj["values"])
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"malformed class: {exc}") from None
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_json(path: str | Path):
    try:
        text = sys.stdin.read() if str(path) == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def dump_json(obj, pretty: bool = False) -> str:
    return json.dumps(obj, indent=2 if pretty else None, ensure_ascii=False)
