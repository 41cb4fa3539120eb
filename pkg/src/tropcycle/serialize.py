"""JSON documents for every value type.

Rational coordinates are written as strings ``"p/q"`` (or ``"p"``) and plain JSON
numbers are refused for them. Structural integers (dimensions, ray indices,
weights, exponents) are emitted as integer strings but plain integers are
accepted on input. Output uses sorted keys so that a document round-trips to
identical text.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cycles import TropicalCycle
from .divisors import TropicalPolynomial
from .errors import ParseError
from .fans import Fan, StratifiedCycle
from .polyhedra import Polyhedron
from .weights import MinkowskiWeight


def rat_str(x) -> str:
    return str(Fraction(x))


def int_str(x) -> str:
    return str(int(x))


def parse_rat(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, str):
        raise ParseError(f"rational values must be strings, got {x!r}")
    try:
        return Fraction(x.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {x!r}") from exc


def parse_int(x) -> int:
    if isinstance(x, bool):
        raise ParseError(f"expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError as exc:
            raise ParseError(f"bad integer {x!r}") from exc
    raise ParseError(f"expected an integer, got {x!r}")


def _get(doc, key, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing field {key!r}")
    v = doc[key]
    if kind is not None and not isinstance(v, kind):
        raise ParseError(f"field {key!r} has the wrong type")
    return v


# ---------------------------------------------------------------- polyhedra


def polyhedron_to_json(P: Polyhedron) -> dict:
    return {
        "dim": int_str(P.ambient_dim),
        "ineqs": [[rat_str(x) for x in a] + [rat_str(b)] for a, b in P.ineqs],
        "eqs": [[rat_str(x) for x in a] + [rat_str(b)] for a, b in P.eqs],
    }


def polyhedron_from_json(doc) -> Polyhedron:
    n = parse_int(_get(doc, "dim"))
    rows = {}
    for key in ("ineqs", "eqs"):
        out = []
        for row in doc.get(key, []):
            if not isinstance(row, list) or len(row) != n + 1:
                raise ParseError(f"{key} rows need {n + 1} entries")
            vals = [parse_rat(x) for x in row]
            out.append((vals[:n], vals[n]))
        rows[key] = out
    return Polyhedron(n, rows["ineqs"], rows["eqs"])


# ---------------------------------------------------------------- cycles


def cycle_to_json(S: TropicalCycle) -> dict:
    cells = sorted(
        ({"poly": polyhedron_to_json(P), "weight": int_str(w)} for P, w in S.cells),
        key=lambda c: json.dumps(c, sort_keys=True),
    )
    return {"dim": int_str(S.dim), "ambient": int_str(S.ambient_dim), "cells": cells}


def cycle_from_json(doc) -> TropicalCycle:
    n = parse_int(_get(doc, "ambient"))
    k = parse_int(_get(doc, "dim"))
    cells = []
    for c in _get(doc, "cells", list):
        P = polyhedron_from_json(_get(c, "poly"))
        if P.ambient_dim != n:
            raise ParseError("cell polyhedron has the wrong ambient dimension")
        cells.append((P, parse_int(_get(c, "weight"))))
    return TropicalCycle(n, k, cells)


# ---------------------------------------------------------------- fans


def fan_to_json(D: Fan) -> dict:
    return {
        "ambient": int_str(D.ambient_dim),
        "rays": [[int_str(x) for x in r] for r in D.rays],
        "cones": [[int_str(i) for i in sorted(c)] for c in sorted(D.cones, key=lambda c: (len(c), sorted(c)))],
    }


def fan_from_json(doc, check: bool = True) -> Fan:
    n = parse_int(_get(doc, "ambient"))
    rays = [[parse_int(x) for x in r] for r in _get(doc, "rays", list)]
    cones = [[parse_int(i) for i in c] for c in _get(doc, "cones", list)]
    return Fan(n, rays, cones, check=check)


def stratified_to_json(A: StratifiedCycle) -> dict:
    return {
        "fan": fan_to_json(A.fan),
        "components": [{"tau": [int_str(i) for i in sorted(t)], "cycle": cycle_to_json(A.components[t])} for t in A.strata()],
    }


def stratified_from_json(doc, fan: Fan | None = None) -> StratifiedCycle:
    D = fan if fan is not None else fan_from_json(_get(doc, "fan"))
    comps = {}
    for c in _get(doc, "components", list):
        comps[frozenset(parse_int(i) for i in _get(c, "tau", list))] = cycle_from_json(_get(c, "cycle"))
    return StratifiedCycle(D, comps)


# ---------------------------------------------------------------- polynomials and weights


def polynomial_to_json(f: TropicalPolynomial) -> dict:
    return {"ambient": int_str(f.ambient_dim),
            "terms": [{"exp": [int_str(x) for x in e], "val": rat_str(v)} for e, v in f.terms]}


def polynomial_from_json(doc) -> TropicalPolynomial:
    n = parse_int(_get(doc, "ambient"))
    terms = [([parse_int(x) for x in _get(t, "exp", list)], parse_rat(_get(t, "val")))
             for t in _get(doc, "terms", list)]
    return TropicalPolynomial(n, terms)


def mw_to_json(c: MinkowskiWeight) -> dict:
    vals = [{"cone": [int_str(i) for i in sorted(s)], "w": int_str(w)}
            for s, w in sorted(c.values.items(), key=lambda x: sorted(x[0]))]
    return {"fan": fan_to_json(c.fan), "codim": int_str(c.codim), "values": vals}


def mw_from_json(doc, fan: Fan | None = None) -> MinkowskiWeight:
    D = fan if fan is not None else fan_from_json(_get(doc, "fan"))
    vals = {}
    for v in _get(doc, "values", list):
        vals[frozenset(parse_int(i) for i in _get(v, "cone", list))] = parse_int(_get(v, "w"))
    return MinkowskiWeight(D, parse_int(_get(doc, "codim")), vals)


# ---------------------------------------------------------------- text


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def to_json(obj) -> dict:
    if isinstance(obj, Polyhedron):
        return polyhedron_to_json(obj)
    if isinstance(obj, TropicalCycle):
        return cycle_to_json(obj)
    if isinstance(obj, Fan):
        return fan_to_json(obj)
    if isinstance(obj, StratifiedCycle):
        return stratified_to_json(obj)
    if isinstance(obj, TropicalPolynomial):
        return polynomial_to_json(obj)
    if isinstance(obj, MinkowskiWeight):
        return mw_to_json(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def detect_kind(doc) -> str:
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if "cells" in doc:
        return "cycle"
    if "terms" in doc:
        return "polynomial"
    if "codim" in doc and "values" in doc:
        return "weight"
    if "components" in doc:
        return "stratified"
    if "rays" in doc and "cones" in doc:
        return "fan"
    if "ineqs" in doc or "eqs" in doc:
        return "polyhedron"
    raise ParseError("unrecognised document")
