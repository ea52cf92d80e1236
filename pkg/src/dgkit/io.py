"""Versioned JSON formats: ``complex.v1``, ``chainmap.v1``, ``dgalgebra.v1``, ``dgmodule.v1``.

Scalars and polynomial entries are stored as strings in the plain ASCII
grammar of :mod:`dgkit.arith.poly`; matrices are lists of rows.
"""
from __future__ import annotations

import json

from .arith.fields import field_from_tag
from .arith.matrix import Matrix
from .arith.poly import PolyRing
from .complexes import ChainMap, Complex
from .dg import DGAlgebra, DGModule
from .errors import ParseError


class SchemaError(ParseError):
    """The document parses as JSON but does not follow the expected schema."""


def _need(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"missing field {key!r}")
    v = obj[key]
    if kind is not None and not isinstance(v, kind):
        raise SchemaError(f"field {key!r} has the wrong type")
    return v


def _check_schema(obj, name):
    if not isinstance(obj, dict):
        raise SchemaError("expected a JSON object")
    tag = obj.get("schema", name)
    if tag != name:
        raise SchemaError(f"expected schema {name}, got {tag!r}")


# rings -------------------------------------------------------------------------------


def ring_payload(ring) -> dict:
    if isinstance(ring, PolyRing):
        return {"ring": ring.field.name, "variables": list(ring.names)}
    return {"ring": ring.name}


def ring_from_payload(obj):
    tag = _need(obj, "ring", str)
    try:
        field = field_from_tag(tag, obj.get("prime"))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    names = obj.get("variables")
    if names:
        try:
            return PolyRing(field, names)
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
    return field


def _fmt(ring, x) -> str:
    return ring.format(x)


def _parse_entry(ring, s):
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise SchemaError(f"bad entry {s!r}")
    try:
        return ring.parse(s) if isinstance(s, str) else ring(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"cannot parse entry {s!r}: {exc}") from None


def matrix_payload(m: Matrix):
    return [[_fmt(m.ring, x) for x in row] for row in m.rows]


def matrix_from_payload(ring, rows, nrows=None, ncols=None) -> Matrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SchemaError("a matrix must be a list of rows")
    if nrows is None:
        nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise SchemaError(f"expected a {nrows} x {ncols} matrix")
    return Matrix(ring, [[_parse_entry(ring, x) for x in r] for r in rows], nrows, ncols)


# complexes -----------------------------------------------------------------------------


def complex_payload(c: Complex, schema: bool = True) -> dict:
    out = {"schema": "complex.v1"} if schema else {}
    out.update(ring_payload(c.ring))
    out["degrees"] = {"lo": c.lo, "hi": c.hi}
    out["ranks"] = c.ranks
    if c.has_labels:
        out["labels"] = [c.labels(i) for i in c.degrees()]
    out["differentials"] = {str(i): matrix_payload(c.d(i)) for i in range(c.lo + 1, c.hi + 1)
                            if c.rank(i) and c.rank(i - 1)}
    return out


def complex_from_payload(obj, ring=None) -> Complex:
    ring = ring_from_payload(obj) if ring is None else ring
    deg = _need(obj, "degrees", dict)
    lo = _need(deg, "lo", int)
    ranks = _need(obj, "ranks", list)
    if not all(isinstance(r, int) and r >= 0 for r in ranks):
        raise SchemaError("ranks must be non-negative integers")
    hi = deg.get("hi", lo + len(ranks) - 1)
    if hi != lo + len(ranks) - 1:
        raise SchemaError("degrees.hi does not match the number of ranks")
    rank = lambda i: ranks[i - lo] if lo <= i <= hi else 0  # noqa: E731
    diffs = {}
    for k, rows in dict(obj.get("differentials", {})).items():
        try:
            i = int(k)
        except ValueError:
            raise SchemaError(f"bad differential degree {k!r}") from None
        diffs[i] = matrix_from_payload(ring, rows, rank(i - 1), rank(i))
    labels = obj.get("labels")
    if labels is not None:
        if len(labels) != len(ranks):
            raise SchemaError("one label list per degree is required")
        labels = {lo + n: list(v) for n, v in enumerate(labels)}
    return Complex(ring, lo, ranks, diffs, labels)


def chainmap_payload(f: ChainMap) -> dict:
    return {"schema": "chainmap.v1", "degree": f.degree,
            "source": complex_payload(f.source), "target": complex_payload(f.target),
            "components": {str(p): matrix_payload(m) for p, m in f.components.items()
                           if m.nrows and m.ncols}}


def chainmap_from_payload(obj) -> ChainMap:
    _check_schema(obj, "chainmap.v1")
    src = complex_from_payload(_need(obj, "source", dict))
    tgt = complex_from_payload(_need(obj, "target", dict))
    if src.ring != tgt.ring:
        raise SchemaError("source and target over different rings")
    n = obj.get("degree", 0)
    comps = {}
    for k, rows in dict(obj.get("components", {})).items():
        p = int(k)
        comps[p] = matrix_from_payload(src.ring, rows, tgt.rank(p + n), src.rank(p))
    return ChainMap(src, tgt, comps, n)


# DG algebras and modules -----------------------------------------------------------------


def _table_payload(ring, table):
    return {f"{i},{j}": [[[_fmt(ring, x) for x in v] for v in row] for row in rows]
            for (i, j), rows in table.items() if rows and any(rows)}


def dgalgebra_payload(a: DGAlgebra) -> dict:
    out = {"schema": "dgalgebra.v1"}
    out.update(complex_payload(a.complex, schema=False))
    out["unit"] = a.unit
    table = {k: v for k, v in a.products_table().items() if a.rank(k[0] + k[1])}
    out["products"] = _table_payload(a.ring, table)
    return out


def _table_from_payload(ring, obj):
    out = {}
    for k, rows in dict(obj).items():
        try:
            i, j = (int(x) for x in k.split(","))
        except ValueError:
            raise SchemaError(f"bad product key {k!r}") from None
        out[(i, j)] = [[[_parse_entry(ring, x) for x in v] for v in row] for row in rows]
    return out


def dgalgebra_from_payload(obj, check: bool = True) -> DGAlgebra:
    _check_schema(obj, "dgalgebra.v1")
    c = complex_from_payload(obj)
    products = _table_from_payload(c.ring, obj.get("products", {}))
    try:
        return DGAlgebra(c, products=products, unit=obj.get("unit", 0), check=check)
    except ValueError as exc:
        if type(exc) is ValueError:
            raise SchemaError(str(exc)) from None
        raise


def dgmodule_payload(m: DGModule, include_algebra: bool = True) -> dict:
    out = {"schema": "dgmodule.v1"}
    out.update(complex_payload(m.complex, schema=False))
    if include_algebra:
        out["algebra"] = dgalgebra_payload(m.algebra)
    out["action"] = _table_payload(m.ring, m.action_table())
    return out


def dgmodule_from_payload(obj, algebra: DGAlgebra | None = None, check: bool = True) -> DGModule:
    """Read a module; ``algebra`` overrides (or supplies) the embedded algebra."""
    _check_schema(obj, "dgmodule.v1")
    if algebra is None:
        algebra = dgalgebra_from_payload(_need(obj, "algebra", dict))
    c = complex_from_payload(obj, ring=None if "ring" in obj else algebra.ring)
    if c.ring != algebra.ring:
        raise SchemaError("module and algebra over different rings")
    action = _table_from_payload(c.ring, obj.get("action", {}))
    try:
        return DGModule(algebra, c, action=action, check=check)
    except ValueError as exc:
        if type(exc) is ValueError:
            raise SchemaError(str(exc)) from None
        raise


# generic entry points ----------------------------------------------------------------------


_WRITERS = {Complex: complex_payload, ChainMap: chainmap_payload,
            DGAlgebra: dgalgebra_payload, DGModule: dgmodule_payload}


def to_payload(obj) -> dict:
    for cls, fn in _WRITERS.items():
        if isinstance(obj, cls):
            return fn(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"no JSON format for {type(obj).__name__}")


def from_payload(obj, check: bool = True):
    """Dispatch on the ``schema`` field."""
    tag = obj.get("schema") if isinstance(obj, dict) else None
    if tag == "complex.v1":
        return complex_from_payload(obj)
    if tag == "chainmap.v1":
        return chainmap_from_payload(obj)
    if tag == "dgalgebra.v1":
        return dgalgebra_from_payload(obj, check)
    if tag == "dgmodule.v1":
        return dgmodule_from_payload(obj, check=check)
    raise SchemaError(f"unknown schema {tag!r}")


def dumps(obj) -> str:
    payload = obj if isinstance(obj, (dict, list)) else to_payload(obj)
    return json.dumps(payload, indent=2) + "\n"


def loads(text: str, check: bool = True):
    return from_payload(json.loads(text), check)


def load(path, check: bool = True):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), check)


def save(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
