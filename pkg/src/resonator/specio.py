"""JSON matroid specs: parsing, canonical emission and construction.

A spec is a JSON object with a ``kind`` and a kind-specific payload::

    {"schema": 1, "kind": "graph", "vertices": 3, "edges": [[1, 2], [2, 3], [3, 1]]}
    {"schema": 1, "kind": "expr", "op": "dual", "args": ["g"],
     "defs": {"g": {"kind": "uniform", "rank": 2, "n": 4}}}

Expression nodes name their operands either inline or through ``defs``
(visible to the node and everything below it).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import AxiomViolation, SpecError
from .fields import FieldSpec
from .matroid import (Matroid, direct_sum, from_graph, from_matrix, parallel_connection,
                      uniform)

SCHEMA_VERSION = 1
KINDS = ("circuits", "graph", "uniform", "matrix", "expr")
OPS = {"dual": 1, "delete": 1, "contract": 1, "sum": 2, "pc": 2, "simplify": 1, "truncate": 1}


def _need(obj: dict, key: str, typ, where: str):
    if key not in obj:
        raise SpecError(f"{where}: missing '{key}'")
    val = obj[key]
    if typ is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise SpecError(f"{where}: '{key}' must be an integer")
    if typ is list and not isinstance(val, list):
        raise SpecError(f"{where}: '{key}' must be a list")
    return val


def _int_list(val, where: str) -> list[int]:
    if not isinstance(val, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in val):
        raise SpecError(f"{where}: expected a list of integers")
    return list(val)


def _scalar(x, fld: FieldSpec, where: str):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SpecError(f"{where}: scalars are integers or 'a/b' strings")
    try:
        return fld.to_json(fld.coerce(x))
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"{where}: bad scalar {x!r}") from exc


def canonical(spec: Any, *, top: bool = True) -> Any:
    """Validate the shape of a spec and return its canonical form."""
    if isinstance(spec, str):
        if top:
            raise SpecError("a bare name is not a spec")
        return spec
    if not isinstance(spec, dict):
        raise SpecError("a spec must be a JSON object")
    if top and spec.get("schema", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise SpecError(f"unsupported schema {spec.get('schema')!r}")
    kind = spec.get("kind")
    if kind not in KINDS:
        raise SpecError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    out: dict[str, Any] = {"kind": kind}
    if top:
        out["schema"] = SCHEMA_VERSION
    if "realizable" in spec:
        if not isinstance(spec["realizable"], bool) and spec["realizable"] is not None:
            raise SpecError("'realizable' must be a boolean")
        out["realizable"] = spec["realizable"]
    if kind == "circuits":
        n = _need(spec, "n", int, kind)
        cs = _need(spec, "circuits", list, kind)
        out["n"] = n
        out["circuits"] = sorted({tuple(sorted(_int_list(c, kind))) for c in cs})
        out["circuits"] = [list(c) for c in out["circuits"]]
    elif kind == "graph":
        verts = spec.get("vertices")
        if isinstance(verts, list):
            out["vertices"] = verts
        elif isinstance(verts, int) and not isinstance(verts, bool):
            out["vertices"] = verts
        else:
            raise SpecError("graph: 'vertices' must be a count or a list of labels")
        edges = _need(spec, "edges", list, kind)
        for e in edges:
            if not isinstance(e, list) or len(e) != 2:
                raise SpecError("graph: every edge is a pair")
        out["edges"] = [list(e) for e in edges]
        if spec.get("allow_self_loops"):
            out["allow_self_loops"] = True
    elif kind == "uniform":
        out["rank"] = _need(spec, "rank", int, kind)
        out["n"] = _need(spec, "n", int, kind)
    elif kind == "matrix":
        fld = _field(spec.get("field", "Q"))
        cols = _need(spec, "columns", list, kind)
        out["field"] = str(fld)
        if not all(isinstance(c, list) for c in cols):
            raise SpecError("matrix: every column is a list of scalars")
        out["columns"] = [[_scalar(x, fld, kind) for x in c] for c in cols]
    else:
        op = spec.get("op")
        if op not in OPS:
            raise SpecError(f"expr: unknown op {op!r}; expected one of {', '.join(OPS)}")
        args = _need(spec, "args", list, "expr")
        if len(args) != OPS[op]:
            raise SpecError(f"expr: '{op}' takes {OPS[op]} operand(s)")
        out["op"] = op
        out["args"] = [canonical(a, top=False) for a in args]
        if op in ("delete", "contract"):
            out["elements"] = sorted(set(_int_list(_need(spec, "elements", list, op), op)))
        elif op == "pc":
            out["base1"] = _need(spec, "base1", int, op)
            out["base2"] = spec.get("base2", out["base1"])
        elif op == "truncate":
            out["rank"] = _need(spec, "rank", int, op)
        if "defs" in spec:
            defs = spec["defs"]
            if not isinstance(defs, dict):
                raise SpecError("expr: 'defs' must map names to specs")
            out["defs"] = {k: canonical(v, top=False) for k, v in sorted(defs.items())}
    return out


def _field(text) -> FieldSpec:
    try:
        return FieldSpec.parse(str(text))
    except ValueError as exc:
        raise SpecError(str(exc)) from exc


def parse(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc}") from exc
    return canonical(obj)


def emit(spec: dict) -> str:
    return json.dumps(canonical(spec), sort_keys=True, separators=(",", ":")) + "\n"


def spec_field(spec: dict) -> FieldSpec | None:
    """The field a spec is tied to, if any (matrix specs over F_p)."""
    if spec["kind"] == "matrix":
        return _field(spec["field"])
    if spec["kind"] == "expr":
        found = {spec_field(a) for a in spec["args"] if isinstance(a, dict)}
        found |= {spec_field(d) for d in spec.get("defs", {}).values()}
        found.discard(None)
        if len(found) > 1:
            raise SpecError("operands are realized over different fields")
        return found.pop() if found else None
    return None


def build(spec: dict, defs: dict | None = None) -> Matroid:
    """The matroid a canonical spec describes."""
    scope = dict(defs or {})
    try:
        m = _build(spec, scope)
    except AxiomViolation as exc:
        raise SpecError(f"not a matroid: {exc}") from exc
    if "realizable" in spec:
        m.realizable = spec["realizable"]
    return m


def _build(spec, scope: dict) -> Matroid:
    if isinstance(spec, str):
        if spec not in scope:
            raise SpecError(f"unknown name {spec!r}")
        return scope[spec]
    kind = spec["kind"]
    try:
        if kind == "circuits":
            return Matroid(spec["n"], spec["circuits"], realizable=spec.get("realizable"))
        if kind == "graph":
            return from_graph(spec["vertices"], [tuple(e) for e in spec["edges"]],
                              allow_self_loops=spec.get("allow_self_loops", False))
        if kind == "uniform":
            return uniform(spec["rank"], spec["n"])
        if kind == "matrix":
            fld = _field(spec["field"])
            return from_matrix([[Fraction(x) if fld.is_rational else x for x in c] for c in spec["columns"]], fld)
    except AxiomViolation:
        raise
    except (ValueError, TypeError) as exc:
        raise SpecError(f"{kind}: {exc}") from exc
    inner = dict(scope)
    for name, sub in spec.get("defs", {}).items():
        inner[name] = build(sub, inner)
    args = [build(a, inner) if isinstance(a, dict) else _build(a, inner) for a in spec["args"]]
    op = spec["op"]
    try:
        if op == "dual":
            return args[0].dual()
        if op == "delete":
            return args[0].delete(spec["elements"])
        if op == "contract":
            return args[0].contract(spec["elements"])
        if op == "sum":
            return direct_sum(args[0], args[1])
        if op == "pc":
            return parallel_connection(args[0], args[1], spec["base1"], spec["base2"])
        if op == "simplify":
            return args[0].simplify()[0]
        return args[0].truncate(spec["rank"])
    except AxiomViolation:
        raise
    except (ValueError, IndexError) as exc:
        raise SpecError(f"{op}: {exc}") from exc


def load(text: str) -> tuple[dict, Matroid]:
    spec = parse(text)
    return spec, build(spec)


def from_matroid(m: Matroid) -> dict:
    """A circuits spec for an already built matroid."""
    out = {"schema": SCHEMA_VERSION, "kind": "circuits", "n": m.n, "circuits": [list(c) for c in m.circuits]}
    if m.realizable is not None:
        out["realizable"] = m.realizable
    return canonical(out)

