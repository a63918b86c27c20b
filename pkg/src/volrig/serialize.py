"""JSON encoding for hypergraphs, complexes, realisations, matrices and reports.

Output is deterministic: vertices and edges are canonically sorted and
scalars are written as ``"num/den"`` strings (integers without ``/1``).
Prime-field data carries its modulus and residues.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .complexes import Hypergraph, SimplicialComplex
from .errors import ArgumentError
from .exactlinalg import Matrix, Realisation
from .field import ModP, PrimeField, QQ, to_str


class SchemaError(ArgumentError):
    """Malformed input; ``where`` names the file and the offending field."""

    def __init__(self, where: str, field: str, msg: str):
        self.where, self.field = where, field
        super().__init__(f"{where}: field {field!r}: {msg}")


def jsonable(obj):
    """Recursively turn scalars, tuples and known objects into JSON types."""
    if isinstance(obj, Hypergraph):
        return hypergraph_to_json(obj)
    if isinstance(obj, SimplicialComplex):
        return complex_to_json(obj)
    if isinstance(obj, Realisation):
        return realisation_to_json(obj)
    if isinstance(obj, Matrix):
        return matrix_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, str, float)) or obj is None:
        return obj
    if isinstance(obj, (Fraction, ModP)):
        return to_str(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2) + "\n"


# -- encoders ------------------------------------------------------------------

def hypergraph_to_json(H: Hypergraph) -> dict:
    return {"vertices": list(H.vertices), "edges": [list(e) for e in H.edges]}


def complex_to_json(S: SimplicialComplex) -> dict:
    return {"vertices": list(S.vertices), "facets": [list(f) for f in S.facets]}


def realisation_to_json(p: Realisation) -> dict:
    out = {"dim": p.dim}
    if p.field.kind == "prime":
        out["prime"] = p.field.prime
    out["coords"] = {v: [to_str(x) for x in p[v]] for v in p.vertices}
    return out


def matrix_to_json(M: Matrix) -> dict:
    out = {"rows": M.nrows, "cols": M.ncols, "field": M.field.kind}
    if M.field.kind == "prime":
        out["prime"] = M.field.prime
    if M.row_labels is not None:
        out["row_labels"] = jsonable(M.row_labels)
    if M.col_labels is not None:
        out["col_labels"] = jsonable(M.col_labels)
    out["entries"] = [[to_str(x) for x in r] for r in M.rows]
    return out


# -- decoders ------------------------------------------------------------------

def _require(obj, key, kind, where):
    if not isinstance(obj, dict):
        raise SchemaError(where, "<root>", "expected a JSON object")
    if key not in obj:
        raise SchemaError(where, key, "missing")
    val = obj[key]
    if not isinstance(val, kind):
        raise SchemaError(where, key, f"expected {kind.__name__}")
    return val


def _vertex_list(seq, field, where):
    out = []
    for i, v in enumerate(seq):
        if isinstance(v, bool) or not isinstance(v, (str, int)):
            raise SchemaError(where, f"{field}[{i}]", "vertices must be strings or integers")
        out.append(str(v))
    return out


def _faces(obj, key, where):
    faces = _require(obj, key, list, where)
    out = []
    for i, f in enumerate(faces):
        if not isinstance(f, list) or not f:
            raise SchemaError(where, f"{key}[{i}]", "expected a non-empty list of vertices")
        out.append(_vertex_list(f, f"{key}[{i}]", where))
    return out


def _vertices(obj, where):
    vs = obj.get("vertices", [])
    if not isinstance(vs, list):
        raise SchemaError(where, "vertices", "expected list")
    return _vertex_list(vs, "vertices", where)


def hypergraph_from_json(obj, where: str = "<input>") -> Hypergraph:
    edges = _faces(obj, "edges", where)
    return Hypergraph(_vertices(obj, where), edges)


def complex_from_json(obj, where: str = "<input>") -> SimplicialComplex:
    facets = _faces(obj, "facets", where)
    return SimplicialComplex(facets, _vertices(obj, where))


def structure_from_json(obj, where: str = "<input>"):
    """A complex when ``facets`` is present, otherwise a hypergraph."""
    if isinstance(obj, dict) and "facets" in obj:
        return complex_from_json(obj, where)
    return hypergraph_from_json(obj, where)


def _parse_scalar(x, f, where, field):
    try:
        if isinstance(x, bool) or not isinstance(x, (str, int)):
            raise ValueError
        return f(Fraction(x) if f is QQ else x)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(where, field, f"cannot parse scalar {x!r}") from None


def realisation_from_json(obj, where: str = "<input>") -> Realisation:
    d = _require(obj, "dim", int, where)
    coords = _require(obj, "coords", dict, where)
    if "prime" in obj:
        p = obj["prime"]
        if not isinstance(p, int):
            raise SchemaError(where, "prime", "expected integer")
        f = PrimeField(p)
    else:
        f = QQ
    out = {}
    for v, c in coords.items():
        key = f"coords.{v}"
        if not isinstance(c, list) or len(c) != d:
            raise SchemaError(where, key, f"expected a list of {d} scalars")
        out[v] = [_parse_scalar(x, f, where, f"{key}[{i}]") for i, x in enumerate(c)]
    return Realisation(d, out, f)


def parts_from_json(obj, where: str = "<input>") -> list:
    """A list of hypergraphs, given bare or under a ``parts`` key."""
    if isinstance(obj, dict):
        obj = _require(obj, "parts", list, where)
    if not isinstance(obj, list):
        raise SchemaError(where, "parts", "expected a list of hypergraphs")
    return [hypergraph_from_json(P, f"{where}:parts[{i}]") for i, P in enumerate(obj)]


def loads(text: str, where: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(where, "<root>", f"invalid JSON at line {e.lineno}: {e.msg}") from None
