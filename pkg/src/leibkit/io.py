"""JSON file formats: algebras, representations, certificates and reports.

Scalars are always strings (``"3"``, ``"-1/2"``, residues over GF(p)) so that
exact values survive a round trip.  Output uses a fixed key order.
"""

from __future__ import annotations

import hashlib
import json

from . import __version__
from .algebra import Algebra
from .errors import ParseError
from .exactfield import FieldSpec
from .linalg import Matrix, Subspace
from .modrep import Representation

TOOL = "leibkit"


def _scalar(field: FieldSpec, raw, where):
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise ParseError(f"{where}: scalar must be a string, got {raw!r}")
    return field.parse(str(raw))


def _int(obj, key, where):
    v = obj.get(key) if isinstance(obj, dict) else None
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{where}: '{key}' must be an integer")
    return v


def algebra_to_dict(A: Algebra) -> dict:
    fmt = A.field.format
    table = []
    for (i, j), vec in A.nonzero_products():
        table.append({"i": i, "j": j, "coeffs": {str(k): fmt(x) for k, x in enumerate(vec) if x}})
    return {"field": A.field.to_json(), "dim": A.dim, "names": list(A.names), "table": table}


def algebra_from_dict(obj) -> Algebra:
    if not isinstance(obj, dict):
        raise ParseError("algebra file must hold a JSON object")
    if "field" not in obj:
        raise ParseError("missing 'field'")
    field = FieldSpec.from_json(obj["field"])
    n = _int(obj, "dim", "algebra")
    if n < 0:
        raise ParseError("'dim' must be nonnegative")
    names = obj.get("names")
    if names is not None:
        if not isinstance(names, list) or len(names) != n or not all(isinstance(s, str) for s in names):
            raise ParseError("'names' must list one string per basis vector")
        if len(set(names)) != n:
            raise ParseError("basis names must be distinct")
    table = obj.get("table", [])
    if not isinstance(table, list):
        raise ParseError("'table' must be a list")
    products = {}
    for pos, entry in enumerate(table):
        where = f"table[{pos}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{where}: expected an object")
        i, j = _int(entry, "i", where), _int(entry, "j", where)
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(f"{where}: index out of range")
        if (i, j) in products:
            raise ParseError(f"{where}: duplicate entry for ({i}, {j})")
        coeffs = entry.get("coeffs", {})
        if not isinstance(coeffs, dict):
            raise ParseError(f"{where}: 'coeffs' must be an object")
        vec = [field.zero] * n
        for key, raw in coeffs.items():
            try:
                k = int(key)
            except ValueError:
                raise ParseError(f"{where}: bad coefficient index {key!r}") from None
            if not 0 <= k < n or str(k) != key.strip():
                raise ParseError(f"{where}: coefficient index {key!r} out of range")
            vec[k] = _scalar(field, raw, where)
        products[(i, j)] = tuple(vec)
    return Algebra(field, n, products, names, coerce=False)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest_algebra(A: Algebra) -> str:
    return "sha256:" + hashlib.sha256(canonical_json(algebra_to_dict(A)).encode()).hexdigest()


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_algebra(path) -> Algebra:
    return algebra_from_dict(read_json(path))


def _is_leaf(x):
    return x is None or isinstance(x, (str, int, float, bool))


def _render(obj, depth):
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_render(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if all(_is_leaf(x) for x in obj):
            return json.dumps(obj, ensure_ascii=False)
        return "[\n" + ",\n".join(inner + _render(x, depth + 1) for x in obj) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False)


def dumps(obj) -> str:
    """Indented JSON with scalar-only lists (matrix rows) kept on one line."""
    return _render(obj, 0) + "\n"


def matrix_to_json(M: Matrix):
    return M.to_strings()


def matrix_from_json(field, rows, shape, where="matrix") -> Matrix:
    if not isinstance(rows, list) or len(rows) != shape[0]:
        raise ParseError(f"{where}: expected {shape[0]} rows")
    out = []
    for r in rows:
        if not isinstance(r, list) or len(r) != shape[1]:
            raise ParseError(f"{where}: expected rows of length {shape[1]}")
        out.append(tuple(_scalar(field, x, where) for x in r))
    return Matrix(field, out, shape[1], coerce=False)


def subspace_to_json(U: Subspace):
    return U.to_strings()


def subspace_from_json(field, n, rows, where="subspace") -> Subspace:
    if not isinstance(rows, list):
        raise ParseError(f"{where}: expected a list of basis rows")
    vecs = [matrix_from_json(field, [r], (1, n), where).rows[0] for r in rows]
    return Subspace.span(field, n, vecs)


def representation_to_dict(R: Representation) -> dict:
    return {
        "module_dim": R.module_dim,
        "left": [matrix_to_json(X) for X in R.left],
        "right": [matrix_to_json(X) for X in R.right],
    }


def representation_from_dict(A: Algebra, obj) -> Representation:
    """Module file: ``{"module_dim": m, "left": [...], "right": [...]}``,
    one m×m scalar-string matrix per basis vector of A on each side."""
    if not isinstance(obj, dict):
        raise ParseError("representation file must hold a JSON object")
    m = _int(obj, "module_dim", "representation")
    if m < 0:
        raise ParseError("'module_dim' must be nonnegative")
    sides = []
    for side in ("left", "right"):
        mats = obj.get(side)
        if not isinstance(mats, list) or len(mats) != A.dim:
            raise ParseError(f"'{side}' must list {A.dim} matrices")
        sides.append([matrix_from_json(A.field, X, (m, m), f"{side}[{k}]") for k, X in enumerate(mats)])
    return Representation(A, m, sides[0], sides[1])


def load_representation(A: Algebra, path) -> Representation:
    return representation_from_dict(A, read_json(path))


def header(A: Algebra, kind: str) -> dict:
    return {
        "kind": kind,
        "tool": TOOL,
        "tool_version": __version__,
        "input_digest": digest_algebra(A),
        "field": A.field.to_json(),
        "dim": A.dim,
    }
