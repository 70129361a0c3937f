"""Algebra and operator files.

An algebra file is a JSON object::

    {
      "name": "aff1",
      "kind": "PlainLie",
      "dim": 2,
      "field": "Q",
      "basis": ["e1", "e2"],
      "products": {"mu": [[0, 1, 1, "1"], [1, 0, 1, "-1"]]},
      "alpha": [["1", "0"], ["0", "1"]],
      "beta": [["1", "0"], ["0", "1"]],
      "operators": [{"name": "R", "matrix": [["0", "1"], ["0", "0"]], "weight": "0"}]
    }

A quadruple ``[i, j, k, c]`` means the coefficient of ``e_k`` in ``e_i e_j`` is
``c``; omitted quadruples are zero. Matrices are row-major with column ``j``
the image of ``e_j``. Scalars are strings ``"<int>"`` or ``"<int>/<posint>"``
(bare JSON integers are accepted too, floats never). ``alpha``/``beta``
default to the identity and ``operators`` to empty.

An operator file holds a single ``{"field", "matrix"[, "name", "weight"]}``.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass

from .errors import AlgebraFileError, InstanceError
from .linalg import BilinearProduct, LinearOperator
from .model import AlgebraInstance, AlgebraKind
from .scalars import Field, Scalar, field_from_name, format_scalar

_RATIONAL = re.compile(r"-?[0-9]+(/[0-9]+)?")
_KEYS = ("name", "kind", "dim", "field", "basis", "products", "alpha", "beta", "operators",
         "unverified")


@dataclass(frozen=True)
class NamedOperator:
    name: str
    R: LinearOperator
    weight: Scalar | None = None


@dataclass(frozen=True)
class AlgebraDocument:
    instance: AlgebraInstance
    operators: tuple = ()

    def operator(self, name: str) -> NamedOperator:
        for op in self.operators:
            if op.name == name:
                return op
        known = ", ".join(op.name for op in self.operators) or "none"
        raise AlgebraFileError(f"no operator named {name!r} (file has: {known})", path="operators")


# -- parsing -----------------------------------------------------------------

def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(f"syntax error: {exc.msg}", line=exc.lineno, column=exc.colno) from None


def _scalar(fld: Field, raw, path: str) -> Scalar:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise AlgebraFileError(f"expected a rational string, got {json.dumps(raw)}", path=path)
    text = str(raw)
    if not _RATIONAL.fullmatch(text):
        raise AlgebraFileError(f"bad rational literal {text!r} (want \"n\" or \"n/d\")", path=path)
    try:
        return fld.parse(text)
    except ZeroDivisionError:
        raise AlgebraFileError(f"{text} has no value in {fld.name}", path=path) from None
    except ValueError as exc:
        raise AlgebraFileError(str(exc), path=path) from None


def _int(raw, path: str) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise AlgebraFileError(f"expected an integer, got {json.dumps(raw)}", path=path)
    return raw


def _field(raw, path: str) -> Field:
    if not isinstance(raw, str):
        raise AlgebraFileError("field must be \"Q\" or \"Fp:<prime>\"", path=path)
    try:
        return field_from_name(raw)
    except ValueError as exc:
        raise AlgebraFileError(str(exc), path=path) from None


def _matrix(fld: Field, raw, dim: int, path: str) -> LinearOperator:
    if not isinstance(raw, list) or len(raw) != dim:
        raise AlgebraFileError(f"expected a {dim}x{dim} array", path=path)
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != dim:
            raise AlgebraFileError(f"row must have {dim} entries", path=f"{path}[{i}]")
        rows.append(tuple(_scalar(fld, x, f"{path}[{i}][{j}]") for j, x in enumerate(row)))
    return LinearOperator(fld, tuple(rows))


def _product(fld: Field, raw, dim: int, path: str) -> BilinearProduct:
    if not isinstance(raw, list):
        raise AlgebraFileError("expected a list of [i, j, k, c] quadruples", path=path)
    table = {}
    for n, quad in enumerate(raw):
        qpath = f"{path}[{n}]"
        if not isinstance(quad, list) or len(quad) != 4:
            raise AlgebraFileError(f"expected [i, j, k, c], got {json.dumps(quad)}", path=qpath)
        idx = tuple(_int(v, f"{qpath}[{t}]") for t, v in enumerate(quad[:3]))
        if any(not 0 <= v < dim for v in idx):
            raise AlgebraFileError(f"index out of range 0..{dim - 1} in {json.dumps(quad)}", path=qpath)
        if idx in table:
            raise AlgebraFileError(f"duplicate quadruple for {list(idx)}", path=qpath)
        table[idx] = _scalar(fld, quad[3], f"{qpath}[3]")
    return BilinearProduct.from_table(dim, fld, [(i, j, k, c) for (i, j, k), c in table.items()])


def _operator_entry(fld: Field, raw, dim: int, path: str, need_name: bool) -> NamedOperator:
    if not isinstance(raw, dict):
        raise AlgebraFileError("operator must be an object", path=path)
    name = raw.get("name", "")
    if not isinstance(name, str) or (need_name and not name):
        raise AlgebraFileError("operator needs a non-empty string name", path=f"{path}.name")
    if "matrix" not in raw:
        raise AlgebraFileError("missing key 'matrix'", path=path)
    R = _matrix(fld, raw["matrix"], dim, f"{path}.matrix")
    weight = raw.get("weight")
    if weight is not None:
        weight = _scalar(fld, weight, f"{path}.weight")
    extra = set(raw) - {"name", "matrix", "weight", "field"}
    if extra:
        raise AlgebraFileError(f"unknown key(s) {sorted(extra)}", path=path)
    return NamedOperator(name, R, weight)


def parse_algebra_document(text: str) -> AlgebraDocument:
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise AlgebraFileError("top level must be an object", path="$")
    unknown = set(doc) - set(_KEYS)
    if unknown:
        raise AlgebraFileError(f"unknown key(s) {sorted(unknown)}", path="$")
    for key in ("name", "kind", "dim", "field", "basis", "products"):
        if key not in doc:
            raise AlgebraFileError(f"missing key {key!r}", path="$")
    name = doc["name"]
    if not isinstance(name, str):
        raise AlgebraFileError("name must be a string", path="name")
    try:
        kind = AlgebraKind(doc["kind"])
    except (ValueError, TypeError):
        names = ", ".join(k.value for k in AlgebraKind)
        raise AlgebraFileError(f"unknown kind {doc['kind']!r} (one of: {names})", path="kind") from None
    dim = _int(doc["dim"], "dim")
    if dim < 1:
        raise AlgebraFileError("dim must be positive", path="dim")
    fld = _field(doc["field"], "field")
    basis = doc["basis"]
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise AlgebraFileError("basis must be a list of strings", path="basis")
    if len(basis) != dim:
        raise AlgebraFileError(f"basis has {len(basis)} labels, dim is {dim}", path="basis")
    if len(set(basis)) != dim:
        raise AlgebraFileError("basis labels must be distinct", path="basis")
    raw_products = doc["products"]
    if not isinstance(raw_products, dict) or not raw_products:
        raise AlgebraFileError("products must be a non-empty object", path="products")
    products = {label: _product(fld, raw, dim, f"products.{label}")
                for label, raw in raw_products.items()}
    maps = {}
    for key in ("alpha", "beta"):
        maps[key] = (_matrix(fld, doc[key], dim, key) if key in doc
                     else LinearOperator.identity(dim, fld))
    unverified = doc.get("unverified", False)
    if not isinstance(unverified, bool):
        raise AlgebraFileError("unverified must be true or false", path="unverified")
    try:
        inst = AlgebraInstance(name, kind, tuple(basis), products, maps["alpha"], maps["beta"],
                               unverified)
    except InstanceError as exc:
        path = "products" if "product" in str(exc) else "kind"
        raise AlgebraFileError(str(exc), path=path) from None
    raw_ops = doc.get("operators", [])
    if not isinstance(raw_ops, list):
        raise AlgebraFileError("operators must be a list", path="operators")
    ops = tuple(_operator_entry(fld, raw, dim, f"operators[{n}]", True) for n, raw in enumerate(raw_ops))
    names = [op.name for op in ops]
    if len(set(names)) != len(names):
        raise AlgebraFileError("operator names must be distinct", path="operators")
    return AlgebraDocument(inst, ops)


def parse_algebra_file(text: str) -> AlgebraInstance:
    """Parse an algebra file; raises ``AlgebraFileError`` with line/column for
    syntax errors and a key path for semantic ones."""
    return parse_algebra_document(text).instance


def parse_operator_file(text: str, dim: int) -> NamedOperator:
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise AlgebraFileError("top level must be an object", path="$")
    fld = _field(doc.get("field", "Q"), "field")
    return _operator_entry(fld, doc, dim, "$", False)


# -- serialization -----------------------------------------------------------

def _dumps(x) -> str:
    return json.dumps(x, ensure_ascii=False)


def _matrix_payload(f: LinearOperator) -> list:
    return [[format_scalar(x) for x in row] for row in f.rows]


def algebra_payload(a: AlgebraInstance, operators=()) -> dict:
    """Canonical JSON-ready form: nonzero quadruples sorted, rationals reduced."""
    out = {
        "name": a.name,
        "kind": a.kind.value,
        "dim": a.dim,
        "field": a.field.name,
        "basis": list(a.basis),
        "products": {label: [[i, j, k, format_scalar(c)] for i, j, k, c in a.products[label].entries()]
                     for label in sorted(a.products)},
        "alpha": _matrix_payload(a.alpha),
        "beta": _matrix_payload(a.beta),
    }
    if operators:
        out["operators"] = [operator_payload(op) for op in operators]
    if a.unverified:
        out["unverified"] = True
    return out


def operator_payload(op: NamedOperator, field: Field | None = None) -> dict:
    out = {}
    if op.name:
        out["name"] = op.name
    if field is not None:
        out["field"] = field.name
    out["matrix"] = _matrix_payload(op.R)
    if op.weight is not None:
        out["weight"] = format_scalar(op.weight)
    return out


def render_payload(payload: dict, indent: str = "") -> str:
    """Pretty-print an algebra payload with one quadruple or matrix row per line."""
    lines = [indent + "{"]
    items = list(payload.items())
    for n, (key, val) in enumerate(items):
        comma = "," if n < len(items) - 1 else ""
        head = f"{indent}  {_dumps(key)}: "
        if key == "products":
            lines.append(head + "{")
            labels = list(val)
            for t, label in enumerate(labels):
                quads = val[label]
                tail = "," if t < len(labels) - 1 else ""
                if not quads:
                    lines.append(f"{indent}    {_dumps(label)}: []{tail}")
                    continue
                lines.append(f"{indent}    {_dumps(label)}: [")
                lines += [f"{indent}      {_dumps(q)}" + ("," if s < len(quads) - 1 else "")
                          for s, q in enumerate(quads)]
                lines.append(f"{indent}    ]{tail}")
            lines.append(f"{indent}  }}{comma}")
        elif key in ("alpha", "beta", "matrix"):
            lines.append(head + "[")
            lines += [f"{indent}    {_dumps(r)}" + ("," if s < len(val) - 1 else "")
                      for s, r in enumerate(val)]
            lines.append(f"{indent}  ]{comma}")
        elif key == "operators":
            lines.append(head + "[")
            lines += [f"{indent}    {_dumps(op)}" + ("," if s < len(val) - 1 else "")
                      for s, op in enumerate(val)]
            lines.append(f"{indent}  ]{comma}")
        else:
            lines.append(head + _dumps(val) + comma)
    lines.append(indent + "}")
    return "\n".join(lines)


def serialize_algebra(a: AlgebraInstance, operators=()) -> str:
    return render_payload(algebra_payload(a, operators)) + "\n"


def serialize_document(doc: AlgebraDocument) -> str:
    return serialize_algebra(doc.instance, doc.operators)


def content_digest(canonical_text: str) -> str:
    return "sha256:" + hashlib.sha256(canonical_text.encode("utf-8")).hexdigest()


def document_digest(doc: AlgebraDocument) -> str:
    """SHA-256 of the canonical serialization, so formatting does not matter."""
    return content_digest(serialize_document(doc))


__all__ = [
    "NamedOperator", "AlgebraDocument", "parse_algebra_document", "parse_algebra_file",
    "parse_operator_file", "algebra_payload", "operator_payload", "render_payload",
    "serialize_algebra", "serialize_document", "content_digest", "document_digest",
]
