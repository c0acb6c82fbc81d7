"""JSON formats for algebras, tensors, representations and matrices."""

import json
from pathlib import Path

import numpy as np

from .errors import ParseError
from .liealg import build_lie_algebra, build_representation
from .norms import TAGS
from .scalars import EXACT, format_scalar, parse_scalar
from .tensor import make_tensor


def read_json(path):
    """Load a JSON file, mapping every failure to :class:`ParseError`."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror or exc}", source=str(path)) from None
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno, source=str(path)) from None


def _need(doc, key, source, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing field {key!r}", source=source)
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"field {key!r} has the wrong type", source=source)
    return value


def _scalar(value, source, mode=EXACT):
    try:
        return parse_scalar(value, mode)
    except ParseError as exc:
        raise ParseError(str(exc), source=source) from None


def _index(value, source):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"index {value!r} is not an integer", source=source)
    return value


# --- algebras ---------------------------------------------------------------


def algebra_from_json(doc, source="<algebra>", norm=None, name=None):
    dim = _index(_need(doc, "dim", source), source)
    labels = doc.get("basis")
    rows = []
    for row in _need(doc, "brackets", source, list):
        if not isinstance(row, list) or len(row) != 4:
            raise ParseError(f"bracket row {row!r} must be [i, j, k, coeff]", source=source)
        i, j, k = (_index(x, source) for x in row[:3])
        rows.append((i, j, k, _scalar(row[3], source)))
    tag = norm or doc.get("norm", "euclidean")
    if tag not in TAGS:
        raise ParseError(f"unknown norm {tag!r}", source=source)
    return build_lie_algebra(dim, rows, norm=tag, labels=labels,
                             name=name or doc.get("name", Path(source).stem))


def algebra_to_json(L):
    brackets = []
    for (i, j), terms in sorted(L.structure_constants.items()):
        if i < j:
            brackets.extend([i, j, k, format_scalar(c)] for k, c in terms)
    tag = L.norm.kind if L.norm.kind in TAGS else "euclidean"
    return {"dim": L.dim, "basis": list(L.basis_labels), "brackets": brackets,
            "norm": tag, "name": L.name}


# --- tensors ----------------------------------------------------------------


def tensor_from_json(doc, L, source="<tensor>", mode=EXACT):
    order = _need(doc, "order", source)
    if order not in (2, 3):
        raise ParseError("order must be 2 or 3", source=source)
    entries = {}
    for row in _need(doc, "entries", source, list):
        if not isinstance(row, list) or len(row) != order + 1:
            raise ParseError(f"entry {row!r} must list {order} indices and a value", source=source)
        idx = tuple(_index(x, source) for x in row[:order])
        entries[idx] = entries.get(idx, 0) + _scalar(row[order], source, mode)
    return make_tensor((L,) * order, entries, mode=mode if entries else None)


def tensor_to_json(t, space=None):
    return {
        "order": t.order,
        "space": space or (t.space.name if t.spaces else ""),
        "entries": [list(idx) + [format_scalar(v)] for idx, v in t.items()],
    }


# --- representations and matrices -------------------------------------------


def matrix_from_json(doc, source="<matrix>"):
    """Column-major ``{rows, cols, entries}`` into an exact object matrix."""
    rows = _index(_need(doc, "rows", source), source)
    cols = _index(_need(doc, "cols", source), source)
    flat = _need(doc, "entries", source, list)
    if len(flat) != rows * cols:
        raise ParseError(f"expected {rows * cols} entries, got {len(flat)}", source=source)
    vals = [_scalar(v, source) for v in flat]
    out = np.empty((rows, cols), dtype=object)
    for c in range(cols):
        for r in range(rows):
            out[r, c] = vals[c * rows + r]
    return out


def matrix_to_json(m):
    m = np.asarray(m, dtype=object)
    rows, cols = m.shape
    return {"rows": rows, "cols": cols,
            "entries": [format_scalar(m[r, c]) for c in range(cols) for r in range(rows)]}


def rep_from_json(doc, L, source="<rep>"):
    """``{module_dim, action: [matrix per basis element]}``; each matrix row-major nested lists
    or a column-major ``{rows, cols, entries}`` object."""
    m = _index(_need(doc, "module_dim", source), source)
    action = []
    for mat in _need(doc, "action", source, list):
        if isinstance(mat, dict):
            arr = matrix_from_json(mat, source)
        else:
            arr = np.array([[_scalar(v, source) for v in row] for row in mat], dtype=object)
        if arr.shape != (m, m):
            raise ParseError(f"action matrix has shape {arr.shape}, expected {(m, m)}",
                             source=source)
        action.append(arr)
    return build_representation(L, action, module_norm=doc.get("norm", "euclidean"),
                                name=doc.get("name", Path(source).stem))


def vector_from_json(doc, source="<vector>"):
    values = doc.get("entries") if isinstance(doc, dict) else doc
    if not isinstance(values, list):
        raise ParseError("vector must be a list or {entries: [...]}", source=source)
    return np.array([_scalar(v, source) for v in values], dtype=object)
