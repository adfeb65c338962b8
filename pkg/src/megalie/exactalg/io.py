"""JSON formats for algebras and matrices.

Algebra::

    {"dim": 3, "labels": ["e1", "e2", "e3"],
     "brackets": [[0, 1, [[2, "1"]]], ...]}

Only ``i < j`` bracket entries are allowed; omitted pairs are zero.

Matrix::

    {"dim": 3, "rows": [["1", "0", "0"], ...]}

``rows`` is the matrix row by row; column ``j`` is the image of basis
element ``j``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .lie import LieAlgebra
from .linalg import to_fraction
from .maps import LinearMap


class FormatError(ValueError):
    """Malformed JSON or a document that violates the schema."""


def _rational(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FormatError(f"{where}: expected an integer or a 'p/q' string, got {x!r}")
    try:
        return to_fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: bad rational {x!r}") from exc


def _fmt(q: Fraction) -> str:
    return str(q)


def _parse(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def algebra_from_dict(doc, validate: bool = True) -> LieAlgebra:
    if not isinstance(doc, dict):
        raise FormatError("algebra document must be a JSON object")
    for key in ("dim", "labels", "brackets"):
        if key not in doc:
            raise FormatError(f"missing key {key!r}")
    dim, labels, brackets = doc["dim"], doc["labels"], doc["brackets"]
    if not isinstance(dim, int) or dim < 0:
        raise FormatError("dim must be a non-negative integer")
    if not isinstance(labels, list) or len(labels) != dim or not all(isinstance(s, str) for s in labels):
        raise FormatError("labels must be a list of dim strings")
    upper: dict[tuple[int, int], dict[int, Fraction]] = {}
    for n, entry in enumerate(brackets):
        where = f"brackets[{n}]"
        if not (isinstance(entry, list) and len(entry) == 3):
            raise FormatError(f"{where}: expected [i, j, [[k, coeff], ...]]")
        i, j, terms = entry
        if not all(isinstance(x, int) and 0 <= x < dim for x in (i, j)):
            raise FormatError(f"{where}: indices must be integers in [0, {dim})")
        if i >= j:
            raise FormatError(f"{where}: only i < j entries are allowed")
        if (i, j) in upper:
            raise FormatError(f"{where}: duplicate entry for ({i}, {j})")
        row: dict[int, Fraction] = {}
        for m, term in enumerate(terms):
            if not (isinstance(term, list) and len(term) == 2 and isinstance(term[0], int) and 0 <= term[0] < dim):
                raise FormatError(f"{where}[{m}]: expected [k, coeff] with k in [0, {dim})")
            row[term[0]] = row.get(term[0], Fraction(0)) + _rational(term[1], f"{where}[{m}]")
        upper[(i, j)] = row
    return LieAlgebra.from_upper(labels, upper, validate=validate)


def algebra_to_dict(g: LieAlgebra) -> dict:
    brackets = []
    for (i, j), row in g.upper_brackets().items():
        brackets.append([i, j, [[k, _fmt(v)] for k, v in sorted(row.items())]])
    return {"dim": g.dim, "labels": list(g.labels), "brackets": brackets}


def load_algebra(path, validate: bool = True) -> LieAlgebra:
    path = Path(path)
    return algebra_from_dict(_parse(path.read_text(), str(path)), validate=validate)


def dump_algebra(g: LieAlgebra) -> str:
    """JSON text with one bracket entry per line."""
    doc = algebra_to_dict(g)
    entries = ",\n  ".join(json.dumps(b) for b in doc["brackets"])
    body = f"\n  {entries}\n " if entries else ""
    return (
        "{\n"
        f' "dim": {doc["dim"]},\n'
        f' "labels": {json.dumps(doc["labels"], ensure_ascii=False)},\n'
        f' "brackets": [{body}]\n'
        "}\n"
    )


def matrix_from_dict(doc) -> LinearMap:
    if not isinstance(doc, dict) or "dim" not in doc or "rows" not in doc:
        raise FormatError("matrix document must be an object with 'dim' and 'rows'")
    dim, rows = doc["dim"], doc["rows"]
    if not isinstance(dim, int) or not isinstance(rows, list) or len(rows) != dim:
        raise FormatError("rows must be a list of dim rows")
    out = []
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise FormatError(f"rows[{r}]: expected {dim} entries")
        out.append([_rational(x, f"rows[{r}]") for x in row])
    return LinearMap(out)


def matrix_to_dict(m: LinearMap) -> dict:
    return {"dim": m.dim, "rows": [[_fmt(x) for x in row] for row in m.matrix]}


def load_matrix(path) -> LinearMap:
    path = Path(path)
    return matrix_from_dict(_parse(path.read_text(), str(path)))


def dump_matrix(m: LinearMap) -> str:
    """JSON text with one matrix row per line."""
    doc = matrix_to_dict(m)
    rows = ",\n  ".join(json.dumps(r) for r in doc["rows"])
    return f'{{\n "dim": {doc["dim"]},\n "rows": [\n  {rows}\n ]\n}}\n'

