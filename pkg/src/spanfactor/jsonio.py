"""JSON interchange for fields, matrices, and subspaces.

Matrix entries travel as strings in the field's text form (decimal for
GF(p), "a" or "a/b" with positive denominator for the rationals), so files
are diff-able and exact.
"""

from __future__ import annotations

import json
from typing import Union

from .errors import SpanfactorError
from .fields import Field, GF, PRIME_FIELD, QQ, RATIONALS
from .matrix import Matrix
from .subspace import AffineSubspace, Hyperplane, LinearSubspace, span_from


class InputFormatError(SpanfactorError):
    """Malformed JSON input (CLI exit code 2)."""


def field_to_json(field: Field) -> dict:
    if field.kind == PRIME_FIELD:
        return {"kind": PRIME_FIELD, "p": field.p}
    return {"kind": RATIONALS}


def field_from_json(obj: dict) -> Field:
    try:
        kind = obj["kind"]
        if kind == PRIME_FIELD:
            return GF(int(obj["p"]))
        if kind == RATIONALS:
            return QQ
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"bad field object: {exc}") from exc
    raise InputFormatError(f"unknown field kind {obj.get('kind')!r}")


def matrix_to_json(m: Matrix) -> dict:
    fmt = m.field.format
    return {
        "field": field_to_json(m.field),
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[fmt(m.raw(i, j)) for j in range(m.cols)] for i in range(m.rows)],
    }


def matrix_from_json(obj: dict) -> Matrix:
    try:
        field = field_from_json(obj["field"])
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = obj["entries"]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise InputFormatError("entry grid does not match rows x cols")
        return Matrix(field, [[field.parse(str(x)) for x in row] for row in entries])
    except InputFormatError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputFormatError(f"bad matrix object: {exc}") from exc


Space = Union[LinearSubspace, AffineSubspace, Hyperplane]


def subspace_to_json(space: Space) -> dict:
    if isinstance(space, Hyperplane):
        return {"kind": "hyperplane", "n": space.n,
                "field": field_to_json(space.field),
                "normal": matrix_to_json(space.normal)}
    if isinstance(space, AffineSubspace):
        return {"kind": "affine", "n": space.shape[0],
                "field": field_to_json(space.field),
                "base": matrix_to_json(space.base),
                "basis": [matrix_to_json(b) for b in space.translation.basis()]}
    return {"kind": "linear", "n": space.shape[0],
            "field": field_to_json(space.field),
            "basis": [matrix_to_json(b) for b in space.basis()]}


def subspace_from_json(obj: dict) -> Space:
    try:
        kind = obj["kind"]
        field = field_from_json(obj["field"])
        n = int(obj["n"])
        if kind == "hyperplane":
            return Hyperplane(matrix_from_json(obj["normal"]))
        if kind == "linear":
            mats = [matrix_from_json(b) for b in obj["basis"]]
            return span_from(mats, field, (n, n))
        if kind == "affine":
            base = matrix_from_json(obj["base"])
            mats = [matrix_from_json(b) for b in obj.get("basis", [])]
            return AffineSubspace(base, span_from(mats, field, (n, n)))
    except InputFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"bad subspace object: {exc}") from exc
    raise InputFormatError(f"unknown subspace kind {obj.get('kind')!r}")


def load_json_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
