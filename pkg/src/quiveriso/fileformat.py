"""JSON interchange for representations, families and reduction matrices.

A problem file::

    {"quiver": {"vertices": t, "arrows": [{"name": ..., "src": u, "tgt": v}, ...]},
     "dims": [d1, ..., dt],
     "field": "complex" | "real",
     "matrices": {"name": [[[re, im], ...], ...], ...}}

Entries may also be plain numbers (read as ``[x, 0]``); output always uses
pairs.  Floats are written with ``repr``, the shortest decimal that reads
back to the same binary64 value.
"""

from __future__ import annotations

import json
import numbers

import numpy as np

from .errors import RepresentationError
from .quiver import Quiver
from .representation import FieldMode, IsometryFamily, MatrixRepresentation, StarMode

PROBLEM_KEYS = {"quiver", "dims", "field", "matrices"}


class FormatError(ValueError):
    """A document does not follow the interchange format."""


def _entry(x) -> complex:
    if isinstance(x, bool):
        raise FormatError(f"boolean is not a matrix entry: {x!r}")
    if isinstance(x, numbers.Real):
        return complex(float(x), 0.0)
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(
        isinstance(v, numbers.Real) and not isinstance(v, bool) for v in x
    ):
        return complex(float(x[0]), float(x[1]))
    raise FormatError(f"matrix entry must be a number or [re, im] pair, got {x!r}")


def matrix_from_json(rows, shape: tuple[int, int] | None = None) -> np.ndarray:
    if not isinstance(rows, list):
        raise FormatError("matrix must be a list of rows")
    if any(not isinstance(row, list) for row in rows):
        raise FormatError("matrix rows must be lists")
    data = [[_entry(x) for x in row] for row in rows]
    widths = {len(row) for row in data}
    if len(widths) > 1:
        raise FormatError("matrix rows have different lengths")
    ncols = widths.pop() if widths else (shape[1] if shape else 0)
    m = np.array(data, dtype=np.complex128).reshape(len(data), ncols)
    if shape is not None and len(data) == 0:
        m = np.zeros((0, shape[1]), dtype=np.complex128)
    return m


def matrix_to_json(m: np.ndarray) -> list:
    m = np.asarray(m)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m.astype(np.complex128)]


def representation_from_dict(doc: dict) -> MatrixRepresentation:
    if not isinstance(doc, dict):
        raise FormatError("problem document must be a JSON object")
    unknown = set(doc) - PROBLEM_KEYS
    if unknown:
        raise FormatError(f"unknown members: {sorted(unknown)}")
    missing = {"quiver", "dims", "matrices"} - set(doc)
    if missing:
        raise FormatError(f"missing members: {sorted(missing)}")
    q = Quiver.from_dict(doc["quiver"])
    dims = doc["dims"]
    if not isinstance(dims, list) or any(
        not isinstance(d, int) or isinstance(d, bool) or d < 0 for d in dims
    ):
        raise FormatError("'dims' must be a list of nonnegative integers")
    if len(dims) != q.vertex_count:
        raise RepresentationError(
            f"'dims' has {len(dims)} entries but the quiver has {q.vertex_count} vertices"
        )
    try:
        field = FieldMode(doc.get("field", "complex"))
    except ValueError:
        raise FormatError(f"'field' must be 'complex' or 'real', got {doc.get('field')!r}") from None
    raw = doc["matrices"]
    if not isinstance(raw, dict):
        raise FormatError("'matrices' must be an object keyed by arrow name")
    mats = {}
    for name, rows in raw.items():
        try:
            a = q.arrow(name)
            shape = (dims[a.tgt - 1], dims[a.src - 1])
        except KeyError:
            shape = None
        mats[name] = matrix_from_json(rows, shape)
    return MatrixRepresentation(q, dims, mats, field)


def representation_to_dict(rep: MatrixRepresentation) -> dict:
    return {
        "quiver": rep.quiver.to_dict(),
        "dims": list(rep.dims),
        "field": rep.field.value,
        "matrices": {a.name: matrix_to_json(rep.matrices[a.name]) for a in rep.quiver.arrows},
    }


def dumps(doc) -> str:
    return json.dumps(doc, ensure_ascii=False, allow_nan=False)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None


def load_representation(path) -> MatrixRepresentation:
    with open(path, encoding="utf-8") as fh:
        return representation_from_dict(loads(fh.read()))


def family_to_dict(fam: IsometryFamily) -> dict:
    return {
        "star": fam.star_mode.value,
        "unitaries": [matrix_to_json(u) for u in fam.unitaries],
    }


def family_from_dict(doc: dict) -> IsometryFamily:
    if set(doc) != {"star", "unitaries"}:
        raise FormatError("family document needs exactly 'star' and 'unitaries'")
    mats = []
    for rows in doc["unitaries"]:
        m = matrix_from_json(rows)
        if len(rows) == 0:
            m = np.zeros((0, 0), dtype=np.complex128)
        mats.append(m)
    return IsometryFamily(tuple(mats), StarMode(doc["star"]))

