"""Classical matrix-tuple criteria phrased as quiver problems.

Each check builds a quiver and two representations of it, then defers to
:func:`decide_isometry`:

* similarity of one matrix, or of a tuple (one vertex, ``k`` loops);
* equivalence ``B_i = U A_i V`` of a tuple (two vertices, ``k`` parallel arrows);
* ``B_i = U A_i V_i`` with a shared left factor (star quiver);
* similarity by a block-diagonal #-unitary (complete quiver ``Q_t``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .decision import (
    DEFAULT_ATOL,
    DEFAULT_MAX_LEN,
    DEFAULT_RTOL,
    BoundFunction,
    IsometryVerdict,
    decide_isometry,
)
from .errors import RepresentationError
from .quiver import Quiver, complete_quiver, loop_quiver, parallel_quiver, star_quiver
from .representation import FieldMode, MatrixRepresentation, StarMode


class ProblemKind(enum.Enum):
    SIMILARITY = "similarity"
    EQUIVALENCE = "equivalence"
    STAR_EQUIVALENCE = "star_equivalence"
    BLOCK_SIMILARITY = "block_similarity"


def _is_real(mats) -> bool:
    return all(not np.any(np.imag(m)) for m in mats)


@dataclass(frozen=True, eq=False)
class TupleProblem:
    """Two matrix tuples to be compared under one of the :class:`ProblemKind` actions.

    For ``BLOCK_SIMILARITY`` each tuple holds a single square matrix and
    ``partition`` lists the diagonal block sizes.
    """

    kind: ProblemKind
    a: tuple
    b: tuple
    star_mode: StarMode = StarMode.ADJOINT
    partition: tuple[int, ...] | None = None
    field_mode: FieldMode | None = field(default=None)

    def __post_init__(self):
        a = tuple(np.asarray(m, dtype=np.complex128) for m in self.a)
        b = tuple(np.asarray(m, dtype=np.complex128) for m in self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "kind", ProblemKind(self.kind))
        object.__setattr__(self, "star_mode", StarMode(self.star_mode))
        if self.field_mode is None:
            object.__setattr__(
                self, "field_mode", FieldMode.REAL if _is_real(a + b) else FieldMode.COMPLEX
            )
        validate_problem(self)


def validate_problem(p: TupleProblem) -> None:
    if any(m.ndim != 2 for m in p.a + p.b):
        raise RepresentationError("all inputs must be 2-d matrices")
    if len(p.a) != len(p.b):
        raise RepresentationError(f"tuples have different lengths: {len(p.a)} vs {len(p.b)}")
    if not p.a:
        raise RepresentationError("empty tuples")
    for x, y in zip(p.a, p.b):
        if x.shape != y.shape:
            raise RepresentationError(f"paired matrices differ in shape: {x.shape} vs {y.shape}")
    shapes = [m.shape for m in p.a]
    if p.kind is ProblemKind.SIMILARITY:
        n = shapes[0][0]
        if any(s != (n, n) for s in shapes):
            raise RepresentationError(f"similarity needs square matrices of one size, got {shapes}")
    elif p.kind is ProblemKind.EQUIVALENCE:
        if any(s != shapes[0] for s in shapes):
            raise RepresentationError(f"equivalence needs matrices of one common shape, got {shapes}")
    elif p.kind is ProblemKind.STAR_EQUIVALENCE:
        if any(s[0] != shapes[0][0] for s in shapes):
            raise RepresentationError(f"matrices must share their row count, got {shapes}")
    else:
        if len(p.a) != 1:
            raise RepresentationError("block similarity compares a single pair of matrices")
        part = p.partition
        n = shapes[0]
        if n[0] != n[1]:
            raise RepresentationError(f"block similarity needs a square matrix, got {n}")
        if not part or any(int(s) < 0 for s in part) or sum(part) != n[0]:
            raise RepresentationError(f"partition {part} does not split a {n[0]}x{n[0]} matrix")


def _blocks(m: np.ndarray, part: Sequence[int]) -> dict[tuple[int, int], np.ndarray]:
    edges = np.concatenate([[0], np.cumsum(part)]).astype(int)
    t = len(part)
    return {
        (i, j): m[edges[i - 1] : edges[i], edges[j - 1] : edges[j]]
        for i in range(1, t + 1)
        for j in range(1, t + 1)
    }


def as_quiver_problem(p: TupleProblem) -> tuple[Quiver, MatrixRepresentation, MatrixRepresentation]:
    """The quiver whose isometry problem is ``p``, with both representations."""
    k = len(p.a)
    if p.kind is ProblemKind.BLOCK_SIMILARITY:
        part = tuple(int(s) for s in p.partition)
        q = complete_quiver(len(part))
        dims = part
        mats_a = {f"a{i}_{j}": blk for (i, j), blk in _blocks(p.a[0], part).items()}
        mats_b = {f"a{i}_{j}": blk for (i, j), blk in _blocks(p.b[0], part).items()}
    else:
        if p.kind is ProblemKind.SIMILARITY:
            q, dims = loop_quiver(k), (p.a[0].shape[0],)
        elif p.kind is ProblemKind.EQUIVALENCE:
            q, dims = parallel_quiver(k), p.a[0].shape
        else:
            q = star_quiver(k)
            dims = (p.a[0].shape[0],) + tuple(x.shape[1] for x in p.a)
        mats_a = dict(zip(q.arrow_names, p.a))
        mats_b = dict(zip(q.arrow_names, p.b))
    rep_a = MatrixRepresentation(q, dims, mats_a, p.field_mode)
    rep_b = MatrixRepresentation(q, dims, mats_b, p.field_mode)
    return q, rep_a, rep_b


def check_problem(
    p: TupleProblem,
    length: int | BoundFunction = DEFAULT_MAX_LEN,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    **kw,
) -> IsometryVerdict:
    _, ra, rb = as_quiver_problem(p)
    return decide_isometry(ra, rb, p.star_mode, length, rtol, atol, **kw)


def specht_check(A, B, mode=StarMode.ADJOINT, length=DEFAULT_MAX_LEN,
                 rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL, **kw) -> IsometryVerdict:
    """Is ``B = U^{-1} A U`` for a #-unitary ``U``?"""
    return check_problem(TupleProblem(ProblemKind.SIMILARITY, (A,), (B,), mode), length, rtol, atol, **kw)


def wiegmann_check(As, Bs, mode=StarMode.ADJOINT, length=DEFAULT_MAX_LEN,
                   rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL, **kw) -> IsometryVerdict:
    """Simultaneous similarity ``B_i = U^{-1} A_i U`` of two tuples."""
    return check_problem(
        TupleProblem(ProblemKind.SIMILARITY, tuple(As), tuple(Bs), mode), length, rtol, atol, **kw
    )


def jing_check(As, Bs, mode=StarMode.ADJOINT, length=DEFAULT_MAX_LEN,
               rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL, **kw) -> IsometryVerdict:
    """Simultaneous equivalence ``B_i = U A_i V`` of two tuples of ``m x n`` matrices."""
    return check_problem(
        TupleProblem(ProblemKind.EQUIVALENCE, tuple(As), tuple(Bs), mode), length, rtol, atol, **kw
    )


def star_check(As, Bs, mode=StarMode.ADJOINT, length=DEFAULT_MAX_LEN,
               rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL, **kw) -> IsometryVerdict:
    """``B_i = U A_i V_i``: common left factor, independent right factors."""
    return check_problem(
        TupleProblem(ProblemKind.STAR_EQUIVALENCE, tuple(As), tuple(Bs), mode), length, rtol, atol, **kw
    )


def block_check(A, B, partition, mode=StarMode.ADJOINT, length=DEFAULT_MAX_LEN,
                rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL, **kw) -> IsometryVerdict:
    """``B = U^{-1} A U`` with ``U = U_1 + ... + U_t`` block diagonal, block sizes ``partition``."""
    return check_problem(
        TupleProblem(ProblemKind.BLOCK_SIMILARITY, (A,), (B,), mode, tuple(partition)),
        length, rtol, atol, **kw,
    )
