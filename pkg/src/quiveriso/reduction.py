"""Reduction of a quiver representation to a single square matrix.

``M_Q(A)`` is block upper triangular with ``r + 2`` block rows.  Block row
``k`` holds the scalar diagonal block ``D_k``, an identity block right of
it, and then parameter blocks ``X_xi`` whose indices continue row by row
(``r`` of them in row 1, ``r - 1`` in row 2, ..., one in row ``r``).  Cell
``(i, j)`` of ``X_xi`` holds the ``xi``-th arrow ``j -> i`` (in quiver
order), or zero when there are fewer than ``xi`` such arrows.  Two
representations are isometric exactly when their reduction matrices are
#-unitarily similar.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .decision import DEFAULT_MAX_LEN, TraceSignature, compute_signature
from .errors import RepresentationError
from .quiver import Quiver, min_r
from .representation import FieldMode, IsometryFamily, MatrixRepresentation, StarMode


@dataclass(frozen=True)
class ParamCell:
    i: int  # target vertex
    j: int  # source vertex
    xi: int
    arrow: str


@dataclass(frozen=True)
class ReductionTemplate:
    """Block layout of ``M_Q(x)`` for a quiver.

    ``blocks[(k, c)]`` (1-based block row/column, upper triangle only) is
    ``("diag", (values...))``, ``("identity",)``, ``("param", xi, cells)``
    or absent (zero block).
    """

    quiver: Quiver
    r: int
    blocks: dict

    @property
    def t(self) -> int:
        return self.quiver.vertex_count

    @property
    def block_count(self) -> int:
        return self.r + 2

    @property
    def size(self) -> int:
        return self.block_count * self.t

    def diagonal(self) -> list[int]:
        return [v for k in range(1, self.block_count + 1) for v in self.blocks[(k, k)][1]]

    def param_positions(self) -> dict[int, tuple[int, int]]:
        """``xi -> (block row, block column)``."""
        return {b[1]: key for key, b in self.blocks.items() if b[0] == "param"}

    def scalar_pattern(self) -> list[list[object]]:
        """Entry-level ``(r+2)t x (r+2)t`` grid: ints, or arrow names for parameters."""
        t, n = self.t, self.size
        grid: list[list[object]] = [[0] * n for _ in range(n)]
        for (k, c), b in self.blocks.items():
            r0, c0 = (k - 1) * t, (c - 1) * t
            if b[0] == "diag":
                for v, val in enumerate(b[1]):
                    grid[r0 + v][c0 + v] = val
            elif b[0] == "identity":
                for v in range(t):
                    grid[r0 + v][c0 + v] = 1
            else:
                for cell in b[2]:
                    grid[r0 + cell.i - 1][c0 + cell.j - 1] = cell.arrow
        return grid

    def sidecar(self) -> dict:
        """JSON-ready description of the block grid."""
        out = []
        for (k, c) in sorted(self.blocks):
            b = self.blocks[(k, c)]
            entry = {"row": k, "col": c, "kind": b[0]}
            if b[0] == "diag":
                entry["values"] = list(b[1])
            elif b[0] == "param":
                entry["xi"] = b[1]
                entry["cells"] = [{"i": x.i, "j": x.j, "arrow": x.arrow} for x in b[2]]
            out.append(entry)
        return {"t": self.t, "r": self.r, "size": self.size, "blocks": out}

    def sidecar_json(self) -> str:
        return json.dumps(self.sidecar(), sort_keys=True, separators=(",", ":"))


def _xi_index(r: int, k: int, c: int) -> int:
    # X blocks of row k sit in columns k+2..r+2; rows before k hold r, r-1, ... of them
    before = sum(r + 1 - row for row in range(1, k))
    return before + (c - k - 1)


def build_template(q: Quiver) -> ReductionTemplate:
    r, t = min_r(q), q.vertex_count
    nblocks = r + 2
    # xi-th arrow j -> i, numbered in quiver order
    cells: dict[int, list[ParamCell]] = {}
    seen: dict[tuple[int, int], int] = {}
    for a in q.arrows:
        xi = seen.get((a.tgt, a.src), 0) + 1
        seen[(a.tgt, a.src)] = xi
        cells.setdefault(xi, []).append(ParamCell(a.tgt, a.src, xi, a.name))
    blocks: dict = {}
    for k in range(1, nblocks + 1):
        blocks[(k, k)] = ("diag", tuple(range((k - 1) * t + 1, k * t + 1)))
        if k < nblocks:
            blocks[(k, k + 1)] = ("identity",)
        if k <= r:
            for c in range(k + 2, nblocks + 1):
                xi = _xi_index(r, k, c)
                row_cells = sorted(cells.get(xi, []), key=lambda x: (x.i, x.j))
                blocks[(k, c)] = ("param", xi, tuple(row_cells))
    return ReductionTemplate(q, r, blocks)


@dataclass(frozen=True, eq=False)
class ReductionMatrix:
    """``M_Q(A)`` together with the template and strip offsets used to build it."""

    matrix: np.ndarray
    template: ReductionTemplate
    dims: tuple[int, ...]

    @property
    def block_size(self) -> int:
        return sum(self.dims)

    def strip(self, k: int, v: int) -> slice:
        """Rows (or columns) of vertex ``v`` inside block row (or column) ``k``."""
        start = (k - 1) * self.block_size + sum(self.dims[: v - 1])
        return slice(start, start + self.dims[v - 1])

    def parameter_block(self, arrow: str) -> np.ndarray:
        for (k, c), b in self.template.blocks.items():
            if b[0] == "param":
                for cell in b[2]:
                    if cell.arrow == arrow:
                        return self.matrix[self.strip(k, cell.i), self.strip(c, cell.j)]
        raise KeyError(arrow)

    def sidecar(self) -> dict:
        doc = self.template.sidecar()
        d = self.block_size
        doc["dims"] = list(self.dims)
        doc["matrix_size"] = int(self.matrix.shape[0])
        doc["block_extents"] = [[(k - 1) * d, k * d] for k in range(1, self.template.block_count + 1)]
        return doc


def build_mq(rep: MatrixRepresentation, template: ReductionTemplate | None = None) -> ReductionMatrix:
    """Substitute ``rep`` into the template: scalars ``s`` become ``s*I_{d_i}``."""
    q = rep.quiver
    if template is None:
        template = build_template(q)
    dims = rep.dims
    d = sum(dims)
    n = template.block_count * d
    m = np.zeros((n, n), dtype=np.complex128)
    out = ReductionMatrix(m, template, dims)
    t = q.vertex_count
    for (k, c), b in template.blocks.items():
        if b[0] == "diag":
            for v in range(1, t + 1):
                s = out.strip(k, v)
                m[s, s] = b[1][v - 1] * np.eye(dims[v - 1])
        elif b[0] == "identity":
            for v in range(1, t + 1):
                m[out.strip(k, v), out.strip(c, v)] = np.eye(dims[v - 1])
        else:
            for cell in b[2]:
                m[out.strip(k, cell.i), out.strip(c, cell.j)] = rep.matrices[cell.arrow]
    m.setflags(write=False)
    return out


def block_similarity_witness(fam: IsometryFamily, template: ReductionTemplate) -> np.ndarray:
    """``diag(U_1..U_t; ...; U_1..U_t)`` with ``r + 2`` repetitions."""
    if len(fam.unitaries) != template.t:
        raise RepresentationError(
            f"family has {len(fam.unitaries)} matrices, quiver has {template.t} vertices"
        )
    one = scipy.linalg.block_diag(*fam.unitaries) if fam.unitaries else np.zeros((0, 0))
    return scipy.linalg.block_diag(*([one] * template.block_count)).astype(np.complex128)


def as_loop_representation(m: np.ndarray) -> MatrixRepresentation:
    """The one-loop representation carrying ``m`` on the loop ``M``."""
    m = np.asarray(m)
    field = FieldMode.REAL if np.isrealobj(m) or not np.any(np.imag(m)) else FieldMode.COMPLEX
    return MatrixRepresentation(Quiver(1, (("M", 1, 1),)), (m.shape[0],), {"M": m}, field)


def mq_word_signature(
    mq: ReductionMatrix | np.ndarray, mode: StarMode, max_word_len: int = DEFAULT_MAX_LEN
) -> TraceSignature:
    """Traces of all words in ``M`` and ``M#`` up to rotation.

    A word is a cycle of the doubled one-loop quiver, with letters ``M``
    and ``M*``; the result compares with :func:`compare_signatures`.
    """
    m = mq.matrix if isinstance(mq, ReductionMatrix) else mq
    return compute_signature(as_loop_representation(m), mode, max_word_len)

