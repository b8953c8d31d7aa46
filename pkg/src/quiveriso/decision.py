"""Trace signatures, their comparison and the isometry decision."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .cycles import DEFAULT_BUDGET, OrientedCycle, cycle_table, table_traces
from .errors import RepresentationError, SignatureMismatch
from .quiver import DoubledQuiver, Quiver, double, min_r
from .representation import FieldMode, MatrixRepresentation, StarMode, extend_to_double

DEFAULT_RTOL = 1e-9
DEFAULT_ATOL = 1e-12
DEFAULT_MAX_LEN = 8


class BoundFunction(enum.Enum):
    """Sufficient word lengths for the single-matrix trace criterion."""

    PEARCY = "pearcy"
    LAFFEY = "laffey"
    PAPPACENA = "pappacena"
    NSQUARED = "nsq"


def _pappacena(n: int) -> int:
    # ceil(-2 + n/2 + n*sqrt(2n^2/(n-1) + 1/4)), decided in integers:
    # k >= value  <=>  2k - n + 4 >= 0  and  (2k - n + 4)^2 (n-1) >= n^2 (8n^2 + n - 1)
    def ok(k: int) -> bool:
        lhs = 2 * k - n + 4
        return lhs >= 0 and lhs * lhs * (n - 1) >= n * n * (8 * n * n + n - 1)

    k = math.ceil(-2 + n / 2 + n * math.sqrt(2 * n * n / (n - 1) + 0.25))
    while not ok(k):
        k += 1
    while ok(k - 1):
        k -= 1
    return k


def phi(b: BoundFunction, n: int) -> int:
    """Word length sufficient for unitary similarity of ``n x n`` matrices.

    ``n <= 1`` returns 1 for every variant.
    """
    b = BoundFunction(b)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n <= 1:
        return 1
    if b is BoundFunction.PEARCY:
        return 2 * n * n
    if b is BoundFunction.NSQUARED:
        return n * n
    if b is BoundFunction.LAFFEY:
        return -(-(2 * n * n + 4) // 3)
    return _pappacena(n)


def cycle_length_bound(q: Quiver, dims: Sequence[int], b: BoundFunction) -> int:
    """``phi((r + 2) * sum(dims))``: cycles up to this length decide isometry."""
    if len(dims) != q.vertex_count:
        raise RepresentationError(f"dims {tuple(dims)} do not match {q.vertex_count} vertices")
    return phi(b, (min_r(q) + 2) * sum(dims))


def _spectral_norm(m: np.ndarray) -> float:
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


@dataclass(frozen=True, eq=False)
class TraceSignature:
    """Traces of all canonical cycles of the doubled quiver up to ``max_len``.

    ``scales[k]`` is the product of the spectral norms of the factors of
    ``cycles[k]``; it sizes the comparison tolerance.
    """

    star_mode: StarMode
    max_len: int
    quiver: DoubledQuiver
    dims: tuple[int, ...]
    cycles: tuple[OrientedCycle, ...]
    traces: np.ndarray
    scales: np.ndarray

    @cached_property
    def _index(self) -> dict[OrientedCycle, int]:
        return {c: i for i, c in enumerate(self.cycles)}

    def __len__(self) -> int:
        return len(self.cycles)

    def __getitem__(self, cycle) -> complex:
        if isinstance(cycle, str):
            cycle = OrientedCycle.parse(cycle)
        elif not isinstance(cycle, OrientedCycle):
            cycle = OrientedCycle(tuple(cycle))
        return complex(self.traces[self._index[cycle]])

    @property
    def values(self) -> dict[OrientedCycle, complex]:
        return {c: complex(v) for c, v in zip(self.cycles, self.traces)}

    def scale(self, cycle) -> float:
        if isinstance(cycle, str):
            cycle = OrientedCycle.parse(cycle)
        return float(self.scales[self._index[cycle]])

    def to_dict(self) -> dict:
        return {
            "star": self.star_mode.value,
            "max_len": self.max_len,
            "quiver": self.quiver.base.to_dict(),
            "dims": list(self.dims),
            "cycles": [
                {"cycle": str(c), "trace": [float(v.real), float(v.imag)], "scale": float(s)}
                for c, v, s in zip(self.cycles, self.traces, self.scales)
            ],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "TraceSignature":
        cycles = tuple(OrientedCycle.parse(e["cycle"]) for e in doc["cycles"])
        return cls(
            StarMode(doc["star"]),
            int(doc["max_len"]),
            double(Quiver.from_dict(doc["quiver"])),
            tuple(doc["dims"]),
            cycles,
            np.array([complex(*e["trace"]) for e in doc["cycles"]], dtype=np.complex128),
            np.array([float(e["scale"]) for e in doc["cycles"]]),
        )


@dataclass(frozen=True)
class Witness:
    cycle: OrientedCycle
    trace_a: complex
    trace_b: complex


@dataclass(frozen=True)
class IsometryVerdict:
    """Either agreement on every cycle up to ``max_len`` or a distinguishing cycle.

    ``certified`` is true only when ``max_len`` reached a proven sufficient
    length, making agreement a proof of isometry.
    """

    outcome: str  # "agree" | "distinguished"
    max_len: int
    certified: bool = False
    witness: Witness | None = None

    @property
    def agrees(self) -> bool:
        return self.outcome == "agree"

    def to_dict(self) -> dict:
        doc = {"outcome": self.outcome, "max_len": self.max_len, "certified": self.certified}
        if self.witness is not None:
            w = self.witness
            doc["witness"] = {
                "cycle": str(w.cycle),
                "trace_a": [w.trace_a.real, w.trace_a.imag],
                "trace_b": [w.trace_b.real, w.trace_b.imag],
            }
        return doc


def compute_signature(
    rep: MatrixRepresentation,
    mode: StarMode,
    max_len: int = DEFAULT_MAX_LEN,
    budget: float = DEFAULT_BUDGET,
) -> TraceSignature:
    mode = StarMode(mode)
    ext = extend_to_double(rep, mode)
    table = cycle_table(ext.quiver, max_len, budget)
    traces = table_traces(ext, table)
    norms = np.array([_spectral_norm(ext.matrices[name]) for name in table.names])
    scales = np.zeros(len(table.cycles))
    for positions, idx in table.groups:
        scales[positions] = np.prod(norms[idx], axis=1)
    return TraceSignature(mode, max_len, ext.quiver, rep.dims, table.cycles, traces, scales)


def compare_signatures(
    sa: TraceSignature,
    sb: TraceSignature,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
) -> IsometryVerdict:
    """First cycle (in enumeration order) whose traces differ beyond
    ``atol + rtol * max(1, scale_a, scale_b)``, if any."""
    if sa.star_mode is not sb.star_mode:
        raise SignatureMismatch("signatures use different star modes")
    if sa.max_len != sb.max_len:
        raise SignatureMismatch(f"signature lengths differ: {sa.max_len} vs {sb.max_len}")
    if not sa.quiver.same_shape(sb.quiver) or sa.cycles != sb.cycles:
        raise SignatureMismatch("signatures come from different quivers")
    diff = np.abs(sa.traces - sb.traces)
    thresh = atol + rtol * np.maximum(1.0, np.maximum(sa.scales, sb.scales))
    bad = np.flatnonzero(~(diff <= thresh))
    if bad.size == 0:
        return IsometryVerdict("agree", sa.max_len)
    k = int(bad[0])
    return IsometryVerdict(
        "distinguished",
        sa.max_len,
        witness=Witness(sa.cycles[k], complex(sa.traces[k]), complex(sb.traces[k])),
    )


def certifying_length(
    q: Quiver, dims: Sequence[int], mode: StarMode, real: bool, certify_transpose: bool
) -> int | None:
    """Smallest cycle length whose agreement certifies isometry, or ``None``.

    For the adjoint (and for real data in either mode) every known bound
    is valid, so the smallest is taken.  For complex data under the
    transpose only the quadratic bound ``2n^2`` is used, and only on request.
    """
    if mode is StarMode.ADJOINT or real:
        return min(cycle_length_bound(q, dims, b) for b in BoundFunction)
    if certify_transpose:
        return cycle_length_bound(q, dims, BoundFunction.PEARCY)
    return None


def decide_isometry(
    a: MatrixRepresentation,
    b: MatrixRepresentation,
    mode: StarMode = StarMode.ADJOINT,
    length: int | BoundFunction = DEFAULT_MAX_LEN,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    budget: float = DEFAULT_BUDGET,
    certify_transpose: bool = False,
) -> IsometryVerdict:
    """Compare cycle traces of the doubled representations of ``a`` and ``b``.

    ``length`` is either an explicit maximum cycle length or a
    :class:`BoundFunction`, in which case the full sufficient length for
    the dimension vector is used (subject to ``budget``).
    """
    mode = StarMode(mode)
    if not a.quiver.same_shape(b.quiver):
        raise RepresentationError("representations are over different quivers")
    if a.dims != b.dims:
        v = next(i for i, (x, y) in enumerate(zip(a.dims, b.dims), start=1) if x != y)
        raise RepresentationError(
            f"dimension vectors differ at vertex {v}: {a.dims[v - 1]} vs {b.dims[v - 1]}"
        )
    if isinstance(length, (BoundFunction, str)):
        max_len = cycle_length_bound(a.quiver, a.dims, BoundFunction(length))
    else:
        max_len = int(length)
    real = a.field is FieldMode.REAL and b.field is FieldMode.REAL
    sa = compute_signature(a, mode, max_len, budget)
    sb = compute_signature(b, mode, max_len, budget)
    verdict = compare_signatures(sa, sb, rtol, atol)
    need = certifying_length(a.quiver, a.dims, mode, real, certify_transpose)
    if verdict.agrees and need is not None and max_len >= need:
        verdict = IsometryVerdict("agree", max_len, certified=True)
    return verdict
