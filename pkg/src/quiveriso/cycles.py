"""Oriented cycles up to rotation, and traces of representations along them.

A cycle ``(g1, ..., gl)`` is composable when ``src(g_i) == tgt(g_{i+1})``
and ``src(g_l) == tgt(g_1)``, so that ``A_g1 @ A_g2 @ ... @ A_gl`` is a
square product.  Cycles are stored in their lexicographically least
rotation, arrows ordered by name.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, CycleError
from .quiver import SEPARATOR

DEFAULT_BUDGET = 10**8
# Peak bytes for one batch of padded products in ``cycle_traces``.
_BATCH_BYTES = 1 << 26


@dataclass(frozen=True, order=True)
class OrientedCycle:
    arrows: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.arrows)

    def __str__(self) -> str:
        return SEPARATOR.join(self.arrows)

    @classmethod
    def parse(cls, text: str) -> "OrientedCycle":
        """Inverse of ``str``; does not canonicalize."""
        return cls(tuple(text.split(SEPARATOR)))


def _check_walk(q, seq: Sequence[str]) -> None:
    if not seq:
        raise CycleError("empty cycle")
    try:
        arrows = [q.arrow(name) for name in seq]
    except KeyError as exc:
        raise CycleError(f"unknown arrow {exc.args[0]!r}") from None
    for i in range(len(arrows) - 1):
        if arrows[i].src != arrows[i + 1].tgt:
            raise CycleError(
                f"{seq[i]!r} then {seq[i + 1]!r} is not composable "
                f"(source {arrows[i].src} != target {arrows[i + 1].tgt})"
            )
    if arrows[-1].src != arrows[0].tgt:
        raise CycleError(f"walk is not closed: {seq[-1]!r} leaves {arrows[-1].src}, "
                         f"{seq[0]!r} enters {arrows[0].tgt}")


def least_rotation(seq: Sequence[str]) -> tuple[str, ...]:
    seq = tuple(seq)
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


def canonicalize(q, seq: Sequence[str]) -> OrientedCycle:
    """Validate a closed walk in ``q`` and return its least rotation."""
    if isinstance(seq, OrientedCycle):
        seq = seq.arrows
    _check_walk(q, seq)
    return OrientedCycle(least_rotation(seq))


def class_count_estimate(arrow_count: int, max_len: int) -> float:
    """Cheap upper bound ``sum_l K^l / l`` on the number of rotation classes."""
    total = 0.0
    for ell in range(1, max_len + 1):
        total += arrow_count**ell / ell
        if total > 1e300:
            return math.inf
    return total


def enumerate_cycles(q, max_len: int, budget: float = DEFAULT_BUDGET) -> tuple[OrientedCycle, ...]:
    """One canonical cycle per rotation class, lengths ``1..max_len``.

    Ordered by length, then lexicographically.  Periodic classes such as
    ``(a, b, a, b)`` are included.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    estimate = class_count_estimate(len(q.arrows), max_len)
    if estimate > budget:
        raise BudgetExceeded(estimate, budget)
    return _enumerate(_graph_key(q), max_len)


def _graph_key(q) -> tuple:
    return tuple(sorted((a.name, a.src, a.tgt) for a in q.arrows))


@lru_cache(maxsize=64)
def _enumerate(key: tuple, max_len: int) -> tuple[OrientedCycle, ...]:
    names = [k[0] for k in key]
    src = [k[1] for k in key]
    tgt = [k[2] for k in key]
    n = len(names)
    # follows[a]: letters b that may come right after a, ascending
    follows = [[b for b in range(n) if tgt[b] == src[a]] for a in range(n)]
    by_len: list[list[tuple[int, ...]]] = [[] for _ in range(max_len + 1)]
    word = [0] * max_len

    # Constrained FKM: extend prenecklaces letter by letter; a prenecklace
    # of length t with period p is a necklace iff p divides t.
    def extend(t: int, p: int) -> None:
        last = word[t - 1]
        if t % p == 0 and src[last] == tgt[word[0]]:
            by_len[t].append(tuple(word[:t]))
        if t == max_len:
            return
        lo = word[t - p]
        for b in follows[last]:
            if b < lo:
                continue
            word[t] = b
            extend(t + 1, p if b == lo else t + 1)

    for first in range(n):
        word[0] = first
        extend(1, 1)
    return tuple(
        OrientedCycle(tuple(names[i] for i in w)) for ell in range(1, max_len + 1) for w in by_len[ell]
    )


def cycle_trace(rep, cycle: OrientedCycle | Sequence[str]) -> complex:
    """``tr(M_g1 @ M_g2 @ ... @ M_gl)``, multiplied left to right."""
    seq = cycle.arrows if isinstance(cycle, OrientedCycle) else tuple(cycle)
    if not seq:
        raise CycleError("empty cycle")
    try:
        mats = [rep.matrices[name] for name in seq]
    except KeyError as exc:
        raise CycleError(f"arrow {exc.args[0]!r} not in representation") from None
    prod = mats[0]
    for m in mats[1:]:
        if prod.shape[1] != m.shape[0]:
            raise CycleError(f"cycle {SEPARATOR.join(seq)} is not composable")
        prod = prod @ m
    if prod.shape[0] != prod.shape[1]:
        raise CycleError(f"cycle {SEPARATOR.join(seq)} is not closed")
    return complex(np.trace(prod))


@dataclass(frozen=True, eq=False)
class CycleTable:
    """Enumerated cycles plus integer index arrays for batched evaluation.

    ``groups`` holds, per length, the positions of those cycles in
    ``cycles`` and an ``(N, length)`` array of indices into ``names``.
    """

    cycles: tuple[OrientedCycle, ...]
    names: tuple[str, ...]
    groups: tuple[tuple[np.ndarray, np.ndarray], ...]


def cycle_table(q, max_len: int, budget: float = DEFAULT_BUDGET) -> CycleTable:
    enumerate_cycles(q, max_len, budget)  # budget check
    return _table(_graph_key(q), max_len)


@lru_cache(maxsize=64)
def _table(key: tuple, max_len: int) -> CycleTable:
    cycles = _enumerate(key, max_len)
    names = tuple(k[0] for k in key)
    index = {name: i for i, name in enumerate(names)}
    groups = []
    start = 0
    for ell in range(1, max_len + 1):
        stop = start
        while stop < len(cycles) and len(cycles[stop]) == ell:
            stop += 1
        if stop > start:
            idx = np.array([[index[a] for a in c.arrows] for c in cycles[start:stop]], dtype=np.intp)
            groups.append((np.arange(start, stop), idx))
        start = stop
    return CycleTable(cycles, names, tuple(groups))


def _padded_stack(rep, names: Sequence[str], D: int) -> np.ndarray:
    stack = np.zeros((len(names), D, D), dtype=np.complex128)
    for i, name in enumerate(names):
        m = rep.matrices[name]
        stack[i, : m.shape[0], : m.shape[1]] = m
    return stack


def table_traces(rep, table: CycleTable) -> np.ndarray:
    """Traces of every cycle in ``table``.

    Every arrow matrix is zero-padded into the top-left corner of a common
    ``D x D`` square (``D`` = largest dimension); products of padded
    matrices are padded products, so cycles of equal length can be
    evaluated as one batched matmul chain.
    """
    out = np.zeros(len(table.cycles), dtype=np.complex128)
    D = max(rep.dims, default=0)
    if not table.cycles or D == 0:
        return out
    stack = _padded_stack(rep, table.names, D)
    batch = max(1, _BATCH_BYTES // (16 * D * D))
    for positions, idx in table.groups:
        for lo in range(0, len(positions), batch):
            chunk = idx[lo : lo + batch]
            prod = stack[chunk[:, 0]]
            for j in range(1, chunk.shape[1]):
                prod = prod @ stack[chunk[:, j]]
            out[positions[lo : lo + batch]] = np.trace(prod, axis1=1, axis2=2)
    return out


def cycle_traces(rep, cycles: Iterable[OrientedCycle]) -> np.ndarray:
    """Traces for an arbitrary collection of composable cycles of ``rep``."""
    cycles = tuple(cycles)
    names = tuple(rep.matrices)
    index = {name: i for i, name in enumerate(names)}
    groups: dict[int, list[int]] = {}
    for pos, c in enumerate(cycles):
        groups.setdefault(len(c), []).append(pos)
    table = CycleTable(
        cycles,
        names,
        tuple(
            (np.array(pos), np.array([[index[a] for a in cycles[p].arrows] for p in pos], dtype=np.intp))
            for pos in groups.values()
        ),
    )
    return table_traces(rep, table)
