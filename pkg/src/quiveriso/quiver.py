"""Quivers, their doubles, arrow multiplicities and the ``r`` parameter.

Vertices are the integers ``1..t``.  An arrow ``j -> i`` is stored with
``src=j`` and ``tgt=i``; the multiplicity table is indexed target first,
``m[i][j]`` = number of arrows ``j -> i``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import QuiverError

#: Suffix marking the adjoint arrow of the double; forbidden in user names.
STAR = "*"
#: Separator used when printing cycles; forbidden in user names as well.
SEPARATOR = ","


@dataclass(frozen=True)
class Arrow:
    name: str
    src: int
    tgt: int
    starred: bool = False

    def is_loop(self) -> bool:
        return self.src == self.tgt


def _as_arrow(a) -> Arrow:
    if isinstance(a, Arrow):
        return a
    if isinstance(a, dict):
        return Arrow(a["name"], a["src"], a["tgt"])
    name, src, tgt = a
    return Arrow(name, src, tgt)


@dataclass(frozen=True)
class Quiver:
    """A finite quiver; loops and parallel arrows are allowed.

    ``arrows`` accepts :class:`Arrow` objects, ``(name, src, tgt)`` triples
    or ``{"name", "src", "tgt"}`` dicts.
    """

    vertex_count: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(_as_arrow(a) for a in self.arrows))
        validate_quiver(self)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    @property
    def arrow_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.arrows)

    def same_shape(self, other) -> bool:
        """Equal vertex count and equal arrow set, ignoring arrow order."""
        return (
            self.vertex_count == other.vertex_count
            and sorted(self.arrows, key=lambda a: a.name)
            == sorted(other.arrows, key=lambda a: a.name)
        )

    def to_dict(self) -> dict:
        return {
            "vertices": self.vertex_count,
            "arrows": [{"name": a.name, "src": a.src, "tgt": a.tgt} for a in self.arrows],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Quiver":
        extra = set(doc) - {"vertices", "arrows"}
        if extra:
            raise QuiverError(f"unknown quiver members: {sorted(extra)}")
        try:
            t = doc["vertices"]
            arrows = doc.get("arrows", [])
        except (KeyError, TypeError) as exc:
            raise QuiverError(f"malformed quiver document: {exc}") from None
        if not isinstance(t, int) or isinstance(t, bool):
            raise QuiverError("'vertices' must be an integer")
        parsed = []
        for a in arrows:
            if not isinstance(a, dict) or set(a) != {"name", "src", "tgt"}:
                raise QuiverError(f"arrow entry must have exactly name/src/tgt: {a!r}")
            parsed.append(Arrow(a["name"], a["src"], a["tgt"]))
        return cls(t, tuple(parsed))


@dataclass(frozen=True)
class DoubledQuiver:
    """``base`` with an adjoint arrow ``name*: tgt -> src`` for every arrow.

    Deliberately not a :class:`Quiver`, so it cannot be doubled again.
    """

    base: Quiver

    @property
    def vertex_count(self) -> int:
        return self.base.vertex_count

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.base.arrows + self.star_arrows

    @property
    def star_arrows(self) -> tuple[Arrow, ...]:
        return tuple(Arrow(a.name + STAR, a.tgt, a.src, True) for a in self.base.arrows)

    @property
    def arrow_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.arrows)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def same_shape(self, other) -> bool:
        return isinstance(other, DoubledQuiver) and self.base.same_shape(other.base)


def validate_quiver(q: Quiver) -> None:
    """Raise :class:`QuiverError` unless ``q`` is well formed."""
    t = q.vertex_count
    if not isinstance(t, (int, np.integer)) or isinstance(t, bool) or t < 1:
        raise QuiverError(f"vertex count must be a positive integer, got {t!r}")
    seen = set()
    for a in q.arrows:
        if not isinstance(a.name, str) or not a.name:
            raise QuiverError(f"arrow names must be nonempty strings, got {a.name!r}")
        if STAR in a.name or SEPARATOR in a.name:
            raise QuiverError(
                f"arrow name {a.name!r} contains a reserved character ({STAR!r} or {SEPARATOR!r})"
            )
        if a.name in seen:
            raise QuiverError(f"duplicate arrow name {a.name!r}")
        seen.add(a.name)
        for end in (a.src, a.tgt):
            if isinstance(end, bool) or not isinstance(end, (int, np.integer)) or not 1 <= end <= t:
                raise QuiverError(f"arrow {a.name!r}: vertex {end!r} outside 1..{t}")


def double(q: Quiver) -> DoubledQuiver:
    if not isinstance(q, Quiver):
        raise TypeError("only a plain Quiver can be doubled")
    return DoubledQuiver(q)


def multiplicities(q) -> np.ndarray:
    """``(t+1, t+1)`` integer table, 1-based: ``m[i, j]`` counts arrows ``j -> i``.

    Row and column 0 are unused so indices match vertex numbers.
    """
    t = q.vertex_count
    m = np.zeros((t + 1, t + 1), dtype=np.int64)
    for a in q.arrows:
        m[a.tgt, a.src] += 1
    return m


def min_r(q) -> int:
    """Smallest ``r >= 1`` with ``r(r+1)/2 >= max m_ij`` (1 for arrowless quivers)."""
    top = int(multiplicities(q).max()) if q.arrows else 0
    r = 1
    while r * (r + 1) // 2 < top:
        r += 1
    return r


# -- quivers of the classical criteria ------------------------------------


def loop_quiver(k: int = 1) -> Quiver:
    """One vertex with ``k`` loops named ``a`` (k=1) or ``a1..ak``."""
    if k < 1:
        raise QuiverError("need at least one loop")
    names = ["a"] if k == 1 else [f"a{i}" for i in range(1, k + 1)]
    return Quiver(1, tuple((n, 1, 1) for n in names))


def parallel_quiver(k: int) -> Quiver:
    """Vertices 1, 2 and ``k`` arrows ``a1..ak: 2 -> 1``."""
    if k < 1:
        raise QuiverError("need at least one arrow")
    return Quiver(2, tuple((f"a{i}", 2, 1) for i in range(1, k + 1)))


def star_quiver(k: int) -> Quiver:
    """Hub 1 receiving ``a_i: i+1 -> 1`` from each of ``k`` leaves."""
    if k < 1:
        raise QuiverError("need at least one leaf")
    return Quiver(k + 1, tuple((f"a{i}", i + 1, 1) for i in range(1, k + 1)))


def complete_quiver(t: int) -> Quiver:
    """One loop per vertex and one arrow each way between distinct vertices.

    Arrow ``a{i}_{j}: j -> i`` carries block ``(i, j)`` of a partitioned matrix.
    """
    if t < 1:
        raise QuiverError("need at least one vertex")
    return Quiver(
        t, tuple((f"a{i}_{j}", j, i) for i in range(1, t + 1) for j in range(1, t + 1))
    )

