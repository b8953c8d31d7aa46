"""Matrix representations of quivers and their isometric changes of basis."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
import scipy.linalg

from .errors import RepresentationError
from .quiver import DoubledQuiver, Quiver, double

#: Acceptance tolerance for user-supplied families: ||U#U - I||_F <= tol * n.
UNITARITY_TOL = 1e-8
#: Sampled families are held to this tighter bound.
SAMPLED_UNITARITY_TOL = 1e-10
CAYLEY_RETRIES = 16


class StarMode(enum.Enum):
    """Which adjoint the inner product induces."""

    ADJOINT = "adjoint"  # conjugate transpose: unitary spaces
    TRANSPOSE = "transpose"  # plain transpose: complex Euclidean spaces


class FieldMode(enum.Enum):
    COMPLEX = "complex"
    REAL = "real"


def star(m: np.ndarray, mode: StarMode) -> np.ndarray:
    m = np.asarray(m)
    if mode is StarMode.ADJOINT:
        return m.conj().T
    return m.T


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


class MatrixRepresentation:
    """A dimension vector plus one complex matrix per arrow.

    The matrix of ``alpha: u -> v`` has shape ``(d_v, d_u)``.  Instances are
    validated on construction and immutable afterwards.
    """

    __slots__ = ("quiver", "dims", "matrices", "field")

    def __init__(
        self,
        quiver: Quiver | DoubledQuiver,
        dims: Sequence[int],
        matrices: Mapping[str, np.ndarray],
        field: FieldMode = FieldMode.COMPLEX,
    ):
        object.__setattr__(self, "quiver", quiver)
        object.__setattr__(self, "dims", tuple(int(d) for d in dims))
        object.__setattr__(
            self, "matrices", {name: _frozen(m) for name, m in matrices.items()}
        )
        object.__setattr__(self, "field", FieldMode(field))
        validate_representation(self)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixRepresentation is immutable")

    def __repr__(self):
        return f"MatrixRepresentation(dims={self.dims}, arrows={list(self.matrices)})"

    def __getitem__(self, arrow: str) -> np.ndarray:
        return self.matrices[arrow]

    def dim(self, vertex: int) -> int:
        return self.dims[vertex - 1]

    def with_matrices(self, matrices: Mapping[str, np.ndarray]) -> "MatrixRepresentation":
        return MatrixRepresentation(self.quiver, self.dims, matrices, self.field)

    def equals(self, other: "MatrixRepresentation") -> bool:
        """Exact equality of quiver shape, dims, field and every entry."""
        return (
            self.quiver.same_shape(other.quiver)
            and self.dims == other.dims
            and self.field is other.field
            and all(np.array_equal(m, other.matrices[k]) for k, m in self.matrices.items())
        )


def validate_representation(rep: MatrixRepresentation) -> None:
    q = rep.quiver
    if len(rep.dims) != q.vertex_count:
        raise RepresentationError(
            f"dimension vector has {len(rep.dims)} entries, quiver has {q.vertex_count} vertices"
        )
    for v, d in enumerate(rep.dims, start=1):
        if d < 0:
            raise RepresentationError(f"negative dimension {d} at vertex {v}")
    names = set(q.arrow_names)
    missing = names - set(rep.matrices)
    extra = set(rep.matrices) - names
    if missing:
        raise RepresentationError(f"no matrix for arrow(s) {sorted(missing)}")
    if extra:
        raise RepresentationError(f"matrix given for unknown arrow(s) {sorted(extra)}")
    for a in q.arrows:
        m = rep.matrices[a.name]
        want = (rep.dims[a.tgt - 1], rep.dims[a.src - 1])
        if m.shape != want:
            raise RepresentationError(
                f"arrow {a.name!r} ({a.src}->{a.tgt}) needs a {want[0]}x{want[1]} matrix, "
                f"got shape {m.shape}"
            )
        if not np.all(np.isfinite(m)):
            raise RepresentationError(f"arrow {a.name!r} has non-finite entries")
        if rep.field is FieldMode.REAL and np.any(m.imag != 0):
            raise RepresentationError(f"arrow {a.name!r} has non-real entries in a real representation")


def extend_to_double(rep: MatrixRepresentation, mode: StarMode) -> MatrixRepresentation:
    """Representation of the doubled quiver: ``alpha*`` carries ``star(A_alpha)``."""
    if isinstance(rep.quiver, DoubledQuiver):
        raise TypeError("representation is already over a doubled quiver")
    dq = double(rep.quiver)
    mats = dict(rep.matrices)
    for a, s in zip(rep.quiver.arrows, dq.star_arrows):
        mats[s.name] = star(rep.matrices[a.name], mode)
    return MatrixRepresentation(dq, rep.dims, mats, rep.field)


@dataclass(frozen=True)
class IsometryFamily:
    """One square matrix per vertex (``unitaries[v-1]``), each #-unitary."""

    unitaries: tuple[np.ndarray, ...]
    star_mode: StarMode

    def __post_init__(self):
        object.__setattr__(self, "unitaries", tuple(_frozen(u) for u in self.unitaries))
        object.__setattr__(self, "star_mode", StarMode(self.star_mode))
        for v, u in enumerate(self.unitaries, start=1):
            if u.ndim != 2 or u.shape[0] != u.shape[1]:
                raise RepresentationError(f"family matrix at vertex {v} is not square: {u.shape}")

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(u.shape[0] for u in self.unitaries)

    def unitarity_defects(self) -> list[float]:
        return [
            float(np.linalg.norm(star(u, self.star_mode) @ u - np.eye(u.shape[0])))
            for u in self.unitaries
        ]

    def check(self, tol: float = UNITARITY_TOL) -> None:
        for v, (u, err) in enumerate(zip(self.unitaries, self.unitarity_defects()), start=1):
            if err > tol * max(u.shape[0], 1):
                raise RepresentationError(
                    f"family matrix at vertex {v} is not {self.star_mode.value}-unitary "
                    f"(||U#U - I||_F = {err:.3g})"
                )

    def inverse(self) -> "IsometryFamily":
        return IsometryFamily(tuple(star(u, self.star_mode) for u in self.unitaries), self.star_mode)

    def compose(self, other: "IsometryFamily") -> "IsometryFamily":
        """Family whose transform equals ``transform(transform(rep, self), other)``."""
        if self.star_mode is not other.star_mode:
            raise RepresentationError("cannot compose families with different star modes")
        return IsometryFamily(
            tuple(u @ w for u, w in zip(self.unitaries, other.unitaries)), self.star_mode
        )


def transform(rep: MatrixRepresentation, fam: IsometryFamily, tol: float = UNITARITY_TOL) -> MatrixRepresentation:
    """``B_alpha = U_v^{-1} A_alpha U_u`` for every arrow ``alpha: u -> v``.

    ``U_v^{-1}`` is taken as ``star(U_v)``, so the family must be #-unitary.
    """
    if fam.dims != rep.dims:
        raise RepresentationError(f"family sizes {fam.dims} do not match dims {rep.dims}")
    fam.check(tol)
    inv = [star(u, fam.star_mode) for u in fam.unitaries]
    mats = {
        a.name: inv[a.tgt - 1] @ rep.matrices[a.name] @ fam.unitaries[a.src - 1]
        for a in rep.quiver.arrows
    }
    field = rep.field
    if field is FieldMode.REAL and any(np.any(u.imag != 0) for u in fam.unitaries):
        field = FieldMode.COMPLEX
    return MatrixRepresentation(rep.quiver, rep.dims, mats, field)


def random_representation(
    q: Quiver,
    dims: Sequence[int],
    seed=None,
    field: FieldMode = FieldMode.COMPLEX,
) -> MatrixRepresentation:
    """I.i.d. standard Gaussian entries, drawn arrow by arrow in quiver order."""
    field = FieldMode(field)
    if len(dims) != q.vertex_count:
        raise RepresentationError(f"dims {tuple(dims)} do not match {q.vertex_count} vertices")
    rng = np.random.default_rng(seed)
    mats = {}
    for a in q.arrows:
        shape = (dims[a.tgt - 1], dims[a.src - 1])
        m = rng.standard_normal(shape)
        if field is FieldMode.COMPLEX:
            m = m + 1j * rng.standard_normal(shape)
        mats[a.name] = m
    return MatrixRepresentation(q, dims, mats, field)


def _haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = scipy.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def _real_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    q, r = scipy.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def _complex_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    eye = np.eye(n)
    for _ in range(CAYLEY_RETRIES):
        g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2 * n)
        s = (g - g.T) / 2
        plus = eye + s
        if np.linalg.cond(plus) > 1e6:
            continue
        u = np.linalg.solve(plus.T, (eye - s).T).T  # (I - S)(I + S)^{-1}
        # Cayley images have det 1; a random reflection reaches the other component.
        if rng.random() < 0.5:
            u[:, 0] = -u[:, 0]
        if np.linalg.norm(u.T @ u - eye) <= SAMPLED_UNITARITY_TOL * n:
            return u
    raise RepresentationError(f"Cayley transform stayed near-singular after {CAYLEY_RETRIES} draws")


def random_isometry_family(
    dims: Sequence[int],
    seed=None,
    star_mode: StarMode = StarMode.ADJOINT,
    field: FieldMode = FieldMode.COMPLEX,
) -> IsometryFamily:
    """Random #-unitary matrix per vertex.

    Real field: real orthogonal (valid for either mode).  Complex field:
    Haar unitary for ``ADJOINT``, Cayley-transform complex orthogonal for
    ``TRANSPOSE``.
    """
    star_mode, field = StarMode(star_mode), FieldMode(field)
    rng = np.random.default_rng(seed)
    mats = []
    for d in dims:
        if d == 0:
            mats.append(np.zeros((0, 0)))
        elif field is FieldMode.REAL:
            mats.append(_real_orthogonal(d, rng))
        elif star_mode is StarMode.ADJOINT:
            mats.append(_haar_unitary(d, rng))
        else:
            mats.append(_complex_orthogonal(d, rng))
    return IsometryFamily(tuple(mats), star_mode)


def perturb(rep: MatrixRepresentation, epsilon: float, seed=None) -> MatrixRepresentation:
    """Add ``epsilon``-scaled Gaussian noise to one uniformly chosen arrow."""
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    arrows = rep.quiver.arrows
    if not arrows:
        raise RepresentationError("cannot perturb a representation without arrows")
    rng = np.random.default_rng(seed)
    a = arrows[int(rng.integers(len(arrows)))]
    m = rep.matrices[a.name]
    noise = rng.standard_normal(m.shape)
    if rep.field is FieldMode.COMPLEX:
        noise = noise + 1j * rng.standard_normal(m.shape)
    mats = dict(rep.matrices)
    mats[a.name] = m + epsilon * noise
    return rep.with_matrices(mats)
