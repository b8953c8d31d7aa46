import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiveriso import (
    FieldMode,
    IsometryFamily,
    MatrixRepresentation,
    Quiver,
    RepresentationError,
    StarMode,
    extend_to_double,
    perturb,
    random_isometry_family,
    random_representation,
    star,
    transform,
)
from quiveriso.representation import SAMPLED_UNITARITY_TOL

from conftest import crandn, example_quiver

MODES = list(StarMode)


def test_validate_loop(loop):
    MatrixRepresentation(loop, (2,), {"a": np.eye(2)})


def test_transposed_shape_rejected():
    q = Quiver(2, [("alpha", 2, 1)])
    MatrixRepresentation(q, (3, 4), {"alpha": np.zeros((3, 4))})
    with pytest.raises(RepresentationError, match="alpha"):
        MatrixRepresentation(q, (3, 4), {"alpha": np.zeros((4, 3))})


def test_parallel_arrows_share_shape(pq):
    rep = random_representation(pq, (1, 2, 3), seed=1)
    assert rep["delta"].shape == rep["epsilon"].shape == (3, 2)


def test_missing_and_extra_matrices(loop):
    with pytest.raises(RepresentationError, match="no matrix"):
        MatrixRepresentation(loop, (1,), {})
    with pytest.raises(RepresentationError, match="unknown"):
        MatrixRepresentation(loop, (1,), {"a": [[1]], "b": [[1]]})


def test_real_mode_rejects_complex(loop):
    with pytest.raises(RepresentationError, match="non-real"):
        MatrixRepresentation(loop, (1,), {"a": [[1j]]}, FieldMode.REAL)


def test_immutable(loop):
    rep = MatrixRepresentation(loop, (1,), {"a": [[1.0]]})
    with pytest.raises(ValueError):
        rep["a"][0, 0] = 2
    with pytest.raises(AttributeError):
        rep.dims = (2,)


def test_star_examples():
    m = np.array([[0, 1j]])
    np.testing.assert_array_equal(star(m, StarMode.ADJOINT), [[0], [-1j]])
    np.testing.assert_array_equal(star(m, StarMode.TRANSPOSE), [[0], [1j]])
    r = np.arange(6.0).reshape(2, 3)
    np.testing.assert_array_equal(star(r, StarMode.ADJOINT), star(r, StarMode.TRANSPOSE))


@pytest.mark.parametrize("mode", MODES)
def test_star_involution_and_antihomomorphism(mode, rng):
    for _ in range(20):
        m, k, n = rng.integers(0, 5, 3)
        M, N = crandn(rng, m, k), crandn(rng, k, n)
        np.testing.assert_array_equal(star(star(M, mode), mode), M)
        np.testing.assert_allclose(star(M @ N, mode), star(N, mode) @ star(M, mode), rtol=1e-14, atol=1e-14)


def test_extend_nilpotent_loop(loop):
    rep = MatrixRepresentation(loop, (2,), {"a": [[0, 1], [0, 0]]})
    ext = extend_to_double(rep, StarMode.ADJOINT)
    np.testing.assert_array_equal(ext["a*"], [[0, 0], [1, 0]])
    np.testing.assert_array_equal(ext["a"], rep["a"])


def test_extend_shapes():
    q = Quiver(2, [("alpha", 1, 2)])
    rep = random_representation(q, (3, 5), seed=0)
    ext = extend_to_double(rep, StarMode.TRANSPOSE)
    assert ext["alpha"].shape == (5, 3) and ext["alpha*"].shape == (3, 5)


def test_extend_real_modes_identical(pq):
    rep = random_representation(pq, (2, 1, 3), seed=4, field=FieldMode.REAL)
    e1 = extend_to_double(rep, StarMode.ADJOINT)
    e2 = extend_to_double(rep, StarMode.TRANSPOSE)
    for name in e1.matrices:
        np.testing.assert_array_equal(e1[name], e2[name])


def test_transform_identity(pq):
    rep = random_representation(pq, (2, 2, 2), seed=3)
    fam = IsometryFamily(tuple(np.eye(d) for d in rep.dims), StarMode.ADJOINT)
    assert transform(rep, fam).equals(rep)


def test_transform_permutation(loop):
    rep = MatrixRepresentation(loop, (2,), {"a": np.diag([1.0, 2.0])})
    fam = IsometryFamily((np.array([[0.0, 1.0], [1.0, 0.0]]),), StarMode.ADJOINT)
    np.testing.assert_array_equal(transform(rep, fam)["a"], np.diag([2.0, 1.0]))


def test_transform_rejects_bad_family(loop):
    rep = MatrixRepresentation(loop, (2,), {"a": np.eye(2)})
    with pytest.raises(RepresentationError, match="unitary"):
        transform(rep, IsometryFamily((2 * np.eye(2),), StarMode.ADJOINT))
    with pytest.raises(RepresentationError, match="sizes"):
        transform(rep, IsometryFamily((np.eye(3),), StarMode.ADJOINT))
    # complex orthogonal but not unitary
    c = np.cosh(0.7)
    s = 1j * np.sinh(0.7)
    u = np.array([[c, s], [-s, c]])
    np.testing.assert_allclose(u.T @ u, np.eye(2), atol=1e-14)
    transform(rep, IsometryFamily((u,), StarMode.TRANSPOSE))
    with pytest.raises(RepresentationError):
        transform(rep, IsometryFamily((u,), StarMode.ADJOINT))


def test_random_representation_deterministic(pq):
    a = random_representation(pq, (2, 3, 1), seed=11)
    b = random_representation(pq, (2, 3, 1), seed=11)
    assert a.equals(b)
    assert not a.equals(random_representation(pq, (2, 3, 1), seed=12))


def test_random_representation_real_and_loop(loop):
    rep = random_representation(example_quiver(), (2, 2, 2), seed=0, field=FieldMode.REAL)
    assert all(np.all(m.imag == 0) for m in rep.matrices.values())
    assert random_representation(loop, (3,), seed=0)["a"].shape == (3, 3)


def test_family_size_one():
    u = random_isometry_family((1,), seed=5, star_mode=StarMode.ADJOINT).unitaries[0]
    assert abs(abs(u[0, 0]) - 1) < 1e-14
    signs = {
        complex(random_isometry_family((1,), seed=s, star_mode=StarMode.TRANSPOSE).unitaries[0][0, 0])
        for s in range(20)
    }
    assert signs == {1 + 0j, -1 + 0j}


def test_family_real_orthogonal():
    u = random_isometry_family((3,), seed=2, field=FieldMode.REAL).unitaries[0]
    assert np.all(u.imag == 0)
    assert np.linalg.norm(u.real.T @ u.real - np.eye(3)) <= 1e-10


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("field", list(FieldMode))
def test_family_unitarity_tolerance(mode, field):
    for seed in range(25):
        fam = random_isometry_family((1, 2, 3, 5, 0), seed=seed, star_mode=mode, field=field)
        for u, err in zip(fam.unitaries, fam.unitarity_defects()):
            assert err <= SAMPLED_UNITARITY_TOL * max(1, u.shape[0])


def test_complex_orthogonal_is_not_unitary_in_general():
    fam = random_isometry_family((4,), seed=1, star_mode=StarMode.TRANSPOSE)
    u = fam.unitaries[0]
    assert np.linalg.norm(u.conj().T @ u - np.eye(4)) > 1e-3


def test_perturb(loop):
    rep = MatrixRepresentation(loop, (2,), {"a": np.zeros((2, 2))})
    assert perturb(rep, 0.0, seed=1).equals(rep)
    p = perturb(rep, 1.0, seed=1)
    assert np.linalg.norm(p["a"]) > 0
    assert p.equals(perturb(rep, 1.0, seed=1))
    with pytest.raises(RepresentationError):
        perturb(MatrixRepresentation(Quiver(1), (2,), {}), 1.0, seed=0)


def test_perturb_touches_one_arrow(pq):
    rep = random_representation(pq, (2, 2, 2), seed=0)
    p = perturb(rep, 0.1, seed=9)
    changed = [n for n in rep.matrices if not np.array_equal(rep[n], p[n])]
    assert len(changed) == 1


def test_perturb_keeps_real(pq):
    rep = random_representation(pq, (2, 2, 2), seed=0, field=FieldMode.REAL)
    assert perturb(rep, 0.1, seed=2).field is FieldMode.REAL


def _rel(a, b):
    return max(np.linalg.norm(a[n] - b[n]) / max(1.0, np.linalg.norm(a[n])) for n in a.matrices)


@settings(max_examples=30, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    dims=st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
    mode=st.sampled_from(MODES),
)
def test_transform_functorial_and_invertible(seed, dims, mode):
    q = example_quiver()
    rep = random_representation(q, dims, seed=seed)
    f = random_isometry_family(dims, seed=seed + 1, star_mode=mode)
    g = random_isometry_family(dims, seed=seed + 2, star_mode=mode)
    two_step = transform(transform(rep, f), g)
    assert _rel(two_step, transform(rep, f.compose(g))) <= 1e-10
    assert _rel(transform(transform(rep, f), f.inverse()), rep) <= 1e-10
