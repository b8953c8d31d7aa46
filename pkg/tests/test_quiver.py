import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiveriso import DoubledQuiver, Quiver, QuiverError, double, min_r, multiplicities, validate_quiver
from quiveriso.quiver import complete_quiver, loop_quiver, parallel_quiver, star_quiver


def test_example_quiver_is_valid(pq):
    validate_quiver(pq)
    assert pq.vertex_count == 3
    assert len(pq.arrows) == 6


def test_empty_quiver_is_valid():
    q = Quiver(1)
    validate_quiver(q)
    assert q.arrows == ()


@pytest.mark.parametrize(
    "t, arrows",
    [
        (3, [("a", 5, 1)]),
        (3, [("a", 1, 0)]),
        (2, [("a", 1, 2), ("a", 2, 1)]),
        (1, [("", 1, 1)]),
        (1, [("a*", 1, 1)]),
        (1, [("a,b", 1, 1)]),
        (0, []),
    ],
)
def test_invalid_quivers_rejected(t, arrows):
    with pytest.raises(QuiverError):
        Quiver(t, arrows)


def test_double_loop():
    dq = double(Quiver(1, [("alpha", 1, 1)]))
    assert [(a.name, a.src, a.tgt, a.starred) for a in dq.arrows] == [
        ("alpha", 1, 1, False),
        ("alpha*", 1, 1, True),
    ]


def test_double_reverses_direction():
    dq = double(Quiver(2, [("alpha", 1, 2)]))
    s = dq.arrow("alpha*")
    assert (s.src, s.tgt) == (2, 1)


def test_double_example_quiver(pq):
    dq = double(pq)
    assert len(dq.arrows) == 12
    assert {a.name for a in dq.star_arrows} == {
        "alpha*", "beta*", "gamma*", "delta*", "epsilon*", "zeta*"
    }
    for a in pq.arrows:
        s = dq.arrow(a.name + "*")
        assert (s.src, s.tgt) == (a.tgt, a.src)


def test_cannot_double_twice(pq):
    with pytest.raises(TypeError):
        double(double(pq))
    assert not isinstance(double(pq), Quiver)
    assert isinstance(double(pq), DoubledQuiver)


def test_multiplicities_example_quiver(pq):
    m = multiplicities(pq)
    assert m[3, 2] == 2  # delta, epsilon: 2 -> 3
    assert m[1, 2] == 1 and m[1, 3] == 1 and m[2, 2] == 1 and m[3, 3] == 1
    assert m.sum() == 6


def test_multiplicities_trivial(loop):
    assert multiplicities(loop)[1, 1] == 1
    assert multiplicities(Quiver(3)).sum() == 0


@pytest.mark.parametrize(
    "q, r",
    [
        (None, 2),
        (Quiver(1, [("a", 1, 1)]), 1),
        (parallel_quiver(7), 4),  # 3*4/2 = 6 < 7 <= 4*5/2 = 10
        (Quiver(2), 1),
        (parallel_quiver(3), 2),
        (parallel_quiver(4), 3),
    ],
)
def test_min_r(q, r, pq):
    assert min_r(q if q is not None else pq) == r


def test_presets_shapes():
    assert len(loop_quiver(3).arrows) == 3
    assert len(complete_quiver(2).arrows) == 4
    assert len(complete_quiver(3).arrows) == 9
    s = star_quiver(3)
    assert s.vertex_count == 4 and all(a.tgt == 1 for a in s.arrows)
    assert min_r(complete_quiver(4)) == 1


def test_from_dict_roundtrip(pq):
    assert Quiver.from_dict(pq.to_dict()) == pq
    with pytest.raises(QuiverError):
        Quiver.from_dict({"vertices": 1, "arrows": [], "extra": 1})


def test_same_shape_ignores_order(pq):
    rev = Quiver(3, tuple(reversed(pq.arrows)))
    assert pq.same_shape(rev)
    assert not pq.same_shape(Quiver(3, pq.arrows[:-1]))


quivers = st.integers(1, 4).flatmap(
    lambda t: st.lists(st.tuples(st.integers(1, t), st.integers(1, t)), max_size=12).map(
        lambda ends: Quiver(t, tuple((f"x{i}", s, g) for i, (s, g) in enumerate(ends)))
    )
)


@settings(max_examples=60, deadline=None)
@given(quivers)
def test_doubling_multiplicities_add_transpose(q):
    m = multiplicities(q)
    np.testing.assert_array_equal(multiplicities(double(q)), m + m.T)


@settings(max_examples=60, deadline=None)
@given(quivers)
def test_min_r_is_minimal(q):
    r = min_r(q)
    top = int(multiplicities(q).max())
    assert r * (r + 1) // 2 >= top
    if top > 1:
        assert (r - 1) * r // 2 < top
    else:
        assert r == 1
