import numpy as np
import pytest

from quiveriso import Quiver


def example_quiver() -> Quiver:
    """Three vertices: alpha 2->1, beta 3->1, loop gamma at 2, delta and
    epsilon 2->3, loop zeta at 3 (this orientation puts epsilon in X_2 at (3,2))."""
    return Quiver(
        3,
        (
            ("alpha", 2, 1),
            ("beta", 3, 1),
            ("gamma", 2, 2),
            ("delta", 2, 3),
            ("epsilon", 2, 3),
            ("zeta", 3, 3),
        ),
    )


@pytest.fixture
def pq():
    return example_quiver()


@pytest.fixture
def loop():
    return Quiver(1, (("a", 1, 1),))


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
