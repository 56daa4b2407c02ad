import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from blaschke_kit import CompactBoundarySet

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

TWO_PI = 2.0 * math.pi

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def random_set(rng: np.random.Generator, max_pieces: int = 4, points_only: bool = False,
               max_len: float = 0.6) -> CompactBoundarySet:
    """A random union of points and short arcs."""
    n = int(rng.integers(1, max_pieces + 1))
    arcs = []
    for _ in range(n):
        lo = float(rng.uniform(0, TWO_PI))
        length = 0.0 if points_only or rng.random() < 0.5 else float(rng.uniform(0, max_len))
        arcs.append((lo, lo + length))
    return CompactBoundarySet.from_arcs(arcs)


@st.composite
def boundary_sets(draw, max_pieces=4, points_only=False):
    n = draw(st.integers(1, max_pieces))
    arcs = []
    for _ in range(n):
        lo = draw(st.floats(0, TWO_PI, allow_nan=False))
        length = 0.0 if points_only else draw(st.sampled_from([0.0, 0.0, 0.05, 0.3, 1.0]))
        arcs.append((lo, lo + length))
    return CompactBoundarySet.from_arcs(arcs)


def disk_points(max_r=0.999):
    return st.builds(lambda r, th: r * complex(math.cos(th), math.sin(th)),
                     st.floats(0, max_r), st.floats(0, TWO_PI))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def antipodal():
    return CompactBoundarySet.point(0.0), CompactBoundarySet.point(math.pi)
