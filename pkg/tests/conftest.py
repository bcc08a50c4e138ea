import pytest

from srcot.generators import (
    bipyramid,
    ngon,
    octahedron,
    octahedron_diagonals,
    random_complex,
    simplex,
    simplex_boundary,
    sphere0,
)

# Filled by tests/test_acceptance.py; printed once at the end of the session.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])


@pytest.fixture(scope="session")
def D():
    return octahedron_diagonals()


@pytest.fixture(scope="session")
def S0():
    return sphere0()


@pytest.fixture(scope="session")
def octa():
    return octahedron()


def small_zoo():
    """A spread of small complexes used by several property tests."""
    return [
        sphere0(),
        simplex(2),
        simplex_boundary(2),
        simplex_boundary(3),
        ngon(4),
        ngon(5),
        octahedron(),
        bipyramid(4),
        random_complex(1, 5),
        random_complex(2, 5, 0.7),
    ]
