import pytest

from torusmaps.maps import parse_map

ACCEPTANCE_LINES: list[str] = []

ONE_VERTEX_TRIANGULATION = """\
darts: 6
alpha: 0-3 1-4 2-5
sigma: (0 5 1 3 2 4)
root_face: 0
"""

# one-vertex toroidal map with two loops and a single square face
ONE_VERTEX_SQUARE = """\
darts: 4
alpha: 0-2 1-3
sigma: (0 1 2 3)
root_face: 0
"""

TRIANGLE = """\
darts: 6
alpha: 0-3 1-4 2-5
sigma: (0 5)(1 3)(2 4)
root_face: 0
"""


@pytest.fixture
def tri1():
    return parse_map(ONE_VERTEX_TRIANGULATION)[0]


@pytest.fixture
def square1():
    return parse_map(ONE_VERTEX_SQUARE)[0]


@pytest.fixture
def triangle():
    return parse_map(TRIANGLE)[0]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
