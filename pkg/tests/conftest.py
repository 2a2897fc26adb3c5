import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from ladderdet.ladder import Ladder  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("default")


L_GRID = """\
.####
.####
###..
###..
##...
"""

# the 8-corner picture: rows are read off from the corner coordinates
EIGHT_CORNER = Ladder(
    15, 16,
    (10, 8, 6, 5, 4, 3, 3, 2, 2, 1, 1, 1, 1, 1, 1),
    (16, 16, 16, 16, 16, 16, 15, 14, 13, 13, 12, 11, 10, 8, 6),
)


@pytest.fixture
def L():
    return Ladder.from_grid(L_GRID)


@pytest.fixture
def O():
    return Ladder(5, 5, (1,) * 5, (5, 5, 5, 4, 3))


@pytest.fixture
def Y3():
    # one-sided ladder whose 3-minors fill a 3 x 4 block
    return Ladder.from_grid("#####\n#####\n####.")


@pytest.fixture
def T():
    # coincidental corner at (3, 2)
    return Ladder(5, 3, (2, 2, 1, 1, 1), (3, 3, 3, 2, 2))


@pytest.fixture
def Y2():
    # two path components, both carrying 2-minors
    return Ladder(4, 6, (4, 4, 1, 1), (6, 6, 3, 3))


@pytest.fixture
def spine_fixture():
    return Ladder(10, 10, (4,) * 7 + (1,) * 3, (10, 10, 9, 8, 7, 6, 6, 6, 6, 6))


@pytest.fixture
def thin_fixture():
    # thin, corners (3,4) and (2,5) on one antidiagonal, lambda = (-2, -2)
    return Ladder(4, 8, (4, 4, 1, 1), (8, 8, 5, 5))


@pytest.fixture
def eight():
    return EIGHT_CORNER


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS, line

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(line(number))
