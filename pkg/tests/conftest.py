import pytest

from tropic.cone import GeneratorCone
from tropic.farkas import Implication
from tropic.semiring import BOTTOM as _
from tropic.semiring import TropMatrix

SIX_ROWS = [
    [-3, 0, 0],
    [0, -3, 0],
    [0, 0, -3],
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
]

DEDUCE_A = [[0, _, -2], [_, 0, _]]
DEDUCE_B = [[_, 0, _], [-3, _, 0]]
DEDUCE_C = [0, 0, _]
DEDUCE_D = [_, _, 0]


@pytest.fixture
def six_cone():
    """Three-dimensional cone with six generators used as a running example."""
    return GeneratorCone(TropMatrix(SIX_ROWS))


@pytest.fixture
def deduce():
    """x1 (+) -2 x3 <= x2 and x2 <= -3 x1 (+) x3, goal x1 (+) x2 <= x3."""
    return Implication(DEDUCE_A, DEDUCE_B, DEDUCE_C, DEDUCE_D)


@pytest.fixture
def deduce_perturbed():
    """Same premise, goal 1 x1 (+) x2 <= x3, which no longer follows."""
    return Implication(DEDUCE_A, DEDUCE_B, [1, 0, _], DEDUCE_D)


ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[k])
