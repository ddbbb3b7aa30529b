from pathlib import Path

import pytest

from trackcube.complex import complex_from_faces, parse_edge_name
from trackcube.pattern import Arc, make_pattern, validate_drawing

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


def drawing(K, counts, arcs, **kw):
    """Build a drawing from {"u-v": c} and [(face, ("u-v", i), ("u-v", j))]."""
    c = {parse_edge_name(k): v for k, v in counts.items()}
    a = [Arc.make(tuple(f), (parse_edge_name(p[0]), p[1]), (parse_edge_name(q[0]), q[1]))
         for f, p, q in arcs]
    return validate_drawing(K, c, a, **kw)


def pattern(K, counts, arcs):
    return make_pattern(K, drawing(K, counts, arcs))


@pytest.fixture
def K1():
    return complex_from_faces([(1, 2, 3)])


@pytest.fixture
def K2():
    return complex_from_faces([(1, 2, 3), (2, 3, 4)])


F = (1, 2, 3)


@pytest.fixture
def single_arc(K1):
    return pattern(K1, {"1-2": 1, "1-3": 1}, [(F, ("1-2", 1), ("1-3", 1))])


@pytest.fixture
def nested_arcs(K1):
    return pattern(K1, {"1-2": 2, "1-3": 2},
                   [(F, ("1-2", 1), ("1-3", 1)), (F, ("1-2", 2), ("1-3", 2))])


@pytest.fixture
def crossing_arcs(K1):
    return pattern(K1, {"1-2": 2, "1-3": 1, "2-3": 1},
                   [(F, ("1-2", 2), ("1-3", 1)), (F, ("1-2", 1), ("2-3", 1))])


@pytest.fixture
def three_corners(K1):
    return pattern(K1, {"1-2": 2, "1-3": 2, "2-3": 2},
                   [(F, ("1-2", 1), ("1-3", 1)), (F, ("1-2", 2), ("2-3", 1)),
                    (F, ("1-3", 2), ("2-3", 2))])


# one line per acceptance criterion, collected by test_acceptance.py
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
