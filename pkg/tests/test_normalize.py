import pytest
from hypothesis import given, settings, strategies as st

from conftest import drawing
from trackcube.complex import complex_from_faces
from trackcube.errors import BoundaryReturn, NonManifoldEdge, NotInnermost
from trackcube.generate import generalized_instance, instance_rng
from trackcube.normalize import find_self_returning, innermost, normalize, push_move
from trackcube.pattern import validate_drawing

A, B = (1, 2, 3), (2, 3, 4)


def gen(K, counts, arcs):
    return drawing(K, counts, arcs, generalized=True, allow_empty=True)


def test_find_and_innermost(K1):
    D = drawing(K1, {"1-2": 1, "1-3": 1}, [(A, ("1-2", 1), ("1-3", 1))])
    assert find_self_returning(D) == []
    D = gen(K1, {"1-2": 2}, [(A, ("1-2", 1), ("1-2", 2))])
    assert find_self_returning(D) == [(A, 0)]
    assert innermost(D) == (A, 0)
    D = gen(K1, {"1-2": 4}, [(A, ("1-2", 1), ("1-2", 4)), (A, ("1-2", 2), ("1-2", 3))])
    assert [i for _, i in find_self_returning(D)] == [0, 1]
    assert D.arcs[innermost(D)[1]].ends == (((1, 2), 2), ((1, 2), 3))
    D = gen(K1, {"1-2": 4}, [(A, ("1-2", 3), ("1-2", 4)), (A, ("1-2", 1), ("1-2", 2))])
    assert D.arcs[innermost(D)[1]].ends == (((1, 2), 1), ((1, 2), 2))


def test_push_splice(K2):
    D = gen(K2, {"2-3": 2, "2-4": 1, "3-4": 1},
            [(A, ("2-3", 1), ("2-3", 2)), (B, ("2-3", 1), ("2-4", 1)), (B, ("2-3", 2), ("3-4", 1))])
    out, move = push_move(D, A, 0)
    assert move.kind == "splice" and out.counts[(2, 3)] == 0
    assert [a.ends for a in out.arcs] == [(((2, 4), 1), ((3, 4), 1))]
    assert move.crossings_before - move.crossings_after == 2


def test_push_return(K2):
    D = gen(K2, {"2-3": 2, "2-4": 2},
            [(A, ("2-3", 1), ("2-3", 2)), (B, ("2-3", 1), ("2-4", 1)), (B, ("2-3", 2), ("2-4", 2))])
    out, move = push_move(D, A, 0)
    assert move.kind == "return"
    assert [(a.face, a.ends) for a in out.arcs] == [(B, (((2, 4), 1), ((2, 4), 2)))]


def test_push_closed(K2, caplog):
    D = gen(K2, {"2-3": 2}, [(A, ("2-3", 1), ("2-3", 2)), (B, ("2-3", 1), ("2-3", 2))])
    out, move = push_move(D, A, 0)
    assert move.kind == "closed" and not out.arcs
    res = normalize(D)
    assert res.empty and res.closed_loops == 1 and res.pattern.tracks == ()
    assert "empty" in caplog.text


def test_push_errors(K1):
    D = gen(K1, {"1-2": 2}, [(A, ("1-2", 1), ("1-2", 2))])
    with pytest.raises(BoundaryReturn):
        push_move(D, A, 0)
    with pytest.raises(BoundaryReturn):
        normalize(D)
    D = gen(K1, {"1-2": 4}, [(A, ("1-2", 1), ("1-2", 4)), (A, ("1-2", 2), ("1-2", 3))])
    with pytest.raises(NotInnermost):
        push_move(D, A, 0)
    K3 = complex_from_faces([(1, 2, 3), (1, 2, 4), (1, 2, 5)])
    D = gen(K3, {"1-2": 2}, [((1, 2, 3), ("1-2", 1), ("1-2", 2)),
                             ((1, 2, 4), ("1-2", 1), ("1-2", 2)),
                             ((1, 2, 5), ("1-2", 1), ("1-2", 2))])
    with pytest.raises(NonManifoldEdge):
        push_move(D, (1, 2, 3), 0)


def test_index_shift(K2):
    # the crossing point above the deleted pair moves down by two
    D = gen(K2, {"2-3": 3, "1-3": 1, "2-4": 1, "3-4": 2},
            [(A, ("2-3", 1), ("2-3", 2)), (A, ("2-3", 3), ("1-3", 1)),
             (B, ("2-3", 1), ("3-4", 2)), (B, ("2-3", 2), ("3-4", 1)),
             (B, ("2-3", 3), ("2-4", 1))])
    out, move = push_move(D, A, 0)
    assert out.counts[(2, 3)] == 1
    ends = sorted(a.ends for a in out.arcs)
    assert (((1, 3), 1), ((2, 3), 1)) in ends
    assert (((2, 3), 1), ((2, 4), 1)) in ends


def test_normalize_examples(K2):
    strict = drawing(K2, {"1-2": 1, "2-3": 1, "2-4": 1},
                     [(A, ("1-2", 1), ("2-3", 1)), (B, ("2-3", 1), ("2-4", 1))])
    res = normalize(strict)
    assert res.moves == [] and res.pattern.drawing.arcs == strict.arcs
    D = gen(K2, {"2-3": 2, "2-4": 1, "3-4": 1},
            [(A, ("2-3", 1), ("2-3", 2)), (B, ("2-3", 1), ("2-4", 1)), (B, ("2-3", 2), ("3-4", 1))])
    res = normalize(D)
    assert len(res.moves) == 1 and len(res.pattern.tracks) == 1
    assert not res.pattern.drawing.generalized


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_generated_normalization(idx):
    D, base = generalized_instance(instance_rng(43, idx))
    res = normalize(D)
    assert 2 * len(res.moves) == res.initial_crossings - res.final_crossings
    assert len(res.moves) <= D.total_crossings // 2
    assert all(m.crossings_before - m.crossings_after == 2 for m in res.moves)
    out = res.pattern.drawing
    validate_drawing(out.complex, out.counts, out.arcs, allow_empty=True)
    assert all(a >= b for a, b in zip(res.cliques, res.cliques[1:]))
