import json

import pytest
from hypothesis import given, settings, strategies as st

from conftest import GOLDEN
from resolution_cases import build, snapshot
from trackcube import resolution
from trackcube.complex import complex_from_faces, seven_vertex_torus
from trackcube.dual import dimension, dual_complex
from trackcube.errors import InputError, ParityViolation, PreconditionH1
from trackcube.generate import instance_rng, random_disk, random_pocset, random_vertex_map
from trackcube.pattern import max_pairwise_crossing
from trackcube.pocset import validate_pocset
from trackcube.resolution import (check_resolution, edge_crossing_order, parse_vertex_map,
                                  pullback_pattern, resolve)

K1 = complex_from_faces([(1, 2, 3)])


def test_edge_orders():
    X = dual_complex(validate_pocset(2))
    v00, v11 = X.vertex_index([0, 0]), X.vertex_index([1, 1])
    assert edge_crossing_order(X, (1, 2), {1: v00, 2: v00}) == []
    assert edge_crossing_order(X, (1, 2), {1: v00, 2: v11}) == [0, 1]
    Y = dual_complex(validate_pocset(2, [(0, 2)]))
    bottom, top = Y.vertex_index([0, 0]), Y.vertex_index([1, 1])
    assert edge_crossing_order(Y, (1, 2), {1: bottom, 2: top}) == [0, 1]
    assert edge_crossing_order(Y, (1, 2), {1: top, 2: bottom}) == [1, 0]


def test_constant_map_gives_empty_pattern(caplog):
    X = dual_complex(validate_pocset(2))
    R = resolve(K1, X, {1: 2, 2: 2, 3: 2})
    assert R.pattern.tracks == ()
    assert "empty" in caplog.text
    assert R.fine.V == 1 and R.F == (2,)
    assert check_resolution(R)["pass"]


def test_square_pullback():
    R, rep = build("square")
    P = R.pattern
    assert len(P.tracks) == 2 and P.tracks_cross(0, 1)
    assert sorted(R.pullback.track_hyperplane) == [0, 1]
    assert max_pairwise_crossing(P) == 2
    assert R.fine.V == 4 and dimension(R.fine) == 2
    assert sorted(R.F) == [0, 1, 2, 3]
    assert rep["pass"] and rep["regions"] == rep["fine_vertices"] == 4
    # the two tracks cut off vertex 2 alike, so they form one parallelism class
    c = R.complement.coarse
    assert {c[0][0].vertices, c[0][1].vertices} == {frozenset([1, 3]), frozenset([2])}
    assert {c[1][0].vertices, c[1][1].vertices} == {frozenset([1, 3]), frozenset([2])}
    assert rep["parallelism_classes"] == 1


def test_nested_pullback():
    R, rep = build("nested")
    P = R.pattern
    assert len(P.tracks) == 2 and not P.crossing_pairs
    assert R.fine.V == 3 and len(R.fine.edges) == 2
    assert sorted(R.F) == [0, 1, 2]
    for i, j, _ in R.fine.edges:
        assert (R.target.vertices[R.F[i]] != R.target.vertices[R.F[j]]).sum() == 1
    assert rep["pass"] and rep["regions"] == rep["fine_vertices"] == 3
    assert rep["parallelism_classes"] == 1


@pytest.mark.parametrize("name", ["square", "nested"])
def test_golden(name):
    want = json.loads((GOLDEN / f"{name}_pullback.json").read_text())
    got = json.loads(json.dumps(snapshot(name)))
    assert got == want


def test_vertex_map_parsing():
    X = dual_complex(validate_pocset(2))
    assert parse_vertex_map(K1, X, {"1": "00", "2": [1, 1], "3": 0}) == {
        1: X.vertex_index([0, 0]), 2: X.vertex_index([1, 1]), 3: 0}
    with pytest.raises(InputError):
        parse_vertex_map(K1, X, {"1": 0, "2": 0})
    with pytest.raises(InputError):
        parse_vertex_map(K1, X, {"1": 0, "2": 0, "3": 9})
    Y = dual_complex(validate_pocset(2, [(0, 2)]))
    with pytest.raises(InputError):
        parse_vertex_map(K1, Y, {"1": "01", "2": 0, "3": 0})


def test_preconditions(monkeypatch):
    T = seven_vertex_torus()
    X = dual_complex(validate_pocset(1))
    with pytest.raises(PreconditionH1):
        pullback_pattern(T, X, {v: 0 for v in T.vertices})
    # corrupted separation sets break the parity rule
    monkeypatch.setattr(resolution, "edge_separation",
                        lambda X, f, e: [0] if e == (1, 2) else [])
    with pytest.raises(ParityViolation):
        pullback_pattern(K1, X, {1: 0, 2: 0, 3: 0})


def random_triple(idx, seed=41):
    rng = instance_rng(seed, idx)
    K = random_disk(int(rng.integers(1, 21)), rng)
    X = dual_complex(random_pocset(int(rng.integers(1, 8)), rng, max_width=2))
    return K, X, random_vertex_map(K, X, rng)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_generated_resolutions(idx):
    K, X, f = random_triple(idx)
    R = resolve(K, X, f)
    rep = check_resolution(R)
    c = rep["checks"]
    for name in ("d_pattern", "edges_to_edges", "minimal_preimage_independent",
                 "dimension_bound", "crossing_consistent", "vertex_images",
                 "halfspace_map_consistent", "principal"):
        assert c[name], name
    assert rep["max_pairwise_crossing"] <= dimension(X)
    # each track belongs to the hyperplane whose separation created its arcs
    pb = R.pullback
    for t, arcs in enumerate(R.pattern.tracks):
        assert {pb.arc_hyperplane[a] for a in arcs} == {pb.track_hyperplane[t]}
    # F after Phi sends the coarse image of a vertex back to f(vertex)
    for v in K.vertices:
        assert R.F[R.Phi[R.coarse_vertex[v]]] == f[v]


def test_pullback_is_deterministic():
    a = resolve(*random_triple(5)).pattern.drawing.arcs
    b = resolve(*random_triple(5)).pattern.drawing.arcs
    assert a == b
