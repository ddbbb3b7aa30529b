from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import F, drawing
from trackcube.cliques import max_clique
from trackcube.complex import complex_from_faces, face_edges, seven_vertex_torus
from trackcube.errors import (AxiomViolation, InstanceTooLarge, NonEmptyRequired, NotATrack,
                              PreconditionH1)
from trackcube.generate import instance_rng, random_two_pattern
from trackcube.pattern import (Arc, arcs_cross, is_d_pattern, is_track, make_pattern,
                               max_pairwise_crossing, split_into_pretracks)
from trackcube.regions import point_coords, segments_intersect


def fan3():
    return complex_from_faces([(0, 1, 2), (0, 2, 3), (0, 1, 3)])


def self_crossing_drawing():
    # one pre-track entering face 012 twice, the two passes crossing
    K = fan3()
    return K, drawing(K, {"0-1": 1, "1-2": 2, "0-2": 1, "0-3": 1},
                      [((0, 1, 2), ("0-1", 1), ("1-2", 2)), ((0, 1, 2), ("1-2", 1), ("0-2", 1)),
                       ((0, 1, 3), ("0-1", 1), ("0-3", 1)), ((0, 2, 3), ("0-3", 1), ("0-2", 1))])


def test_single_corner_arc(K1):
    D = drawing(K1, {"1-2": 1, "1-3": 1}, [(F, ("1-2", 1), ("1-3", 1))])
    assert len(D.arcs) == 1 and D.total_crossings == 2


def test_shared_endpoint_is_axiom4(K1):
    with pytest.raises(AxiomViolation) as exc:
        drawing(K1, {"1-2": 1, "1-3": 1, "2-3": 1},
                [(F, ("1-2", 1), ("1-3", 1)), (F, ("1-2", 1), ("2-3", 1))])
    assert exc.value.axiom == 4


def test_unmatched_point_is_axiom5(K2):
    with pytest.raises(AxiomViolation) as exc:
        drawing(K2, {"1-2": 1, "2-3": 1}, [((1, 2, 3), ("1-2", 1), ("2-3", 1))])
    assert exc.value.axiom == 5


def test_same_edge_is_axiom2(K2):
    arcs = [((1, 2, 3), ("2-3", 1), ("2-3", 2)), ((2, 3, 4), ("2-3", 1), ("2-4", 1)),
            ((2, 3, 4), ("2-3", 2), ("2-4", 2))]
    with pytest.raises(AxiomViolation) as exc:
        drawing(K2, {"2-3": 2, "2-4": 2}, arcs)
    assert exc.value.axiom == 2
    assert drawing(K2, {"2-3": 2, "2-4": 2}, arcs, generalized=True).generalized


def test_empty_drawing(K1):
    with pytest.raises(NonEmptyRequired):
        drawing(K1, {}, [])
    D = drawing(K1, {}, [], allow_empty=True)
    with pytest.raises(NonEmptyRequired):
        split_into_pretracks(K1, D)
    assert make_pattern(K1, D).tracks == ()


def test_pretracks(K1, K2):
    D = drawing(K1, {"1-2": 2, "1-3": 2},
                [(F, ("1-2", 1), ("1-3", 1)), (F, ("1-2", 2), ("1-3", 2))])
    assert split_into_pretracks(K1, D) == [(0,), (1,)]
    D = drawing(K2, {"1-2": 1, "2-3": 1, "2-4": 1},
                [((1, 2, 3), ("1-2", 1), ("2-3", 1)), ((2, 3, 4), ("2-3", 1), ("2-4", 1))])
    assert split_into_pretracks(K2, D) == [(0, 1)]
    assert is_track(K2, D, (0, 1))


def test_self_crossing_pretrack():
    K, D = self_crossing_drawing()
    assert split_into_pretracks(K, D) == [(0, 1, 2, 3)]
    assert not is_track(K, D, (0, 1, 2, 3))
    # the chord oracle agrees on the offending pair
    a, b = D.arcs[0], D.arcs[1]
    pa = [point_coords(a.face, p, D.counts) for p in a.ends]
    pb = [point_coords(b.face, p, D.counts) for p in b.ends]
    assert segments_intersect(*pa, *pb)
    with pytest.raises(NotATrack):
        make_pattern(K, D)


def test_is_track_needs_h1():
    # the precondition is checked before the drawing is looked at
    with pytest.raises(PreconditionH1):
        is_track(seven_vertex_torus(), None, ())


def test_arcs_cross_examples(K1):
    mk = lambda p, q: Arc.make(F, p, q)
    assert arcs_cross(F, mk(((1, 2), 2), ((1, 3), 1)), mk(((1, 2), 1), ((2, 3), 1)))
    assert not arcs_cross(F, mk(((1, 2), 1), ((1, 3), 1)), mk(((1, 2), 2), ((1, 3), 2)))
    assert not arcs_cross(F, mk(((1, 2), 1), ((1, 3), 1)), mk(((1, 2), 2), ((2, 3), 1)))


def all_arcs(face, counts):
    pts = [(e, i) for e in face_edges(face) for i in range(1, counts[e] + 1)]
    return [Arc.make(face, p, q) for p, q in combinations(pts, 2)]


@settings(max_examples=60)
@given(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)))
def test_arcs_cross_matches_chords(cs):
    counts = dict(zip(face_edges(F), cs))
    arcs = all_arcs(F, counts)
    for a, b in combinations(arcs, 2):
        if set(a.ends) & set(b.ends):
            continue
        pa = [point_coords(F, p, counts) for p in a.ends]
        pb = [point_coords(F, p, counts) for p in b.ends]
        assert arcs_cross(F, a, b) == segments_intersect(*pa, *pb)


def test_max_pairwise(K1, crossing_arcs, three_corners):
    assert max_pairwise_crossing(crossing_arcs) == 2
    assert is_d_pattern(crossing_arcs, 2) and not is_d_pattern(crossing_arcs, 1)
    assert max_pairwise_crossing(three_corners) == 1


def test_clique_budget(crossing_arcs):
    with pytest.raises(InstanceTooLarge):
        max_pairwise_crossing(crossing_arcs, budget=0)


def test_supplied_tracks_must_be_components(K1):
    D = drawing(K1, {"1-2": 2, "1-3": 2},
                [(F, ("1-2", 1), ("1-3", 1)), (F, ("1-2", 2), ("1-3", 2))])
    assert make_pattern(K1, D, [[1], [0]]).tracks == ((1,), (0,))
    with pytest.raises(NotATrack):
        make_pattern(K1, D, [[0, 1]])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_generated_pretracks_satisfy_axioms(idx):
    inst = random_two_pattern(instance_rng(17, idx))
    P = inst.pattern
    D = P.drawing
    K = inst.complex
    arcs = [a for a in D.arcs]
    assert sorted(a for t in P.tracks for a in t) == list(range(len(arcs)))
    for t in P.tracks:
        sub = [arcs[i] for i in t]
        # restricted to the component, every used point is matched in each face of its edge
        used = {(a.face, p) for a in sub for p in a.ends}
        for a in sub:
            for e, i in a.ends:
                for f in K.edge_faces[e]:
                    assert (f, (e, i)) in used
    assert max_pairwise_crossing(P) <= 2


def test_crossing_graph_matches_networkx():
    import networkx as nx
    rng = np.random.default_rng(5)
    for _ in range(60):
        n = int(rng.integers(1, 14))
        adj = [set() for _ in range(n)]
        G = nx.Graph()
        G.add_nodes_from(range(n))
        for i, j in combinations(range(n), 2):
            if rng.random() < 0.5:
                adj[i].add(j)
                adj[j].add(i)
                G.add_edge(i, j)
        best = max(len(c) for c in nx.find_cliques(G))
        got = max_clique(adj)
        assert len(got) == best
        assert all(j in adj[i] for i, j in combinations(got, 2))
