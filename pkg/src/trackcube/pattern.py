"""Drawings, pre-tracks, tracks and d-patterns on a 2-complex.

An arc lives in one face and joins two crossing points.  A crossing point is
``(edge, index)`` with ``1 <= index <= c(edge)``; the index counts from the
edge's canonical start (its smaller vertex) and is shared by every face that
contains the edge.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .cliques import DEFAULT_BUDGET, max_clique
from .complex import Edge, Face, SimplicialComplex2, face_edges, validate_complex
from .errors import (AxiomViolation, DanglingEdge, NonEmptyRequired, NotATrack,
                     PreconditionH1)

Point = tuple[Edge, int]


@dataclass(frozen=True, order=True)
class Arc:
    face: Face
    ends: tuple[Point, Point]

    @staticmethod
    def make(face, p: Point, q: Point) -> "Arc":
        face = tuple(sorted(face))
        p = (tuple(p[0]), int(p[1]))
        q = (tuple(q[0]), int(q[1]))
        return Arc(face, (p, q) if p <= q else (q, p))

    @property
    def self_returning(self) -> bool:
        return self.ends[0][0] == self.ends[1][0]

    def other_end(self, p: Point) -> Point:
        return self.ends[1] if self.ends[0] == p else self.ends[0]


def boundary_position(face: Face, p: Point) -> tuple[int, int]:
    """Sort key of a crossing point along the boundary walk a -> b -> c -> a."""
    e, i = p
    ab, bc, ac = face_edges(face)
    if e == ab:
        return (0, i)
    if e == bc:
        return (1, i)
    if e == ac:
        # the walk runs c -> a, against the canonical orientation of ac
        return (2, -i)
    raise ValueError(f"point {p} is not on face {face}")


def arcs_cross(face: Face, a1: Arc, a2: Arc) -> bool:
    """True iff the endpoints of the two arcs interleave around the face."""
    p1, p2 = sorted(boundary_position(face, p) for p in a1.ends)
    q1, q2 = sorted(boundary_position(face, q) for q in a2.ends)
    if len({p1, p2, q1, q2}) < 4:
        return False
    return (p1 < q1 < p2) != (p1 < q2 < p2)


@dataclass(frozen=True)
class Drawing:
    complex: SimplicialComplex2 = field(repr=False)
    counts: Mapping[Edge, int]
    arcs: tuple[Arc, ...]
    generalized: bool = False

    @cached_property
    def arcs_by_face(self) -> dict[Face, list[int]]:
        out: dict[Face, list[int]] = defaultdict(list)
        for i, a in enumerate(self.arcs):
            out[a.face].append(i)
        return dict(out)

    @cached_property
    def arcs_at_point(self) -> dict[Point, list[int]]:
        out: dict[Point, list[int]] = defaultdict(list)
        for i, a in enumerate(self.arcs):
            for p in a.ends:
                out[p].append(i)
        return dict(out)

    @property
    def total_crossings(self) -> int:
        return sum(self.counts.values())

    def count(self, e: Edge) -> int:
        return self.counts.get(e, 0)


def validate_drawing(K: SimplicialComplex2, counts: Mapping[Edge, int],
                     arcs: Iterable[Arc], *, generalized: bool = False,
                     allow_empty: bool = False) -> Drawing:
    """Check the drawing axioms and return a Drawing.

    Axiom (2) (endpoints on distinct edges) is skipped for generalized
    drawings.  Referencing an edge outside the arc's face or an index
    outside ``1..c(e)`` is reported as axiom (3), which the encoding
    otherwise makes structural.
    """
    K = validate_complex(K)
    if not K.is_pure:
        raise DanglingEdge("pattern operations need a pure complex")
    full_counts: dict[Edge, int] = {e: 0 for e in K.edges}
    for e, c in counts.items():
        e = tuple(e)
        if e not in full_counts:
            raise AxiomViolation(3, e, "crossing count on an edge not in the complex")
        if int(c) < 0:
            raise AxiomViolation(1, e, "negative crossing count")
        full_counts[e] = int(c)
    arcs = tuple(arcs)
    if not arcs and not allow_empty:
        raise NonEmptyRequired("a drawing is a non-empty union of arcs")

    faces = set(K.faces)
    used: dict[tuple[Face, Point], int] = {}
    for idx, a in enumerate(arcs):
        if a.face not in faces:
            raise AxiomViolation(3, a.face, "arc on a face not in the complex")
        fe = face_edges(a.face)
        for e, i in a.ends:
            if e not in fe:
                raise AxiomViolation(3, (a.face, (e, i)), "endpoint not on an edge of its face")
            if not 1 <= i <= full_counts[e]:
                raise AxiomViolation(3, (a.face, (e, i)), f"index outside 1..{full_counts[e]}")
        if a.ends[0] == a.ends[1]:
            raise AxiomViolation(4, (a.face, a.ends[0]), "arc with coincident endpoints")
        if a.self_returning and not generalized:
            raise AxiomViolation(2, (a.face, a.ends), "both endpoints on one edge")
        for p in a.ends:
            key = (a.face, p)
            if key in used:
                raise AxiomViolation(4, key, f"arcs {used[key]} and {idx} share an endpoint")
            used[key] = idx

    for e in K.edges:
        for i in range(1, full_counts[e] + 1):
            for f in K.edge_faces[e]:
                if (f, (e, i)) not in used:
                    raise AxiomViolation(5, (f, (e, i)), "crossing point without an arc in this face")
    return Drawing(K, full_counts, arcs, generalized)


def _components(D: Drawing, arc_ids: Sequence[int]) -> list[list[int]]:
    parent = {i: i for i in arc_ids}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p, ids in D.arcs_at_point.items():
        ids = [i for i in ids if i in parent]
        for j in ids[1:]:
            ri, rj = find(ids[0]), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = defaultdict(list)
    for i in arc_ids:
        groups[find(i)].append(i)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def split_into_pretracks(K: SimplicialComplex2, D: Drawing) -> list[tuple[int, ...]]:
    """Connected components of the arcs, joined through shared crossing points."""
    if not D.arcs:
        raise NonEmptyRequired("cannot split an empty drawing")
    return [tuple(g) for g in _components(D, range(len(D.arcs)))]


def _require_h1(K: SimplicialComplex2) -> None:
    if K.h1_z2 != 0:
        raise PreconditionH1(f"H^1(K; Z/2) has dimension {K.h1_z2}")


def self_crossings(D: Drawing, arc_ids: Iterable[int]) -> list[tuple[int, int]]:
    by_face: dict[Face, list[int]] = defaultdict(list)
    for i in arc_ids:
        by_face[D.arcs[i].face].append(i)
    bad = []
    for f, ids in sorted(by_face.items()):
        for i, j in combinations(ids, 2):
            if arcs_cross(f, D.arcs[i], D.arcs[j]):
                bad.append((i, j))
    return bad


def is_track(K: SimplicialComplex2, D: Drawing, pretrack: Iterable[int]) -> bool:
    """A pre-track is a track iff none of its arcs cross (K its own cover)."""
    _require_h1(K)
    return not self_crossings(D, pretrack)


@dataclass(frozen=True)
class Pattern:
    drawing: Drawing
    tracks: tuple[tuple[int, ...], ...]

    @property
    def complex(self) -> SimplicialComplex2:
        return self.drawing.complex

    @cached_property
    def track_of_arc(self) -> dict[int, int]:
        return {a: t for t, arcs in enumerate(self.tracks) for a in arcs}

    @cached_property
    def crossing_pairs(self) -> frozenset[tuple[int, int]]:
        D = self.drawing
        owner = self.track_of_arc
        out = set()
        for f, ids in D.arcs_by_face.items():
            for i, j in combinations(ids, 2):
                s, t = owner[i], owner[j]
                if s != t and arcs_cross(f, D.arcs[i], D.arcs[j]):
                    out.add((min(s, t), max(s, t)))
        return frozenset(out)

    @cached_property
    def crossing_graph(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in self.tracks]
        for s, t in self.crossing_pairs:
            adj[s].add(t)
            adj[t].add(s)
        return adj

    def tracks_cross(self, s: int, t: int) -> bool:
        return (min(s, t), max(s, t)) in self.crossing_pairs

    def __len__(self) -> int:
        return len(self.tracks)


def make_pattern(K: SimplicialComplex2, D: Drawing,
                 tracks: Sequence[Sequence[int]] | None = None,
                 check_tracks: bool = True) -> Pattern:
    """Group a drawing into tracks, splitting automatically when not given.

    Supplied tracks must coincide with the pre-track components (a pre-track
    is a minimal drawing); their order is kept.
    """
    if not D.arcs:
        return Pattern(D, ())
    comps = split_into_pretracks(K, D)
    if tracks is None:
        tracks = comps
    else:
        tracks = [tuple(sorted(int(a) for a in t)) for t in tracks]
        if sorted(tracks) != sorted(comps):
            raise NotATrack("given tracks are not the connected components of the drawing")
    if check_tracks:
        _require_h1(K)
        for t, arcs in enumerate(tracks):
            bad = self_crossings(D, arcs)
            if bad:
                raise NotATrack(f"track {t} is self-intersecting at arcs {bad[0]}")
    return Pattern(D, tuple(tuple(t) for t in tracks))


def max_pairwise_crossing(P: Pattern, budget: int = DEFAULT_BUDGET) -> int:
    """Size of a largest family of pairwise crossing tracks."""
    if not P.tracks:
        return 0
    return len(max_clique(P.crossing_graph, budget))


def is_d_pattern(P: Pattern, d: int, budget: int = DEFAULT_BUDGET) -> bool:
    return max_pairwise_crossing(P, budget) <= d
