"""Regions of a pattern and the fine/coarse halfspaces of its tracks.

Every face is modelled by the triangle (0,0), (1,0), (0,1) with its sorted
vertices in that order.  A crossing point ``(e, i)`` sits at parameter
``i / (c(e) + 1)`` from the canonical start of ``e`` and every arc is the
straight chord between its endpoints.  Since a chord spans the whole triangle
the pieces of a face are obtained by cutting convex polygons with the chord
lines one after the other, in exact rational arithmetic.  An affine image of
the equilateral triangle gives the same combinatorics.

Pieces are glued across an edge when they touch the same slot (the open
segment between consecutive crossing points), and around a vertex when they
contain it as a corner.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import floor
from typing import Mapping

from .complex import Edge, Face, SimplicialComplex2, face_edges
from .errors import (DegenerateArrangement, NotTwoSided, PreconditionH1,
                     VertexInessentialTrack)
from .pattern import Arc, Pattern, Point, arcs_cross

Vec = tuple[Fraction, Fraction]
_CORNERS: tuple[Vec, Vec, Vec] = (
    (Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


def corner_coords(face: Face, v: int) -> Vec:
    return _CORNERS[face.index(v)]


def point_coords(face: Face, p: Point, counts: Mapping[Edge, int]) -> Vec:
    (u, v), i = p
    pu, pv = corner_coords(face, u), corner_coords(face, v)
    t = Fraction(i, counts[(u, v)] + 1)
    return (pu[0] + t * (pv[0] - pu[0]), pu[1] + t * (pv[1] - pu[1]))


def segments_intersect(p1: Vec, p2: Vec, q1: Vec, q2: Vec) -> bool:
    """Exact closed-segment intersection test (used as an independent oracle)."""
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (v > 0) - (v < 0)

    def on_seg(a, b, c):
        return (min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= c[1] <= max(a[1], b[1]))

    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    return ((o1 == 0 and on_seg(p1, p2, q1)) or (o2 == 0 and on_seg(p1, p2, q2))
            or (o3 == 0 and on_seg(q1, q2, p1)) or (o4 == 0 and on_seg(q1, q2, p2)))


def _cut(poly, labels, P: Vec, Q: Vec, arc: int):
    dx, dy = Q[0] - P[0], Q[1] - P[1]
    s = [dx * (v[1] - P[1]) - dy * (v[0] - P[0]) for v in poly]
    if any(x == 0 for x in s):
        raise DegenerateArrangement(f"chord of arc {arc} passes through an existing crossing")
    if all(x > 0 for x in s) or all(x < 0 for x in s):
        return None
    n = len(poly)
    sides = []
    for sign in (1, -1):
        out_v, out_l = [], []
        for k in range(n):
            v, w = poly[k], poly[(k + 1) % n]
            sv, sw = s[k], s[(k + 1) % n]
            inside = sign * sv > 0
            if inside:
                out_v.append(v)
                out_l.append(labels[k])
            if (sv > 0) != (sw > 0):
                t = sv / (sv - sw)
                x = (v[0] + t * (w[0] - v[0]), v[1] + t * (w[1] - v[1]))
                out_v.append(x)
                out_l.append(("arc", arc) if inside else labels[k])
        sides.append((out_v, out_l))
    return sides


@dataclass(frozen=True)
class Piece:
    id: int
    face: Face
    polygon: tuple[Vec, ...]
    corners: frozenset[int]
    slots: tuple[tuple[Edge, int], ...]
    arc_segments: tuple[tuple[int, Fraction, Fraction], ...]


def face_pieces(face: Face, arcs: list[tuple[int, Arc]], counts: Mapping[Edge, int],
                first_id: int = 0) -> list[Piece]:
    """Pieces of one face cut by the chords of the given (index, arc) pairs."""
    ab, bc, ac = face_edges(face)
    polys = [(list(_CORNERS), [("side", ab), ("side", bc), ("side", ac)])]
    chords = {}
    for idx, a in arcs:
        P, Q = (point_coords(face, p, counts) for p in a.ends)
        chords[idx] = (P, Q)
        nxt = []
        for poly, lab in polys:
            res = _cut(poly, lab, P, Q, idx)
            if res is None:
                nxt.append((poly, lab))
            else:
                nxt.extend(res)
        polys = nxt

    pieces = []
    for k, (poly, lab) in enumerate(polys):
        corners = frozenset(face[c] for c in range(3) if _CORNERS[c] in poly)
        slots, segs = [], []
        n = len(poly)
        for j in range(n):
            v, w = poly[j], poly[(j + 1) % n]
            kind, key = lab[j]
            if kind == "side":
                u, x = key
                pu, px = corner_coords(face, u), corner_coords(face, x)
                mid = ((v[0] + w[0]) / 2, (v[1] + w[1]) / 2)
                d = (px[0] - pu[0], px[1] - pu[1])
                t = ((mid[0] - pu[0]) * d[0] + (mid[1] - pu[1]) * d[1]) / (d[0] ** 2 + d[1] ** 2)
                slots.append((key, floor(t * (counts[key] + 1))))
            else:
                P, Q = chords[key]
                d = (Q[0] - P[0], Q[1] - P[1])
                norm = d[0] ** 2 + d[1] ** 2
                sv = ((v[0] - P[0]) * d[0] + (v[1] - P[1]) * d[1]) / norm
                sw = ((w[0] - P[0]) * d[0] + (w[1] - P[1]) * d[1]) / norm
                segs.append((key, min(sv, sw), max(sv, sw)))
        pieces.append(Piece(first_id + k, face, tuple(poly), corners, tuple(slots), tuple(segs)))
    return pieces


@dataclass(frozen=True)
class Region:
    id: int
    pieces: tuple[int, ...]
    vertices: frozenset[int]


@dataclass(frozen=True)
class FineHalfspace:
    track: int
    side: int
    regions: frozenset[int]


@dataclass(frozen=True)
class CoarseHalfspace:
    tracks: tuple[int, ...]
    side: int
    vertices: frozenset[int]


class _DSU:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, i):
        p = self.p
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.p[max(ri, rj)] = min(ri, rj)


class PatternComplement:
    """Pieces, regions and halfspaces of a pattern, computed lazily."""

    def __init__(self, P: Pattern):
        self.pattern = P
        self.complex: SimplicialComplex2 = P.complex

    @cached_property
    def pieces(self) -> list[Piece]:
        D = self.pattern.drawing
        out: list[Piece] = []
        for f in self.complex.faces:
            arcs = [(i, D.arcs[i]) for i in D.arcs_by_face.get(f, [])]
            out.extend(face_pieces(f, arcs, D.counts, len(out)))
        return out

    @cached_property
    def _regions_and_adjacency(self):
        K = self.complex
        pieces = self.pieces
        dsu = _DSU(len(pieces))
        by_slot: dict[tuple[Edge, int], list[int]] = defaultdict(list)
        by_corner: dict[int, list[int]] = defaultdict(list)
        by_seg: dict[tuple[int, Fraction, Fraction], list[int]] = defaultdict(list)
        for pc in pieces:
            for s in pc.slots:
                by_slot[s].append(pc.id)
            for v in pc.corners:
                by_corner[v].append(pc.id)
            for seg in pc.arc_segments:
                by_seg[seg].append(pc.id)
        for group in list(by_slot.values()) + list(by_corner.values()):
            for j in group[1:]:
                dsu.union(group[0], j)
        for seg, group in by_seg.items():
            if len(group) != 2:
                raise DegenerateArrangement(f"arc segment {seg} bounds {len(group)} pieces")

        comps: dict[int, list[int]] = defaultdict(list)
        for pc in pieces:
            comps[dsu.find(pc.id)].append(pc.id)
        ordered = sorted(comps.values(), key=lambda g: g[0])
        piece_region = {}
        regions = []
        for rid, group in enumerate(ordered):
            verts = frozenset(v for i in group for v in pieces[i].corners)
            regions.append(Region(rid, tuple(group), verts))
            for i in group:
                piece_region[i] = rid
        for v in K.vertices:
            if not K.vertex_faces[v]:
                regions.append(Region(len(regions), (), frozenset([v])))

        owner = self.pattern.track_of_arc
        adjacency = []
        for (arc, _, _), (p, q) in sorted(by_seg.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            adjacency.append((piece_region[p], piece_region[q], arc, owner[arc]))
        return regions, piece_region, adjacency

    @property
    def regions(self) -> list[Region]:
        return self._regions_and_adjacency[0]

    @property
    def piece_region(self) -> dict[int, int]:
        return self._regions_and_adjacency[1]

    @property
    def adjacency(self) -> list[tuple[int, int, int, int]]:
        """(region, region, arc, track) for every chord segment."""
        return self._regions_and_adjacency[2]

    @cached_property
    def vertex_region(self) -> dict[int, int]:
        return {v: r.id for r in self.regions for v in r.vertices}

    @cached_property
    def fine(self) -> dict[int, tuple[FineHalfspace, FineHalfspace]]:
        if self.complex.h1_z2 != 0:
            raise PreconditionH1(f"H^1(K; Z/2) has dimension {self.complex.h1_z2}")
        nreg = len(self.regions)
        out = {}
        for t in range(len(self.pattern.tracks)):
            dsu = _DSU(nreg)
            for r1, r2, _, owner in self.adjacency:
                if owner != t:
                    dsu.union(r1, r2)
            comps: dict[int, set[int]] = defaultdict(set)
            for r in range(nreg):
                comps[dsu.find(r)].add(r)
            if len(comps) != 2:
                raise NotTwoSided(f"complement of track {t} has {len(comps)} components")
            a, b = sorted(comps.values(), key=min)
            out[t] = (FineHalfspace(t, 0, frozenset(a)), FineHalfspace(t, 1, frozenset(b)))
        return out

    @cached_property
    def _coarse(self):
        regions = self.regions
        sides = {}
        inessential = []
        for t, (h0, h1) in self.fine.items():
            v0 = frozenset(v for r in h0.regions for v in regions[r].vertices)
            v1 = frozenset(v for r in h1.regions for v in regions[r].vertices)
            if not v0 or not v1:
                inessential.append(t)
                continue
            sides[t] = (CoarseHalfspace((t,), 0, v0), CoarseHalfspace((t,), 1, v1))
        return sides, tuple(inessential)

    @property
    def coarse(self) -> dict[int, tuple[CoarseHalfspace, CoarseHalfspace]]:
        return self._coarse[0]

    @property
    def inessential(self) -> tuple[int, ...]:
        return self._coarse[1]

    @cached_property
    def parallelism_classes(self) -> list[tuple[int, ...]]:
        groups: dict[frozenset, list[int]] = {}
        for t, (c0, c1) in self.coarse.items():
            groups.setdefault(frozenset([c0.vertices, c1.vertices]), []).append(t)
        return [tuple(g) for g in groups.values()]

    def principal_ultrafilter(self, region: int) -> dict[int, int]:
        return {t: (0 if region in h0.regions else 1) for t, (h0, _) in self.fine.items()}


def regions(K: SimplicialComplex2, P: Pattern) -> list[Region]:
    return PatternComplement(P).regions


def fine_halfspaces(K: SimplicialComplex2, P: Pattern):
    return PatternComplement(P).fine


def coarse_halfspaces(K: SimplicialComplex2, P: Pattern, strict: bool = False):
    """Coarse halfspace pairs of the vertex-essential tracks.

    Vertex-inessential tracks are left out of the result; with
    ``strict=True`` the first one raises VertexInessentialTrack instead.
    """
    pc = PatternComplement(P)
    if strict and pc.inessential:
        raise VertexInessentialTrack(f"tracks {list(pc.inessential)} have a side without vertices")
    return pc.coarse


def parallelism_classes(P: Pattern) -> list[tuple[int, ...]]:
    return PatternComplement(P).parallelism_classes


def principal_ultrafilter(P: Pattern, region: int) -> dict[int, int]:
    return PatternComplement(P).principal_ultrafilter(region)


def expected_piece_count(P: Pattern, face: Face) -> int:
    """1 + #arcs + #arc-arc crossings in one face (no triple points)."""
    D = P.drawing
    ids = D.arcs_by_face.get(face, [])
    crossings = sum(arcs_cross(face, D.arcs[i], D.arcs[j]) for i, j in combinations(ids, 2))
    return 1 + len(ids) + crossings
