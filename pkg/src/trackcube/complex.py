"""Finite 2-dimensional simplicial complexes.

Vertices are arbitrary non-negative integers.  Edges are stored as sorted
pairs ``(u, v)`` with ``u < v``; the smaller identifier is the canonical start
of the edge.  Faces are sorted triples ``(a, b, c)`` traversed
``a -> b -> c -> a``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

from .errors import (DanglingEdge, DegenerateSimplex, DuplicateSimplex,
                     InputError, MissingSimplex)

log = logging.getLogger(__name__)

Edge = tuple[int, int]
Face = tuple[int, int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def face_edges(face: Face) -> tuple[Edge, Edge, Edge]:
    """Edges of a sorted face in traversal order: ab, bc, ac."""
    a, b, c = face
    return (a, b), (b, c), (a, c)


def edge_name(e: Edge) -> str:
    return f"{e[0]}-{e[1]}"


def parse_edge_name(name: str) -> Edge:
    try:
        u, v = (int(x) for x in str(name).split("-"))
    except ValueError:
        raise InputError(f"bad edge key {name!r}, expected 'u-v'") from None
    if u > v:
        raise InputError(f"edge key {name!r} must list the smaller vertex first")
    return (u, v)


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of a matrix whose rows are given as int bitmasks."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top in pivots:
                row ^= pivots[top]
            else:
                pivots[top] = row
                rank += 1
                break
    return rank


@dataclass(frozen=True)
class SimplicialComplex2:
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]
    edge_faces: Mapping[Edge, tuple[Face, ...]] = field(repr=False, compare=False)

    @property
    def V(self) -> int:
        return len(self.vertices)

    @property
    def E(self) -> int:
        return len(self.edges)

    @property
    def T(self) -> int:
        return len(self.faces)

    @cached_property
    def boundary_edges(self) -> frozenset[Edge]:
        return frozenset(e for e in self.edges if len(self.edge_faces[e]) == 1)

    @cached_property
    def is_pure(self) -> bool:
        return all(self.edge_faces[e] for e in self.edges)

    @cached_property
    def vertex_faces(self) -> dict[int, tuple[Face, ...]]:
        out: dict[int, list[Face]] = {v: [] for v in self.vertices}
        for f in self.faces:
            for v in f:
                out[v].append(f)
        return {v: tuple(fs) for v, fs in out.items()}

    @cached_property
    def h1_z2(self) -> int:
        return h1_z2_dimension(self)

    def neighbors(self, v: int) -> list[int]:
        return sorted({u for e in self.edges if v in e for u in e if u != v})

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "faces": [list(f) for f in self.faces],
        }


def validate_complex(raw, pure: bool = False) -> SimplicialComplex2:
    """Validate a raw complex description and return the canonical complex.

    ``raw`` is either a mapping with ``vertices``, ``edges`` and ``faces``
    lists (the instance file format) or an existing complex.  With
    ``pure=True`` every edge must lie in at least one face.
    """
    if isinstance(raw, SimplicialComplex2):
        if pure and not raw.is_pure:
            raise DanglingEdge(f"edges without faces: {_dangling(raw)}")
        return raw
    try:
        verts_in = [int(v) for v in raw["vertices"]]
        edges_in = [tuple(int(x) for x in e) for e in raw["edges"]]
        faces_in = [tuple(int(x) for x in f) for f in raw["faces"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"complex description needs vertices/edges/faces lists: {exc}") from None
    extra = set(raw) - {"vertices", "edges", "faces"}
    if extra:
        log.warning("ignoring unknown complex fields: %s", sorted(extra))

    if len(set(verts_in)) != len(verts_in):
        raise DuplicateSimplex("duplicate vertex")
    for v in verts_in:
        if v < 0:
            raise InputError(f"vertex identifiers must be non-negative, got {v}")
    vset = set(verts_in)

    edges: set[Edge] = set()
    for e in edges_in:
        if len(e) != 2:
            raise InputError(f"edge {e} does not have two vertices")
        u, v = e
        if u == v:
            raise DegenerateSimplex(f"edge {e} has equal endpoints")
        for x in e:
            if x not in vset:
                raise MissingSimplex(f"edge {e} uses missing vertex {x}")
        k = edge_key(u, v)
        if k in edges:
            raise DuplicateSimplex(f"duplicate edge {k}")
        edges.add(k)

    faces: set[Face] = set()
    for f in faces_in:
        if len(f) != 3:
            raise InputError(f"face {f} does not have three vertices")
        if len(set(f)) != 3:
            raise DegenerateSimplex(f"face {f} has repeated vertices")
        k = tuple(sorted(f))
        for x in k:
            if x not in vset:
                raise MissingSimplex(f"face {f} uses missing vertex {x}")
        for e in combinations(k, 2):
            if e not in edges:
                raise MissingSimplex(f"face {f} uses missing edge {e}")
        if k in faces:
            raise DuplicateSimplex(f"duplicate face {k}")
        faces.add(k)

    sorted_faces = tuple(sorted(faces))
    edge_faces: dict[Edge, list[Face]] = {e: [] for e in edges}
    for f in sorted_faces:
        for e in face_edges(f):
            edge_faces[e].append(f)
    K = SimplicialComplex2(
        vertices=tuple(sorted(vset)),
        edges=tuple(sorted(edges)),
        faces=sorted_faces,
        edge_faces={e: tuple(fs) for e, fs in edge_faces.items()},
    )
    if pure and not K.is_pure:
        raise DanglingEdge(f"edges without faces: {_dangling(K)}")
    return K


def _dangling(K: SimplicialComplex2) -> list[Edge]:
    return [e for e in K.edges if not K.edge_faces[e]]


def complex_from_faces(faces: Iterable[Iterable[int]], vertices: Iterable[int] = ()) -> SimplicialComplex2:
    """Convenience constructor: the complex spanned by the given triangles."""
    faces = [tuple(sorted(f)) for f in faces]
    verts = set(vertices)
    edges = set()
    for f in faces:
        verts.update(f)
        edges.update(combinations(f, 2))
    return validate_complex({"vertices": sorted(verts), "edges": sorted(edges),
                             "faces": faces})


def coboundary_rows(K: SimplicialComplex2) -> tuple[list[int], list[int]]:
    """Rows of the coboundaries delta0 (E x V) and delta1 (T x E) as bitmasks."""
    vidx = {v: i for i, v in enumerate(K.vertices)}
    eidx = {e: i for i, e in enumerate(K.edges)}
    d0 = [(1 << vidx[u]) | (1 << vidx[v]) for u, v in K.edges]
    d1 = []
    for f in K.faces:
        row = 0
        for e in face_edges(f):
            row |= 1 << eidx[e]
        d1.append(row)
    return d0, d1


def h1_z2_dimension(K: SimplicialComplex2) -> int:
    """dim H^1(K; Z/2) = dim ker(delta1) - rank(delta0)."""
    d0, d1 = coboundary_rows(K)
    rank0 = gf2_rank(d0)
    rank1 = gf2_rank(d1)
    return (K.E - rank1) - rank0


def euler_characteristic(K: SimplicialComplex2) -> int:
    return K.V - K.E + K.T


def disjoint_union(K1: SimplicialComplex2, K2: SimplicialComplex2) -> SimplicialComplex2:
    """Disjoint union, relabelling the second complex's vertices above the first's."""
    shift = (max(K1.vertices) + 1) if K1.vertices else 0
    return validate_complex({
        "vertices": list(K1.vertices) + [v + shift for v in K2.vertices],
        "edges": [list(e) for e in K1.edges] + [[u + shift, v + shift] for u, v in K2.edges],
        "faces": [list(f) for f in K1.faces] + [[x + shift for x in f] for f in K2.faces],
    })


def seven_vertex_torus() -> SimplicialComplex2:
    """Moebius' minimal triangulation of the torus on vertices 0..6."""
    faces = []
    for i in range(7):
        faces.append((i, (i + 1) % 7, (i + 3) % 7))
        faces.append((i, (i + 2) % 7, (i + 3) % 7))
    return complex_from_faces(faces)
