"""Removal of self-returning arcs by innermost push moves.

A self-returning arc has both endpoints on one edge e.  Pushing it across e
deletes its two crossing points and splices the two arcs that met them in
the other face of e.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

from .cliques import DEFAULT_BUDGET, crossing_graph_from_pairs, max_clique
from .errors import BoundaryReturn, NonManifoldEdge, NotInnermost
from .pattern import (Arc, Drawing, Pattern, _components, arcs_cross, make_pattern,
                      validate_drawing)

log = logging.getLogger(__name__)


def find_self_returning(D: Drawing) -> list[tuple[tuple, int]]:
    """(face, arc index) of every self-returning arc, ordered by face, edge, index."""
    out = [(a.face, i) for i, a in enumerate(D.arcs) if a.self_returning]
    return sorted(out, key=lambda fi: (fi[0], D.arcs[fi[1]].ends, fi[1]))


def _span(a: Arc) -> tuple:
    (e, i), (_, j) = a.ends
    return e, min(i, j), max(i, j)


def innermost(D: Drawing) -> tuple[tuple, int]:
    """First self-returning arc with no other return nested strictly inside it."""
    srs = find_self_returning(D)
    if not srs:
        raise NotInnermost("drawing has no self-returning arc")
    spans = [(_span(D.arcs[i]), i) for _, i in srs]
    for face, i in srs:
        e, lo, hi = _span(D.arcs[i])
        nested = any(j != i and e2 == e and lo < l2 and h2 < hi for (e2, l2, h2), j in spans)
        if not nested:
            return face, i
    raise NotInnermost("no innermost return")  # unreachable for finite drawings


def _shift(p, e, lo, hi):
    edge, k = p
    if edge != e:
        return p
    if k > hi:
        return (edge, k - 2)
    if k > lo:
        return (edge, k - 1)
    return p


@dataclass
class Move:
    face: tuple
    edge: tuple
    indices: tuple[int, int]
    kind: str
    crossings_before: int
    crossings_after: int

    def to_json(self) -> dict:
        return {"face": list(self.face), "edge": f"{self.edge[0]}-{self.edge[1]}",
                "indices": list(self.indices), "kind": self.kind,
                "crossings_before": self.crossings_before, "crossings_after": self.crossings_after}


def push_move(D: Drawing, face, arc: int, check_innermost: bool = True) -> tuple[Drawing, Move]:
    K = D.complex
    a = D.arcs[arc]
    face = tuple(face)
    if a.face != face or not a.self_returning:
        raise NotInnermost(f"arc {arc} is not a self-returning arc of face {face}")
    e, lo, hi = _span(a)
    if check_innermost:
        for f2, j in find_self_returning(D):
            e2, l2, h2 = _span(D.arcs[j])
            if j != arc and e2 == e and lo < l2 and h2 < hi:
                raise NotInnermost(f"arc {j} is nested inside arc {arc}")
    faces = K.edge_faces[e]
    if len(faces) == 1:
        raise BoundaryReturn(f"arc {arc} returns to boundary edge {e}")
    if len(faces) > 2:
        raise NonManifoldEdge(f"edge {e} lies in {len(faces)} faces")
    other = faces[0] if faces[1] == face else faces[1]
    at = D.arcs_at_point
    p_lo, p_hi = (e, lo), (e, hi)
    alpha = next(i for i in at[p_lo] if D.arcs[i].face == other)
    beta = next(i for i in at[p_hi] if D.arcs[i].face == other)
    drop = {arc, alpha, beta}
    new_arcs = []
    if alpha == beta:
        kind = "closed"
    else:
        qa = D.arcs[alpha].other_end(p_lo)
        qb = D.arcs[beta].other_end(p_hi)
        new_arcs.append((qa, qb))
        kind = "return" if qa[0] == qb[0] else "splice"
    arcs = [D.arcs[i] for i in range(len(D.arcs)) if i not in drop]
    arcs = [Arc.make(x.face, _shift(x.ends[0], e, lo, hi), _shift(x.ends[1], e, lo, hi)) for x in arcs]
    for qa, qb in new_arcs:
        arcs.append(Arc.make(other, _shift(qa, e, lo, hi), _shift(qb, e, lo, hi)))
    counts = dict(D.counts)
    counts[e] -= 2
    arcs.sort()
    out = validate_drawing(K, counts, arcs, generalized=True, allow_empty=True)
    move = Move(face, e, (lo, hi), kind, D.total_crossings, out.total_crossings)
    return out, move


def arc_crossing_pairs(D: Drawing) -> int:
    n = 0
    for f, ids in D.arcs_by_face.items():
        for i, j in combinations(ids, 2):
            if arcs_cross(f, D.arcs[i], D.arcs[j]):
                n += 1
    return n


def component_clique(D: Drawing, budget: int = DEFAULT_BUDGET) -> int:
    """Largest set of pairwise crossing connected components."""
    if not D.arcs:
        return 0
    comps = _components(D, range(len(D.arcs)))
    owner = {a: c for c, g in enumerate(comps) for a in g}
    pairs = set()
    for f, ids in D.arcs_by_face.items():
        for i, j in combinations(ids, 2):
            s, t = owner[i], owner[j]
            if s != t and arcs_cross(f, D.arcs[i], D.arcs[j]):
                pairs.add((s, t))
    return len(max_clique(crossing_graph_from_pairs(len(comps), pairs), budget))


@dataclass
class NormalizeResult:
    pattern: Pattern
    moves: list[Move] = field(default_factory=list)
    initial_crossings: int = 0
    final_crossings: int = 0
    arc_crossings: list[int] = field(default_factory=list)
    cliques: list[int] = field(default_factory=list)
    closed_loops: int = 0
    empty: bool = False

    def to_json(self) -> dict:
        return {
            "moves": [m.to_json() for m in self.moves],
            "move_count": len(self.moves),
            "initial_crossings": self.initial_crossings,
            "final_crossings": self.final_crossings,
            "arc_crossing_pairs": self.arc_crossings,
            "component_cliques": self.cliques,
            "closed_loops_deleted": self.closed_loops,
            "empty": self.empty,
        }


def normalize(D: Drawing, track_check: bool = False, budget: int = DEFAULT_BUDGET) -> NormalizeResult:
    """Push innermost returns until the drawing is strict, then split into tracks."""
    res = NormalizeResult(pattern=None, initial_crossings=D.total_crossings)
    res.arc_crossings.append(arc_crossing_pairs(D))
    res.cliques.append(component_clique(D, budget))
    while True:
        srs = find_self_returning(D)
        if not srs:
            break
        face, arc = innermost(D)
        D, move = push_move(D, face, arc, check_innermost=False)
        res.moves.append(move)
        if move.kind == "closed":
            res.closed_loops += 1
            log.info("deleted a closed loop through edge %s", move.edge)
        res.arc_crossings.append(arc_crossing_pairs(D))
        res.cliques.append(component_clique(D, budget))
    res.final_crossings = D.total_crossings
    K = D.complex
    strict = validate_drawing(K, D.counts, D.arcs, allow_empty=True)
    if not strict.arcs:
        log.warning("normalization cancelled every arc; the pattern is empty")
        res.empty = True
    res.pattern = make_pattern(K, strict, check_tracks=track_check)
    return res
