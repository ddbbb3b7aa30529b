"""Pullback patterns of vertex maps into cube complexes, and resolutions.

A vertex map f sends each vertex of K to a vertex of a dual cube complex X.
Edge uv is crossed by the hyperplanes W(uv) separating f(u) and f(v), in a
canonical geodesic order read from the canonical start u.
"""
from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .cliques import DEFAULT_BUDGET
from .complex import SimplicialComplex2, face_edges, validate_complex
from .dual import (DEFAULT_CAP, CubeComplex, coarse_dual, dimension, fine_dual,
                   separating)
from .errors import InputError, NotAnUltrafilter, ParityViolation, PreconditionH1
from .pattern import Arc, Pattern, make_pattern, max_pairwise_crossing, validate_drawing
from .regions import PatternComplement

log = logging.getLogger(__name__)


def parse_vertex_map(K: SimplicialComplex2, X: CubeComplex, raw: Mapping) -> dict[int, int]:
    """Accept dual vertex indices, bitstrings or bit lists per K-vertex."""
    out = {}
    for k, val in raw.items():
        try:
            v = int(k)
        except (TypeError, ValueError):
            raise InputError(f"vertex map key {k!r} is not a vertex id") from None
        if isinstance(val, str) and set(val) <= {"0", "1"} and len(val) == X.n and X.n:
            idx = X.vertex_index([int(c) for c in val])
        elif isinstance(val, (list, tuple)):
            idx = X.vertex_index([int(c) for c in val])
        else:
            idx = int(val)
            if not 0 <= idx < X.V:
                idx = None
        if idx is None:
            raise InputError(f"image {val!r} of vertex {v} is not a vertex of the target")
        out[v] = idx
    missing = set(K.vertices) - set(out)
    if missing:
        raise InputError(f"vertex map is not total, missing {sorted(missing)}")
    return out


def edge_separation(X: CubeComplex, f: Mapping[int, int], e) -> list[int]:
    u, v = e
    return [int(h) for h in separating(X, f[u], f[v])]


def check_parity(K: SimplicialComplex2, X: CubeComplex, f: Mapping[int, int]) -> None:
    for face in K.faces:
        counts: dict[int, int] = {}
        for e in face_edges(face):
            for h in edge_separation(X, f, e):
                counts[h] = counts.get(h, 0) + 1
        odd = [h for h, c in counts.items() if c not in (0, 2)]
        if odd:
            raise ParityViolation(f"face {face}: hyperplanes {odd} flip an odd number of edges")


def edge_crossing_order(X: CubeComplex, e, f: Mapping[int, int]) -> list[int]:
    """Linear extension of <_{f(u)} on W(e); ties go to the smaller hyperplane."""
    u, v = e
    W = edge_separation(X, f, e)
    if not W:
        return []
    L = X.pocset.less
    x = f[u]
    sides = {h: X.side(x, h) for h in W}
    preds = {h: 0 for h in W}
    succ: dict[int, list[int]] = {h: [] for h in W}
    for h in W:
        for k in W:
            if h != k and L[sides[h], sides[k]]:
                succ[h].append(k)
                preds[k] += 1
    heap = [h for h in W if preds[h] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        h = heapq.heappop(heap)
        order.append(h)
        for k in succ[h]:
            preds[k] -= 1
            if preds[k] == 0:
                heapq.heappush(heap, k)
    return order


@dataclass
class Pullback:
    pattern: Pattern
    orders: dict
    arc_hyperplane: tuple[int, ...]
    track_hyperplane: tuple[int, ...]


def pullback_pattern(K: SimplicialComplex2, X: CubeComplex, f: Mapping[int, int]) -> Pullback:
    K = validate_complex(K, pure=True)
    if K.h1_z2 != 0:
        raise PreconditionH1(f"H^1(K; Z/2) has dimension {K.h1_z2}")
    check_parity(K, X, f)
    orders = {e: edge_crossing_order(X, e, f) for e in K.edges}
    pos = {e: {h: i + 1 for i, h in enumerate(o)} for e, o in orders.items()}
    arcs, hyp = [], []
    for face in K.faces:
        flips: dict[int, list] = {}
        for e in face_edges(face):
            for h in orders[e]:
                flips.setdefault(h, []).append(e)
        for h in sorted(flips):
            e1, e2 = flips[h]
            arcs.append(Arc.make(face, (e1, pos[e1][h]), (e2, pos[e2][h])))
            hyp.append(h)
    order = sorted(range(len(arcs)), key=lambda i: arcs[i])
    arcs = [arcs[i] for i in order]
    hyp = [hyp[i] for i in order]
    counts = {e: len(o) for e, o in orders.items()}
    if not arcs:
        log.warning("pullback pattern is empty")
    D = validate_drawing(K, counts, arcs, allow_empty=True)
    P = make_pattern(K, D)
    track_h = tuple(hyp[t[0]] for t in P.tracks)
    return Pullback(P, orders, tuple(hyp), track_h)


@dataclass
class Resolution:
    complex: SimplicialComplex2
    target: CubeComplex
    f: dict[int, int]
    pullback: Pullback
    complement: PatternComplement
    fine: CubeComplex
    coarse: CubeComplex
    phi: object
    coarse_vertex: dict[int, int]
    F: tuple[int, ...]
    Phi: tuple[int, ...]
    side_map: dict = field(default_factory=dict)
    issues: list = field(default_factory=list)

    @property
    def pattern(self) -> Pattern:
        return self.pullback.pattern


def _halfspace_map(pc: PatternComplement, X: CubeComplex, f, track_h) -> tuple[dict, list]:
    """f-check on fine halfspaces: (track, side) -> target element."""
    P = pc.pattern
    D = P.drawing
    issues = []
    out = {}
    vreg = pc.vertex_region
    for t, arcs in enumerate(P.tracks):
        h = track_h[t]
        h0 = pc.fine[t][0]
        seen: dict[int, set] = {0: set(), 1: set()}
        for a in arcs:
            for e, _ in D.arcs[a].ends:
                for u in e:
                    s = 0 if vreg[u] in h0.regions else 1
                    seen[s].add(X.side(f[u], h))
        for s in (0, 1):
            if len(seen[s]) != 1:
                issues.append({"check": "halfspace_map", "track": t, "side": s,
                               "images": sorted(seen[s])})
        s0 = min(seen[0]) if seen[0] else (min(seen[1]) ^ 1)
        out[(t, 0)] = s0
        out[(t, 1)] = s0 ^ 1
    return out, issues


def resolve(K: SimplicialComplex2, X: CubeComplex, f: Mapping[int, int],
            vertex_cap: int = DEFAULT_CAP) -> Resolution:
    pb = pullback_pattern(K, X, f)
    K = pb.pattern.complex
    pc = PatternComplement(pb.pattern)
    Xf = fine_dual(pc, vertex_cap)
    Xc, phi, cvert = coarse_dual(pc, vertex_cap)
    fmap, issues = _halfspace_map(pc, X, f, pb.track_hyperplane)
    ntr = len(pb.pattern.tracks)
    pre: dict[int, list[int]] = {}
    for t, h in enumerate(pb.track_hyperplane):
        pre.setdefault(h, []).append(t)
    x0 = f[K.vertices[0]]
    common = {}
    for h in range(X.n):
        if h not in pre:
            sides = {X.side(f[v], h) for v in K.vertices}
            if len(sides) != 1:
                issues.append({"check": "image_side", "hyperplane": h})
            common[h] = X.side(x0, h)

    Lf = Xf.pocset.less
    Fimg = []
    for xv in range(Xf.V):
        bits = Xf.vertices[xv]
        out = np.zeros(X.n, dtype=np.uint8)
        for h in range(X.n):
            if h not in pre:
                out[h] = common[h] & 1
                continue
            elems = [2 * t + int(bits[t]) for t in pre[h]]
            minimal = [a for a in elems if not any(Lf[b, a] for b in elems if b != a)]
            imgs = {fmap[(a >> 1, a & 1)] for a in minimal}
            if len(imgs) != 1:
                issues.append({"check": "minimal_preimage", "vertex": xv, "hyperplane": h,
                               "images": sorted(imgs)})
            out[h] = min(imgs) & 1
        idx = X.vertex_index(out)
        if idx is None:
            raise NotAnUltrafilter(f"F sends fine vertex {xv} to a non-vertex "
                                   f"{''.join(map(str, out))}")
        Fimg.append(idx)

    Phi = []
    for xc in range(Xc.V):
        bits = np.zeros(ntr, dtype=np.uint8)
        for t in range(ntr):
            e0 = phi.element[2 * t]
            if e0 is None:
                # inessential track: take the side holding every vertex
                bits[t] = 0 if pc.fine[t][0].regions & set(pc.vertex_region.values()) else 1
            else:
                bits[t] = 0 if Xc.vertices[xc, e0 >> 1] == (e0 & 1) else 1
        idx = Xf.vertex_index(bits)
        if idx is None:
            raise NotAnUltrafilter(f"phi-pullback of coarse vertex {xc} is not a fine vertex")
        Phi.append(idx)
    return Resolution(K, X, dict(f), pb, pc, Xf, Xc, phi, cvert, tuple(Fimg), tuple(Phi),
                      fmap, issues)


def check_resolution(R: Resolution, budget: int = DEFAULT_BUDGET) -> dict:
    """Named pass/fail entries for the resolution's properties."""
    checks = {}
    X, Xf = R.target, R.fine
    issues = R.issues
    checks["minimal_preimage_independent"] = not any(i["check"] == "minimal_preimage" for i in issues)
    checks["halfspace_map_consistent"] = not any(i["check"] in ("halfspace_map", "image_side")
                                                 for i in issues)
    bad_edges = []
    for i, j, t in Xf.edges:
        diff = np.flatnonzero(X.vertices[R.F[i]] != X.vertices[R.F[j]])
        if diff.tolist() != [R.pullback.track_hyperplane[t]]:
            bad_edges.append([i, j])
    checks["edges_to_edges"] = not bad_edges
    dX, dF = dimension(X, budget), dimension(Xf, budget)
    checks["dimension_bound"] = dF <= dX
    nreg = len(R.complement.regions)
    pc = R.complement
    ntr = len(R.pattern.tracks)
    principal = {tuple(pc.principal_ultrafilter(r.id)[t] for t in range(ntr)) for r in pc.regions}
    nonprincipal = [xv for xv in range(Xf.V)
                    if tuple(int(b) for b in Xf.vertices[xv]) not in principal]
    checks["principal"] = not nonprincipal if dX <= 2 else True
    checks["regions_match"] = (Xf.V == nreg) if dX <= 2 else True
    th = R.pullback.track_hyperplane
    bad_cross = [[s, t] for s, t in sorted(R.pattern.crossing_pairs)
                 if th[s] == th[t] or not X.crossing_matrix[th[s], th[t]]]
    checks["crossing_consistent"] = not bad_cross
    # F on the principal ultrafilter of a vertex's region returns f(vertex)
    bad_vertex = []
    for v in R.complex.vertices:
        if Xf.n == 0:
            u = 0
        else:
            U = R.complement.principal_ultrafilter(R.complement.vertex_region[v])
            u = Xf.vertex_index([U[t] for t in range(Xf.n)])
        if u is None or R.F[u] != R.f[v]:
            bad_vertex.append(v)
    checks["vertex_images"] = not bad_vertex
    d = max_pairwise_crossing(R.pattern, budget)
    checks["d_pattern"] = d <= dX
    return {
        "checks": checks,
        "pass": all(checks.values()),
        "tracks": len(R.pattern.tracks),
        "regions": nreg,
        "fine_vertices": Xf.V,
        "coarse_vertices": R.coarse.V,
        "target_vertices": X.V,
        "dimension_target": dX,
        "dimension_fine": dF,
        "max_pairwise_crossing": d,
        "parallelism_classes": len(R.complement.parallelism_classes),
        "failures": {"edges": bad_edges, "crossings": bad_cross, "vertices": bad_vertex,
                     "nonprincipal": nonprincipal, "issues": issues},
        "edge_orders": {f"{u}-{v}": o for (u, v), o in sorted(R.pullback.orders.items()) if o},
    }
