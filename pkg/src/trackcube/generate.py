"""Seeded random instances: disks, pocsets, pullback and direct 2-patterns,
and generalized drawings obtained by reverse push moves.

Every generator takes a numpy Generator; ``instance_rng(seed, index)`` gives
the reproducible stream for instance ``index`` of a campaign.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .cliques import DEFAULT_BUDGET
from .complex import SimplicialComplex2, complex_from_faces, edge_key, face_edges
from .dual import CubeComplex, dual_complex
from .errors import NotATrack, RejectionBudgetExceeded
from .pattern import Arc, Drawing, Pattern, make_pattern, max_pairwise_crossing, validate_drawing
from .pocset import Pocset, transitive_closure, validate_pocset, width

DISK_KINDS = ("fan", "strip", "grown")


def instance_rng(seed: int, index: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index)]))


# disks

def fan_disk(n: int) -> SimplicialComplex2:
    return complex_from_faces([(0, i, i + 1) for i in range(1, n + 1)])


def strip_disk(n: int) -> SimplicialComplex2:
    return complex_from_faces([(i, i + 1, i + 2) for i in range(n)])


def grown_disk(n: int, rng: np.random.Generator) -> SimplicialComplex2:
    """Grow a triangulated disk by gluing triangles along the boundary cycle."""
    faces = [(0, 1, 2)]
    edges = {(0, 1), (1, 2), (0, 2)}
    boundary = [0, 1, 2]
    nxt = 3
    while len(faces) < n:
        m = len(boundary)
        i = int(rng.integers(m))
        u, v = boundary[i], boundary[(i + 1) % m]
        w = boundary[(i + 2) % m]
        if m >= 4 and rng.random() < 0.35 and edge_key(u, w) not in edges:
            # fill the corner at v
            faces.append((u, v, w))
            edges.add(edge_key(u, w))
            boundary.pop((i + 1) % m)
            continue
        faces.append((u, v, nxt))
        edges.update({edge_key(u, nxt), edge_key(v, nxt)})
        boundary.insert(i + 1, nxt)
        nxt += 1
    perm = rng.permutation(nxt)
    return complex_from_faces([tuple(int(perm[x]) for x in f) for f in faces])


def random_disk(n_faces: int, rng: np.random.Generator, kind: str | None = None) -> SimplicialComplex2:
    if kind is None:
        kind = DISK_KINDS[int(rng.integers(len(DISK_KINDS)))]
    if kind == "fan":
        return fan_disk(n_faces)
    if kind == "strip":
        return strip_disk(n_faces)
    if kind == "grown":
        return grown_disk(n_faces, rng)
    raise ValueError(f"unknown disk kind {kind!r}")


# pocsets

def _try_relation(less: np.ndarray, a: int, b: int) -> np.ndarray | None:
    """less plus a < b (and b* < a*), closed, or None if that breaks the axioms."""
    if a >> 1 == b >> 1:
        return None
    m = less.copy()
    m[a, b] = True
    m[b ^ 1, a ^ 1] = True
    m = transitive_closure(m)
    if m.diagonal().any():
        return None
    idx = np.arange(len(m))
    if m[idx, idx ^ 1].any():
        return None
    return m


def random_pocset(n: int, rng: np.random.Generator, density: float = 0.3,
                  max_width: int | None = None, budget: int = DEFAULT_BUDGET) -> Pocset:
    """Random relations on n pairs, keeping only those compatible with the axioms.

    With ``max_width`` set, transverse triples are repaired by nesting two of
    their members until the width bound holds.
    """
    less = np.zeros((2 * n, 2 * n), dtype=bool)
    tries = int(density * n * n)
    for _ in range(tries):
        a, b = (int(x) for x in rng.integers(2 * n, size=2))
        m = _try_relation(less, a, b)
        if m is not None:
            less = m
    P = validate_pocset(n, list(zip(*np.nonzero(less))))
    if max_width is None:
        return P
    guard = 0
    while width(P, budget) > max_width:
        guard += 1
        if guard > 10 * n * n + 10:
            raise RejectionBudgetExceeded("could not repair pocset width")
        T = P.hyperplane_matrix()
        h, k = (int(x) for x in np.argwhere(np.triu(T, 1))[int(rng.integers(int(np.triu(T, 1).sum())))])
        m = _try_relation(P.less, 2 * h + int(rng.integers(2)), 2 * k + int(rng.integers(2)))
        if m is not None:
            P = validate_pocset(n, list(zip(*np.nonzero(m))))
    return P


# drawings

def sub_pattern(P: Pattern, keep) -> Pattern:
    """The pattern formed by the tracks in ``keep``, with indices renumbered."""
    keep = sorted(set(keep))
    D = P.drawing
    arc_ids = [a for t in keep for a in P.tracks[t]]
    used: dict = {}
    for a in arc_ids:
        for e, i in D.arcs[a].ends:
            used.setdefault(e, set()).add(i)
    renum = {e: {i: r + 1 for r, i in enumerate(sorted(s))} for e, s in used.items()}
    counts = {e: len(renum.get(e, {})) for e in P.complex.edges}
    arcs = sorted(Arc.make(D.arcs[a].face, (D.arcs[a].ends[0][0], renum[D.arcs[a].ends[0][0]][D.arcs[a].ends[0][1]]),
                           (D.arcs[a].ends[1][0], renum[D.arcs[a].ends[1][0]][D.arcs[a].ends[1][1]]))
                  for a in arc_ids)
    D2 = validate_drawing(P.complex, counts, arcs, allow_empty=True)
    return make_pattern(P.complex, D2)


def drop_parallel(P: Pattern, pc=None) -> Pattern:
    """Keep the first track of every parallelism class (essential tracks only)."""
    from .regions import PatternComplement
    pc = pc or PatternComplement(P)
    return sub_pattern(P, [cls[0] for cls in pc.parallelism_classes])


def normal_counts(K: SimplicialComplex2, rng: np.random.Generator, scale: int = 2,
                  links: float = 0.3) -> dict:
    """Edge counts of a normal curve system: |g(u) - g(v)| plus vertex links."""
    g = {v: int(rng.integers(0, scale + 1)) for v in K.vertices}
    m = {v: int(rng.random() < links) for v in K.vertices}
    return {e: abs(g[e[0]] - g[e[1]]) + m[e[0]] + m[e[1]] for e in K.edges}


def normal_drawing(K: SimplicialComplex2, counts: dict) -> list[Arc]:
    """The non-crossing normal arcs realizing the counts in every face."""
    arcs = []
    for f in K.faces:
        a, b, c = f
        ab, bc, ac = face_edges(f)
        x, y, z = counts[ab], counts[bc], counts[ac]
        ka, kb, kc = (x + z - y) // 2, (x + y - z) // 2, (y + z - x) // 2
        for i in range(1, ka + 1):
            arcs.append(Arc.make(f, (ab, i), (ac, i)))
        for i in range(1, kb + 1):
            arcs.append(Arc.make(f, (ab, x - i + 1), (bc, i)))
        for i in range(1, kc + 1):
            arcs.append(Arc.make(f, (bc, y - i + 1), (ac, z - i + 1)))
    return sorted(arcs)


def _transpose(arcs: list[Arc], rng: np.random.Generator) -> list[Arc]:
    """Swap the endpoints of two arcs of one face on an edge they both meet."""
    if len(arcs) < 2:
        return arcs
    for _ in range(20):
        i, j = (int(x) for x in rng.choice(len(arcs), size=2, replace=False))
        A, B = arcs[i], arcs[j]
        if A.face != B.face:
            continue
        shared = sorted({p[0] for p in A.ends} & {p[0] for p in B.ends})
        if not shared:
            continue
        e = shared[int(rng.integers(len(shared)))]
        pa = next(p for p in A.ends if p[0] == e)
        pb = next(p for p in B.ends if p[0] == e)
        out = list(arcs)
        out[i] = Arc.make(A.face, pb, A.other_end(pa))
        out[j] = Arc.make(B.face, pa, B.other_end(pb))
        return out
    return arcs


@dataclass
class PatternInstance:
    kind: str
    complex: SimplicialComplex2
    pattern: Pattern
    target: CubeComplex | None = None
    vertex_map: dict | None = None
    attempts: int = 1


def direct_pattern(rng: np.random.Generator, max_faces: int = 20, max_tracks: int = 15,
                   max_rejections: int = 200, budget: int = DEFAULT_BUDGET) -> PatternInstance:
    for attempt in range(1, max_rejections + 1):
        K = random_disk(int(rng.integers(1, max_faces + 1)), rng)
        counts = normal_counts(K, rng, scale=int(rng.integers(1, 3)))
        arcs = normal_drawing(K, counts)
        if not arcs:
            continue
        for _ in range(int(rng.integers(0, 4))):
            arcs = _transpose(arcs, rng)
        try:
            D = validate_drawing(K, counts, arcs)
            P = make_pattern(K, D)
        except NotATrack:
            continue
        if len(P.tracks) > max_tracks or max_pairwise_crossing(P, budget) > 2:
            continue
        return PatternInstance("pattern-direct", K, P, attempts=attempt)
    raise RejectionBudgetExceeded(f"no direct 2-pattern after {max_rejections} attempts")


def random_vertex_map(K: SimplicialComplex2, X: CubeComplex, rng: np.random.Generator,
                      max_step: int = 2) -> dict[int, int]:
    """Images chosen by short random walks in X from a BFS parent's image."""
    nbrs: list[list[int]] = [[] for _ in range(X.V)]
    for i, j, _ in X.edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    f: dict[int, int] = {}
    for root in K.vertices:
        if root in f:
            continue
        f[root] = int(rng.integers(X.V))
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in K.neighbors(u):
                if w in f:
                    continue
                x = f[u]
                for _ in range(int(rng.integers(0, max_step + 1))):
                    if nbrs[x]:
                        x = nbrs[x][int(rng.integers(len(nbrs[x])))]
                f[w] = x
                queue.append(w)
    return f


def pullback_instance(rng: np.random.Generator, max_faces: int = 20, max_tracks: int = 15,
                      max_pairs: int = 7, max_rejections: int = 200,
                      budget: int = DEFAULT_BUDGET) -> PatternInstance:
    from .resolution import pullback_pattern
    for attempt in range(1, max_rejections + 1):
        K = random_disk(int(rng.integers(1, max_faces + 1)), rng)
        P = random_pocset(int(rng.integers(1, max_pairs + 1)), rng, max_width=2, budget=budget)
        X = dual_complex(P)
        f = random_vertex_map(K, X, rng)
        pattern = pullback_pattern(K, X, f).pattern
        if not pattern.tracks or len(pattern.tracks) > max_tracks:
            continue
        return PatternInstance("pattern-pullback", K, pattern, X, f, attempt)
    raise RejectionBudgetExceeded(f"no pullback pattern after {max_rejections} attempts")


def random_two_pattern(rng: np.random.Generator, **kw) -> PatternInstance:
    if rng.random() < 0.5:
        return pullback_instance(rng, **kw)
    return direct_pattern(rng, **kw)


# generalized drawings

def reverse_push(D: Drawing, rng: np.random.Generator) -> Drawing | None:
    """Undo a push move at a random interior edge: add a return or a closed loop."""
    K = D.complex
    interior = [e for e in K.edges if len(K.edge_faces[e]) == 2]
    if not interior:
        return None
    e = interior[int(rng.integers(len(interior)))]
    f1, f2 = K.edge_faces[e]
    if rng.random() < 0.5:
        f1, f2 = f2, f1
    c = D.counts[e]
    k = int(rng.integers(1, c + 2))

    def shift(p):
        edge, i = p
        return (edge, i + 2) if edge == e and i >= k else p

    arcs = [Arc.make(a.face, shift(a.ends[0]), shift(a.ends[1])) for a in D.arcs]
    lo, hi = (e, k), (e, k + 1)
    in_f2 = [i for i, a in enumerate(arcs) if a.face == f2]
    if in_f2 and rng.random() < 0.8:
        # route an arc of f2 through f1
        i = in_f2[int(rng.integers(len(in_f2)))]
        p, q = arcs[i].ends
        if rng.random() < 0.5:
            p, q = q, p
        arcs[i:i + 1] = []
        arcs += [Arc.make(f2, p, lo), Arc.make(f2, hi, q), Arc.make(f1, lo, hi)]
    else:
        arcs += [Arc.make(f1, lo, hi), Arc.make(f2, lo, hi)]
    counts = dict(D.counts)
    counts[e] = c + 2
    return validate_drawing(K, counts, sorted(arcs), generalized=True, allow_empty=True)


def generalized_instance(rng: np.random.Generator, max_faces: int = 12,
                         moves: int | None = None) -> tuple[Drawing, PatternInstance]:
    base = None
    while base is None:
        inst = random_two_pattern(rng, max_faces=max_faces)
        if any(len(fs) == 2 for fs in inst.complex.edge_faces.values()):
            base = inst
    D = base.pattern.drawing
    D = validate_drawing(D.complex, D.counts, D.arcs, generalized=True)
    for _ in range(moves if moves is not None else int(rng.integers(1, 6))):
        D = reverse_push(D, rng)
    return D, base

