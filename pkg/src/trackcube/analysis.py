"""Interval analysis on cube complexes: obstructing pairs, adj-P pairs, the
two counting lemmas, the hyperplane trichotomy and the class bound.

Pair predicates are evaluated for every pair of W(I) at once; the results
only depend on the set W(I), so they are cached per complex.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

import numpy as np

from .cliques import DEFAULT_BUDGET
from .dual import CubeComplex, Interval, dimension, interval, median
from .errors import CrossingInput, Not2Pattern, NotInInterval

LEMMA2_BOUND = 4


def lemma1_bound(d: int) -> int:
    return 2 * d * d


def theorem_bound(K) -> int:
    return 96 * K.T + 2 * K.E


@dataclass(frozen=True)
class PopWitness:
    h: int
    k: int
    h_prime: int
    k_prime: int
    W: tuple[int, ...]


class IntervalTables:
    """pop / adj-P matrices of a cube complex, cached by W(I)."""

    def __init__(self, X: CubeComplex):
        self.X = X
        self._cache: dict[tuple[int, ...], tuple[np.ndarray, np.ndarray]] = {}

    def tables(self, W) -> tuple[np.ndarray, np.ndarray]:
        """(pop, adjp) as |W| x |W| boolean matrices indexed by position in W."""
        W = tuple(int(h) for h in W)
        hit = self._cache.get(W)
        if hit is not None:
            return hit
        idx = np.array(W, dtype=np.intp)
        C = self.X.crossing_matrix[np.ix_(idx, idx)]
        A = self.X.adjacency_matrix[np.ix_(idx, idx)]
        Ci = C.astype(np.int64)
        # M[h', h, k] = h' crosses k and not h
        M = (C[:, None, :] & ~C[:, :, None]).astype(np.int64)
        # pop[h, k] = sum_{h', k'} M[h', h, k] C[h', k'] M[k', k, h]
        T = np.einsum("ab,bkh->ahk", Ci, M)
        pop = np.einsum("ahk,ahk->hk", M, T) > 0
        adjp = A & ~C & ~pop
        np.fill_diagonal(adjp, False)
        self._cache[W] = (pop, adjp)
        return pop, adjp


def _tables(X: CubeComplex, tables: IntervalTables | None) -> IntervalTables:
    if tables is None:
        tables = getattr(X, "_interval_tables", None)
        if tables is None:
            tables = IntervalTables(X)
            X._interval_tables = tables
    return tables


def _positions(I: Interval, h: int, k: int) -> tuple[int, int]:
    pos = {w: i for i, w in enumerate(I.W)}
    if h not in pos or k not in pos:
        raise NotInInterval(f"hyperplanes {h}, {k} must both separate {I.x} and {I.y}")
    return pos[h], pos[k]


def pop_exists(X: CubeComplex, I: Interval, h: int, k: int) -> PopWitness | None:
    """First obstructing pair (h', k') for (h, k) in I, scanning W(I) in order."""
    _positions(I, h, k)
    C = X.crossing_matrix
    if h == k or C[h, k]:
        raise CrossingInput(f"hyperplanes {h} and {k} cross or coincide")
    for hp in I.W:
        if not (C[hp, k] and not C[hp, h]):
            continue
        for kp in I.W:
            if C[kp, h] and not C[kp, k] and C[hp, kp]:
                return PopWitness(h, k, hp, kp, I.W)
    return None


def adj_p(X: CubeComplex, I: Interval, h: int, k: int, tables: IntervalTables | None = None) -> bool:
    i, j = _positions(I, h, k)
    if h == k or X.crossing_matrix[h, k]:
        raise CrossingInput(f"hyperplanes {h} and {k} cross or coincide")
    _, adjp = _tables(X, tables).tables(I.W)
    return bool(adjp[i, j])


def _separation_matrices(X: CubeComplex, I: Interval, members) -> tuple[np.ndarray, np.ndarray]:
    """For each member m: (no-inclusion, between-carriers) matrices over W(I)."""
    idx = np.array(I.W, dtype=np.intp)
    bits = X.vertices[np.ix_(np.asarray(members, dtype=np.intp), idx)].astype(np.intp)
    R = X.relation4[np.ix_(idx, idx)]
    hh = np.arange(len(idx))
    H = hh[None, :, None]
    Kk = hh[None, None, :]
    s = bits[:, :, None]
    t = bits[:, None, :]
    ab = R[H, Kk, s, t]
    ba = R[Kk, H, t, s]
    sep = ~(ab | ba)
    between = R[H, Kk, 1 - s, t]
    return sep, between


@dataclass
class Lemma1Result:
    count: int
    between_count: int
    pairs: list[tuple[int, int]] = field(default_factory=list)


def lemma1_count(X: CubeComplex, I: Interval, m: int, tables: IntervalTables | None = None) -> Lemma1Result:
    """Unordered adj-P pairs of I separated by the vertex m."""
    if m not in set(I.members):
        raise NotInInterval(f"vertex {m} is not in [{I.x}, {I.y}]")
    if len(I.W) < 2:
        return Lemma1Result(0, 0, [])
    _, adjp = _tables(X, tables).tables(I.W)
    sep, between = _separation_matrices(X, I, [m])
    hit = np.triu(adjp & sep[0], 1)
    pairs = [(I.W[i], I.W[j]) for i, j in zip(*np.nonzero(hit))]
    return Lemma1Result(len(pairs), int(np.triu(adjp & between[0], 1).sum()), pairs)


def lemma1_interval_counts(X: CubeComplex, I: Interval, tables: IntervalTables | None = None):
    """Counts for every member of I at once: (members, counts, between_counts)."""
    members = np.array(I.members, dtype=np.intp)
    if len(I.W) < 2:
        z = np.zeros(len(members), dtype=np.int64)
        return members, z, z
    _, adjp = _tables(X, tables).tables(I.W)
    up = np.triu(adjp, 1)
    sep, between = _separation_matrices(X, I, members)
    c1 = (sep & up[None]).sum(axis=(1, 2))
    c2 = (between & up[None]).sum(axis=(1, 2))
    return members, c1, c2


def lemma2_count(X: CubeComplex, x: int, y1: int, y2: int, tables: IntervalTables | None = None) -> int:
    """Pairs meeting [x,y1] and [x,y2], adj-P in the first but not the second."""
    I1, I2 = interval(X, x, y1), interval(X, x, y2)
    common = sorted(set(I1.W) & set(I2.W))
    if len(common) < 2:
        return 0
    tb = _tables(X, tables)
    _, a1 = tb.tables(I1.W)
    _, a2 = tb.tables(I2.W)
    p1 = {w: i for i, w in enumerate(I1.W)}
    p2 = {w: i for i, w in enumerate(I2.W)}
    i1 = np.array([p1[w] for w in common])
    i2 = np.array([p2[w] for w in common])
    hit = a1[np.ix_(i1, i1)] & ~a2[np.ix_(i2, i2)]
    return int(np.triu(hit, 1).sum())


def adjacent_to_vertex(X: CubeComplex, v: int, h: int) -> bool:
    """v lies in the carrier of h."""
    return bool(X.carrier_matrix[v, h])


def classify_hyperplane(X: CubeComplex, K, vmap: dict[int, int], h: int,
                        tables: IntervalTables | None = None) -> dict[int, list]:
    """Categories witnessed for coarse hyperplane h, each with its witnesses.

    1: h separates the images of an edge and is adjacent to the image of the
       edge's canonical start.
    2: (h, k) adj-P in [x, y] for an ordered face (x, y, z) and separated by
       the median of the three images.
    3: (h, k) adj-P in [x, y], both meet [x, z], and not adj-P there.
    """
    tb = _tables(X, tables)
    V = X.vertices
    found: dict[int, list] = {}
    for u, w in K.edges:
        a, b = vmap[u], vmap[w]
        if V[a, h] != V[b, h] and X.carrier_matrix[a, h]:
            found.setdefault(1, []).append((u, w))
    for face in K.faces:
        for x, y, z in permutations(face):
            xb, yb, zb = vmap[x], vmap[y], vmap[z]
            I1 = interval(X, xb, yb)
            if h not in I1.W or len(I1.W) < 2:
                continue
            _, a1 = tb.tables(I1.W)
            i = I1.W.index(h)
            partners = [I1.W[j] for j in np.flatnonzero(a1[i])]
            if not partners:
                continue
            m = median(X, xb, yb, zb)
            L = X.pocset.less
            for k in partners:
                sa, sb = X.side(m, h), X.side(m, k)
                if not (L[sa, sb] or L[sb, sa]):
                    found.setdefault(2, []).append(((x, y, z), k))
            I2 = interval(X, xb, zb)
            if h in I2.W:
                _, a2 = tb.tables(I2.W)
                p2 = {w2: j for j, w2 in enumerate(I2.W)}
                for k in partners:
                    if k in p2 and not a2[p2[h], p2[k]]:
                        found.setdefault(3, []).append(((x, y, z), k))
    return found


@dataclass
class TheoremReport:
    classes: int
    bound: int
    tracks: int
    inessential: int
    dimension: int
    lemma1_max: int
    lemma2_max: int
    lemma1_interpretation_disagreements: int
    trichotomy_gaps: list
    lemma1_violations: list
    lemma2_violations: list
    category_counts: dict

    @property
    def slack(self) -> int:
        return self.bound - self.classes

    @property
    def passed(self) -> bool:
        return (self.classes <= self.bound and not self.trichotomy_gaps
                and not self.lemma1_violations and not self.lemma2_violations)

    def to_json(self) -> dict:
        return {
            "classes": self.classes,
            "bound": self.bound,
            "slack": self.slack,
            "tracks": self.tracks,
            "inessential_tracks": self.inessential,
            "dimension": self.dimension,
            "lemma1_max": self.lemma1_max,
            "lemma1_threshold": lemma1_bound(max(self.dimension, 0)),
            "lemma2_max": self.lemma2_max,
            "lemma1_interpretation_disagreements": self.lemma1_interpretation_disagreements,
            "trichotomy_gaps": self.trichotomy_gaps,
            "lemma1_violations": self.lemma1_violations,
            "lemma2_violations": self.lemma2_violations,
            "category_counts": {str(k): v for k, v in sorted(self.category_counts.items())},
            "pass": self.passed,
        }


def scan_lemma1(X: CubeComplex, tables: IntervalTables | None = None, pairs=None):
    """Run the first counting lemma over all intervals (or the given vertex pairs).

    Returns (max count, violations, interpretation disagreements).
    """
    d = dimension(X)
    bound = lemma1_bound(d)
    tb = _tables(X, tables)
    best, viol, disagree = 0, [], 0
    if pairs is None:
        pairs = combinations(range(X.V), 2)
    for x, y in pairs:
        I = interval(X, x, y)
        members, c1, c2 = lemma1_interval_counts(X, I, tb)
        if len(c1):
            best = max(best, int(c1.max()))
            disagree += int((c1 != c2).sum())
            for m in members[c1 > bound]:
                viol.append({"interval": [int(x), int(y)], "vertex": int(m)})
    return best, viol, disagree


def scan_lemma2(X: CubeComplex, K, vmap, tables: IntervalTables | None = None):
    """Second counting lemma on interval pairs anchored at triangle images."""
    tb = _tables(X, tables)
    best, viol = 0, []
    seen = set()
    for face in K.faces:
        for x, y, z in permutations(face):
            key = (vmap[x], vmap[y], vmap[z])
            if key in seen:
                continue
            seen.add(key)
            c = lemma2_count(X, *key, tables=tb)
            best = max(best, c)
            if c > LEMMA2_BOUND:
                viol.append({"face": list(face), "anchor": [x, y, z], "count": c})
    return best, viol


def check_theorem_A(K, P, pc=None, budget: int = DEFAULT_BUDGET, vertex_cap=None,
                    lemma1_all_pairs: bool = True) -> TheoremReport:
    """Count parallelism classes, compare with 96T + 2E, and run the lemmas."""
    from .dual import DEFAULT_CAP, coarse_dual
    from .pattern import max_pairwise_crossing
    from .regions import PatternComplement

    if K.h1_z2 != 0:
        from .errors import PreconditionH1
        raise PreconditionH1(f"H^1(K; Z/2) has dimension {K.h1_z2}")
    if max_pairwise_crossing(P, budget) > 2:
        raise Not2Pattern("more than two tracks pairwise cross")
    pc = pc or PatternComplement(P)
    X, phi, vmap = coarse_dual(pc, vertex_cap or DEFAULT_CAP)
    tb = _tables(X, None)
    d = dimension(X, budget)
    classes = len(pc.parallelism_classes)
    pairs = None if lemma1_all_pairs else {tuple(sorted((vmap[u], vmap[w]))) for u, w in K.edges}
    l1max, l1viol, disagree = scan_lemma1(X, tb, pairs)
    if d <= 2:
        l2max, l2viol = scan_lemma2(X, K, vmap, tb)
    else:
        l2max, l2viol = 0, []
    gaps = []
    cats: dict[int, int] = {}
    for h in range(X.n):
        found = classify_hyperplane(X, K, vmap, h, tb)
        if not found:
            gaps.append({"hyperplane": h, "tracks": list(phi.preimages[h])})
        for c in found:
            cats[c] = cats.get(c, 0) + 1
    return TheoremReport(classes, theorem_bound(K), len(P.tracks), len(pc.inessential), d,
                         l1max, l2max, disagree, gaps, l1viol, l2viol, cats)
