"""Cube complexes dual to finite pocsets, and their hyperplane combinatorics.

A vertex is a bit vector over the hyperplanes: bit ``i`` is 0 when the
ultrafilter contains element ``2i`` and 1 when it contains ``2i + 1``.
Only vertices and edges are stored; higher cubes are implicit.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .cliques import DEFAULT_BUDGET, max_clique
from .errors import CapExceeded, InputError, MedianMissing, NoSeed, SamePair
from .pocset import Pocset, _name

DEFAULT_CAP = 100_000


def greedy_seed(P: Pocset) -> np.ndarray:
    """An ultrafilter built by choosing element 2i whenever it is consistent."""
    n = P.n
    L = P.less
    chosen = np.zeros(2 * n, dtype=bool)
    for i in range(n):
        if chosen[2 * i] or chosen[2 * i + 1]:
            continue
        for a in (2 * i, 2 * i + 1):
            up = L[a].copy()
            up[a] = True
            # conflict: something above a is the complement of a chosen element
            if not (up & chosen[np.arange(2 * n) ^ 1]).any():
                chosen |= up
                break
        else:
            raise NoSeed(f"no consistent side for hyperplane {i}")
    bits = chosen[1::2].astype(np.uint8)
    if not np.array_equal(chosen[0::2], ~chosen[1::2]):
        raise NoSeed("greedy completion did not choose one side per hyperplane")
    return bits


def is_ultrafilter(P: Pocset, bits) -> bool:
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.shape != (P.n,):
        return False
    elems = 2 * np.arange(P.n) + bits
    inside = np.zeros(2 * P.n, dtype=bool)
    inside[elems] = True
    return not (P.less[elems] & ~inside).any()


@dataclass(eq=False)
class CubeComplex:
    pocset: Pocset = field(repr=False)
    vertices: np.ndarray = field(repr=False)
    edges: tuple[tuple[int, int, int], ...] = field(repr=False)
    carrier_matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        self._index = {row.tobytes(): i for i, row in enumerate(self.vertices)}

    @property
    def n(self) -> int:
        return self.pocset.n

    @property
    def V(self) -> int:
        return len(self.vertices)

    def vertex_index(self, bits) -> int | None:
        return self._index.get(np.asarray(bits, dtype=np.uint8).tobytes())

    def side(self, v: int, h: int) -> int:
        """Pocset element on v's side of hyperplane h."""
        return 2 * h + int(self.vertices[v, h])

    @cached_property
    def crossing_matrix(self) -> np.ndarray:
        B = self.vertices.astype(np.int64)
        nB = 1 - B
        both = [(B.T @ B) > 0, (B.T @ nB) > 0, (nB.T @ B) > 0, (nB.T @ nB) > 0]
        c = both[0] & both[1] & both[2] & both[3]
        np.fill_diagonal(c, False)
        return c

    @cached_property
    def adjacency_matrix(self) -> np.ndarray:
        N = self.carrier_matrix.astype(np.int64)
        share = (N.T @ N) > 0
        a = share & ~self.crossing_matrix
        np.fill_diagonal(a, False)
        return a

    @cached_property
    def relation4(self) -> np.ndarray:
        """relation4[h, k, s, t] = element 2h+s < element 2k+t."""
        n = self.n
        return self.pocset.less.reshape(n, 2, n, 2).transpose(0, 2, 1, 3).copy()

    @cached_property
    def transverse_matrix(self) -> np.ndarray:
        return self.pocset.hyperplane_matrix()

    def carrier(self, h: int) -> list[int]:
        return [int(v) for v in np.flatnonzero(self.carrier_matrix[:, h])]

    def edge_list(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j, _ in self.edges]

    def bitstring(self, v: int) -> str:
        return "".join(str(int(b)) for b in self.vertices[v])

    def to_json(self) -> dict:
        labels = self.pocset.labels
        return {
            "hyperplanes": [[_name(labels[2 * i]), _name(labels[2 * i + 1])] for i in range(self.n)],
            "vertices": [self.bitstring(v) for v in range(self.V)],
            "edges": [[i, j] for i, j, _ in self.edges],
            "edge_hyperplanes": [h for _, _, h in self.edges],
        }

    def to_dot(self, name: str = "dual") -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.V):
            lines.append(f'  v{v} [label="{self.bitstring(v)}"];')
        labels = self.pocset.labels
        for i, j, h in self.edges:
            lab = _name(labels[2 * h])
            lines.append(f'  v{i} -- v{j} [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def dual_complex(P: Pocset, vertex_cap: int = DEFAULT_CAP, seed=None) -> CubeComplex:
    """Enumerate all ultrafilters of P by flipping minimal elements from a seed.

    The breadth-first order (neighbours in ascending hyperplane order) is the
    vertex numbering of the result.
    """
    n = P.n
    L = P.less
    if seed is None:
        seed = greedy_seed(P)
    seed = np.asarray(seed, dtype=np.uint8)
    if not is_ultrafilter(P, seed):
        raise NoSeed("seed is not an ultrafilter")
    rows = [seed]
    index = {seed.tobytes(): 0}
    carriers = []
    edges = set()
    queue = deque([0])
    base = 2 * np.arange(n)
    while queue:
        v = queue.popleft()
        bits = rows[v]
        elems = base + bits
        # a is minimal in U when no element of U lies strictly below it
        below = L[np.ix_(elems, elems)].any(axis=0)
        minimal = ~below
        carriers.append(minimal)
        for h in np.flatnonzero(minimal):
            nb = bits.copy()
            nb[h] ^= 1
            key = nb.tobytes()
            w = index.get(key)
            if w is None:
                if len(rows) >= vertex_cap:
                    raise CapExceeded(f"more than {vertex_cap} vertices")
                w = len(rows)
                index[key] = w
                rows.append(nb)
                queue.append(w)
            edges.add((min(v, w), max(v, w), int(h)))
    verts = np.array(rows, dtype=np.uint8).reshape(len(rows), n)
    carrier = np.array(carriers, dtype=bool).reshape(len(rows), n)
    return CubeComplex(P, verts, tuple(sorted(edges)), carrier)


def median(X: CubeComplex, x: int, y: int, z: int) -> int:
    V = X.vertices
    maj = ((V[x].astype(np.int16) + V[y] + V[z]) >= 2).astype(np.uint8)
    m = X.vertex_index(maj)
    if m is None:
        raise MedianMissing(f"majority vote of {x}, {y}, {z} is not a vertex")
    return m


@dataclass(frozen=True)
class Interval:
    x: int
    y: int
    W: tuple[int, ...]
    members: tuple[int, ...]


def separating(X: CubeComplex, x: int, y: int) -> np.ndarray:
    return np.flatnonzero(X.vertices[x] != X.vertices[y])


def interval(X: CubeComplex, x: int, y: int) -> Interval:
    V = X.vertices
    W = separating(X, x, y)
    fixed = V[x] == V[y]
    inside = (V[:, fixed] == V[x, fixed]).all(axis=1)
    return Interval(x, y, tuple(int(h) for h in W), tuple(int(v) for v in np.flatnonzero(inside)))


def _check_distinct(*hs: int) -> None:
    if len(set(hs)) != len(hs):
        raise SamePair(f"hyperplanes {hs} are not distinct")


def crossing(X: CubeComplex, h: int, k: int) -> bool:
    _check_distinct(h, k)
    return bool(X.crossing_matrix[h, k])


def adjacent(X: CubeComplex, h: int, k: int) -> bool:
    _check_distinct(h, k)
    return bool(X.adjacency_matrix[h, k])


def separated_by(X: CubeComplex, v: int, h: int, k: int) -> bool:
    """No inclusion between v's side of h and v's side of k."""
    _check_distinct(h, k)
    L = X.pocset.less
    a, b = X.side(v, h), X.side(v, k)
    return not (L[a, b] or L[b, a])


def between_carriers(X: CubeComplex, v: int, h: int, k: int) -> bool:
    """v's side of h contains k and v's side of k contains h."""
    _check_distinct(h, k)
    L = X.pocset.less
    a, b = X.side(v, h), X.side(v, k)
    return bool(L[a ^ 1, b])


def side_containing(X: CubeComplex, h: int, k: int) -> int | None:
    """Element of h whose halfspace contains hyperplane k, or None if they cross."""
    R = X.relation4
    for s in (0, 1):
        if R[k, h, 0, s] or R[k, h, 1, s]:
            return 2 * h + s
    return None


def less_from(X: CubeComplex, base, h: int, k: int, base_is_hyperplane: bool = False) -> bool:
    """h <_base k: h separates base from k.

    For a vertex base x this is x(h) < x(k): the element of h holding x lies
    inside the element of k holding x.  For a hyperplane base g it asks for
    sides with g_a < h_b < k_c.
    """
    _check_distinct(h, k)
    L = X.pocset.less
    if not base_is_hyperplane:
        return bool(L[X.side(base, h), X.side(base, k)])
    g = int(base)
    _check_distinct(g, h, k)
    for b in (2 * h, 2 * h + 1):
        below = L[2 * g, b] or L[2 * g + 1, b]
        if below and (L[b, 2 * k] or L[b, 2 * k + 1]):
            return True
    return False


def separates_hyperplanes(X: CubeComplex, h: int, k: int, l: int) -> bool:
    """h separates k from l (all pairwise non-crossing)."""
    sk, sl = side_containing(X, h, k), side_containing(X, h, l)
    return sk is not None and sl is not None and sk != sl


def facing_triple(X: CubeComplex, h1: int, h2: int, h3: int) -> bool:
    _check_distinct(h1, h2, h3)
    C = X.crossing_matrix
    if C[h1, h2] or C[h1, h3] or C[h2, h3]:
        return False
    return not (separates_hyperplanes(X, h1, h2, h3) or separates_hyperplanes(X, h2, h1, h3)
                or separates_hyperplanes(X, h3, h1, h2))


def dimension(X: CubeComplex, budget: int = DEFAULT_BUDGET) -> int:
    if X.n == 0:
        return 0
    return len(max_clique(X.crossing_matrix, budget))


def realized_vs_transverse(X: CubeComplex) -> dict:
    iu = np.triu_indices(X.n, 1)
    c = X.crossing_matrix[iu]
    t = X.transverse_matrix[iu]
    return {"realized_crossings": int(c.sum()), "transverse_pairs": int(t.sum()),
            "mismatches": int((c != t).sum())}


def read_off_pocset(X: CubeComplex) -> np.ndarray:
    """Strict inclusion order of the 2n vertex-set halfspaces of X."""
    n = X.n
    member = np.zeros((2 * n, X.V), dtype=bool)
    member[0::2] = (X.vertices == 0).T
    member[1::2] = (X.vertices == 1).T
    m = member.astype(np.int64)
    # a subset of b iff |a \ b| == 0
    diff = m @ (1 - m).T
    sub = diff == 0
    np.fill_diagonal(sub, False)
    return sub


def ensure_vertex(X: CubeComplex, bits) -> int:
    v = X.vertex_index(bits)
    if v is None:
        raise InputError(f"{''.join(map(str, bits))} is not a vertex of the dual")
    return v


# duals of patterns

def fine_dual(pc, vertex_cap: int = DEFAULT_CAP) -> CubeComplex:
    """Dual of the fine pocset, seeded at the principal ultrafilter of region 0."""
    from .pocset import pocset_from_fine
    P = pocset_from_fine(pc)
    n = P.n
    if n == 0:
        return dual_complex(P, vertex_cap)
    U = pc.principal_ultrafilter(0)
    seed = np.array([U[t] for t in range(n)], dtype=np.uint8)
    return dual_complex(P, vertex_cap, seed)


def vertex_bits(pc, v: int, phi=None) -> np.ndarray:
    """Coarse ultrafilter of K-vertex v: per coarse hyperplane, the side holding v."""
    from .pocset import pocset_from_coarse
    if phi is None:
        _, phi = pocset_from_coarse(pc)
    coarse = pc.coarse
    bits = []
    for cls in phi.preimages:
        t = cls[0]
        elem = next(phi.element[2 * t + h.side] for h in coarse[t] if v in h.vertices)
        bits.append(elem & 1)
    return np.array(bits, dtype=np.uint8)


def coarse_dual(pc, vertex_cap: int = DEFAULT_CAP):
    """(coarse dual, PhiMap, {K-vertex: dual vertex})."""
    from .pocset import pocset_from_coarse
    P, phi = pocset_from_coarse(pc)
    K = pc.complex
    images = {v: vertex_bits(pc, v, phi) for v in K.vertices}
    seed = images[K.vertices[0]] if K.vertices else None
    X = dual_complex(P, vertex_cap, seed)
    return X, phi, {v: ensure_vertex(X, b) for v, b in images.items()}


def triangle_images(K, vmap: dict[int, int]) -> list[tuple[int, int, int]]:
    """Coarse-dual vertex triple of every face of K, in face order."""
    return [(vmap[a], vmap[b], vmap[c]) for a, b, c in K.faces]
