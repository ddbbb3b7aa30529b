"""Exact maximum-clique search with a node budget.

Bron-Kerbosch with Tomita pivoting, pruned by the current best size.  Used
for track crossing graphs, pocset width and cube-complex dimension.
"""
from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from .errors import InstanceTooLarge

DEFAULT_BUDGET = 10_000_000


def _adjacency_sets(adj) -> list[int]:
    """Normalize an adjacency description to a list of neighbour bitmasks."""
    if isinstance(adj, np.ndarray):
        n = adj.shape[0]
        out = []
        for i in range(n):
            mask = 0
            for j in np.flatnonzero(adj[i]):
                if j != i:
                    mask |= 1 << int(j)
            out.append(mask)
        return out
    if isinstance(adj, Mapping):
        keys = list(adj)
        pos = {k: i for i, k in enumerate(keys)}
        return [sum(1 << pos[j] for j in adj[k] if j != k) for k in keys]
    return [sum(1 << j for j in nb if j != i) for i, nb in enumerate(adj)]


def max_clique(adj, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Return one maximum clique (as a sorted list of vertex positions).

    ``adj`` may be a square boolean matrix, a sequence of neighbour
    collections indexed by position, or a mapping vertex -> neighbours (in
    which case positions follow the mapping's iteration order).
    Raises InstanceTooLarge when more than ``budget`` search nodes are
    expanded.
    """
    nbrs = _adjacency_sets(adj)
    n = len(nbrs)
    if n == 0:
        return []
    best: list[int] = [0]
    best_mask = [0]
    nodes = [0]

    def popcount(x: int) -> int:
        return bin(x).count("1")

    def expand(r_mask: int, r_size: int, p: int, x: int) -> None:
        nodes[0] += 1
        if nodes[0] > budget:
            raise InstanceTooLarge(f"clique search exceeded {budget} nodes")
        if not p:
            if r_size > best[0]:
                best[0] = r_size
                best_mask[0] = r_mask
            return
        if r_size + popcount(p) <= best[0]:
            return
        # pivot maximizing |P & N(u)|
        px = p | x
        pivot_nb = 0
        top = -1
        while px:
            low = px & -px
            u = low.bit_length() - 1
            c = popcount(p & nbrs[u])
            if c > top:
                top, pivot_nb = c, nbrs[u]
            px ^= low
        cand = p & ~pivot_nb
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            expand(r_mask | low, r_size + 1, p & nbrs[v], x & nbrs[v])
            p &= ~low
            x |= low
            cand ^= low
            if r_size + popcount(p) <= best[0]:
                return

    expand(0, 0, (1 << n) - 1, 0)
    m = best_mask[0]
    return [i for i in range(n) if (m >> i) & 1]


def max_clique_size(adj, budget: int = DEFAULT_BUDGET) -> int:
    return len(max_clique(adj, budget))


def crossing_graph_from_pairs(n: int, pairs: Sequence[tuple[int, int]]) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    for i, j in pairs:
        if i != j:
            adj[i].add(j)
            adj[j].add(i)
    return adj
