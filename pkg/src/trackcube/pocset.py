"""Finite pocsets: posets with an order-reversing, fixed-point-free involution.

Elements are numbered ``0 .. 2n-1``; element ``2i`` and ``2i + 1`` are the two
sides of hyperplane ``i`` and ``a ^ 1`` is the complement of ``a``.  The
strict order is a dense boolean matrix kept transitively closed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Sequence

import numpy as np

from .cliques import DEFAULT_BUDGET, max_clique
from .errors import (ComplementComparable, InputError, InvolutionNotReversing,
                     NotAntisymmetric, SamePair)


def star(a: int) -> int:
    return a ^ 1


def transitive_closure(less: np.ndarray) -> np.ndarray:
    m = less.copy()
    for k in range(m.shape[0]):
        m |= np.outer(m[:, k], m[k, :])
    return m


@dataclass(frozen=True, eq=False)
class Pocset:
    labels: tuple[Hashable, ...]
    less: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        """Number of hyperplanes (pairs)."""
        return len(self.labels) // 2

    def lt(self, a: int, b: int) -> bool:
        return bool(self.less[a, b])

    def comparable(self, a: int, b: int) -> bool:
        return bool(self.less[a, b] or self.less[b, a])

    def hyperplane_matrix(self) -> np.ndarray:
        """n x n boolean matrix: hyperplanes i, j transverse."""
        n = self.n
        L = self.less.reshape(n, 2, n, 2)
        related = L.any(axis=(1, 3))
        related = related | related.T
        tr = ~related
        np.fill_diagonal(tr, False)
        return tr

    def relations(self) -> list[tuple[int, int]]:
        return [(int(a), int(b)) for a, b in zip(*np.nonzero(self.less))]

    def to_json(self) -> dict:
        names = [_name(l) for l in self.labels]
        return {
            "pairs": [[names[2 * i], names[2 * i + 1]] for i in range(self.n)],
            "relations": [[names[a], names[b]] for a, b in self.relations()],
        }

    def restrict(self, hyperplanes: Sequence[int]) -> "Pocset":
        idx = [e for h in hyperplanes for e in (2 * h, 2 * h + 1)]
        return Pocset(tuple(self.labels[e] for e in idx), self.less[np.ix_(idx, idx)].copy())


def _name(label) -> str:
    if isinstance(label, str):
        return label
    if isinstance(label, frozenset):
        return "{" + ",".join(str(v) for v in sorted(label)) + "}"
    if isinstance(label, tuple):
        return ":".join(str(x) for x in label)
    return str(label)


def validate_pocset(n_or_labels, relations: Sequence[tuple[int, int]] = (),
                    close_involution: bool = True) -> Pocset:
    """Build a pocset from ``a <= b`` relations on element indices.

    ``n_or_labels`` is a hyperplane count or the 2n element labels.  Pairs
    ``(a, a)`` are ignored.  With ``close_involution`` (the default) every
    relation ``a <= b`` also adds ``b* <= a*``; otherwise a relation set that
    is not closed under the involution raises InvolutionNotReversing.
    """
    if isinstance(n_or_labels, int):
        labels = tuple(f"h{i}" if s == 0 else f"h{i}*" for i in range(n_or_labels) for s in (0, 1))
    else:
        labels = tuple(n_or_labels)
        if len(labels) % 2:
            raise InputError("a pocset needs an even number of elements")
    m = len(labels)
    less = np.zeros((m, m), dtype=bool)
    for a, b in relations:
        a, b = int(a), int(b)
        if not (0 <= a < m and 0 <= b < m):
            raise InputError(f"relation ({a}, {b}) out of range")
        if a == b:
            continue
        less[a, b] = True
        if close_involution:
            less[b ^ 1, a ^ 1] = True
    less = transitive_closure(less)
    if less.diagonal().any():
        a = int(np.flatnonzero(less.diagonal())[0])
        raise NotAntisymmetric(f"cycle through element {labels[a]!r}")
    perm = np.arange(m) ^ 1
    if not np.array_equal(less, less[np.ix_(perm, perm)].T):
        raise InvolutionNotReversing("a <= b does not imply b* <= a*")
    comp = less[np.arange(m), perm]
    if comp.any():
        a = int(np.flatnonzero(comp)[0])
        raise ComplementComparable(f"{labels[a]!r} is comparable with its complement")
    return Pocset(labels, less)


def pocset_from_json(doc: dict) -> Pocset:
    """Load ``{pairs: [[h, h*]], relations: [[a, b]]}`` (a <= b)."""
    try:
        pairs = [tuple(p) for p in doc["pairs"]]
    except (KeyError, TypeError):
        raise InputError("pocset needs a 'pairs' list") from None
    labels = []
    for p in pairs:
        if len(p) != 2:
            raise InputError(f"pair {p} must have two elements")
        labels.extend(p)
    if len(set(map(str, labels))) != len(labels):
        raise InputError("pocset element names must be distinct")
    pos = {str(l): i for i, l in enumerate(labels)}
    rels = []
    for r in doc.get("relations", []):
        try:
            rels.append((pos[str(r[0])], pos[str(r[1])]))
        except (KeyError, IndexError, TypeError):
            raise InputError(f"bad relation {r}") from None
    return validate_pocset(tuple(str(l) for l in labels), rels)


def transverse(P: Pocset, h: int, k: int) -> bool:
    """Elements h, k from distinct pairs: none of h<k, h<k*, h*<k, h*<k*."""
    if h >> 1 == k >> 1:
        raise SamePair(f"elements {h} and {k} belong to the same pair")
    L = P.less
    return not (L[h, k] or L[h, k ^ 1] or L[h ^ 1, k] or L[h ^ 1, k ^ 1])


def width(P: Pocset, budget: int = DEFAULT_BUDGET) -> int:
    """Largest number of pairwise transverse hyperplanes."""
    if P.n == 0:
        return 0
    return len(max_clique(P.hyperplane_matrix(), budget))


@dataclass(frozen=True)
class PhiMap:
    """Fine elements -> coarse elements, plus the induced hyperplane map."""
    element: tuple[int | None, ...]
    hyperplane: tuple[int | None, ...]
    preimages: tuple[tuple[int, ...], ...]

    def strictness_failures(self, fine: Pocset) -> list[tuple[int, int]]:
        """Fine pairs a < b whose images coincide (should be reported, not raised)."""
        out = []
        for a, b in zip(*np.nonzero(fine.less)):
            ia, ib = self.element[a], self.element[b]
            if ia is not None and ia == ib:
                out.append((int(a), int(b)))
        return out


def pocset_from_fine(pc) -> Pocset:
    """Fine pocset of a pattern: hyperplane i is track i, side s is element 2i+s."""
    fine = pc.fine
    labels = []
    sets = []
    for t in range(len(pc.pattern.tracks)):
        for h in fine[t]:
            labels.append((t, h.side))
            sets.append(h.regions)
    return _inclusion_pocset(labels, sets)


def pocset_from_coarse(pc) -> tuple[Pocset, PhiMap]:
    """Coarse pocset (one hyperplane per parallelism class) and the map phi.

    Coarse hyperplane j has as element 2j the side containing the smallest
    vertex of the complex.  Vertex-inessential tracks have no image.
    """
    classes = pc.parallelism_classes
    coarse = pc.coarse
    ntracks = len(pc.pattern.tracks)
    labels, sets = [], []
    element = [None] * (2 * ntracks)
    hyper = [None] * ntracks
    for j, cls in enumerate(classes):
        c0, c1 = coarse[cls[0]]
        lo = min(c0.vertices | c1.vertices)
        first, second = (c0, c1) if lo in c0.vertices else (c1, c0)
        labels.extend([first.vertices, second.vertices])
        sets.extend([first.vertices, second.vertices])
        for t in cls:
            hyper[t] = j
            for h in coarse[t]:
                element[2 * t + h.side] = 2 * j + (0 if h.vertices == first.vertices else 1)
    P = _inclusion_pocset(labels, sets)
    return P, PhiMap(tuple(element), tuple(hyper), tuple(tuple(c) for c in classes))


def _inclusion_pocset(labels, sets) -> Pocset:
    m = len(sets)
    less = np.zeros((m, m), dtype=bool)
    for a, b in combinations(range(m), 2):
        if sets[a] < sets[b]:
            less[a, b] = True
        elif sets[b] < sets[a]:
            less[b, a] = True
    return validate_pocset(tuple(labels), list(zip(*np.nonzero(less))), close_involution=False)
