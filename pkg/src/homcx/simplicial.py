"""Abstract simplicial complexes with a global vertex order.

Simplices are stored as strictly increasing tuples of vertex *indices*;
``vertices[i]`` is the label of index ``i``.  The empty simplex is never
stored.
"""
from __future__ import annotations

import heapq
import itertools
from collections import defaultdict
from typing import Hashable, Iterable, Sequence


class SimplicialComplex:
    def __init__(self, vertices: Sequence[Hashable], simplices: Iterable[Sequence[int]], check: bool = True):
        self.vertices = tuple(vertices)
        simp = {tuple(sorted(s)) for s in simplices if len(s)}
        self.simplices = sorted(simp, key=lambda s: (len(s), s))
        self._set = simp
        if check:
            for s in self.simplices:
                if len(set(s)) != len(s) or s[0] < 0 or s[-1] >= len(self.vertices):
                    raise ValueError(f"bad simplex {s}")
                if len(s) > 1:
                    for i in range(len(s)):
                        if s[:i] + s[i + 1:] not in simp:
                            raise ValueError(f"complex not closed under faces at {s}")

    @classmethod
    def from_maximal(cls, vertices: Sequence[Hashable], facets: Iterable[Sequence[int]]) -> "SimplicialComplex":
        faces = set()
        for f in facets:
            f = tuple(sorted(f))
            if f in faces:
                continue
            for k in range(1, len(f) + 1):
                faces.update(itertools.combinations(f, k))
        return cls(vertices, faces, check=False)

    @classmethod
    def from_label_sets(cls, sets: Iterable[Iterable[Hashable]], vertices: Sequence[Hashable] | None = None,
                        maximal: bool = True) -> "SimplicialComplex":
        """Build from simplices given as collections of labels.

        Without ``vertices`` the labels are sorted to fix the global order.
        """
        sets = [tuple(s) for s in sets]
        if vertices is None:
            vertices = sorted({v for s in sets for v in s})
        pos = {v: i for i, v in enumerate(vertices)}
        idx = [[pos[v] for v in s] for s in sets]
        if maximal:
            return cls.from_maximal(vertices, idx)
        return cls(vertices, idx)

    # -- basic invariants --------------------------------------------------
    def __contains__(self, simplex) -> bool:
        return tuple(simplex) in self._set

    def __len__(self) -> int:
        return len(self.simplices)

    @property
    def dimension(self) -> int:
        return len(self.simplices[-1]) - 1 if self.simplices else -1

    def by_dim(self) -> dict[int, list[tuple[int, ...]]]:
        out = defaultdict(list)
        for s in self.simplices:
            out[len(s) - 1].append(s)
        return dict(out)

    def f_vector(self) -> list[int]:
        f = [0] * (self.dimension + 1)
        for s in self.simplices:
            f[len(s) - 1] += 1
        return f

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.f_vector()))

    def label_sets(self) -> set[frozenset]:
        return {frozenset(self.vertices[i] for i in s) for s in self.simplices}

    def facets(self) -> list[tuple[int, ...]]:
        covered = set()
        for s in self.simplices:
            for i in range(len(s)):
                covered.add(s[:i] + s[i + 1:])
        return [s for s in self.simplices if s not in covered]

    def used_vertices(self) -> list[int]:
        return sorted({v for s in self.simplices for v in s})

    def relabel(self, mapping) -> set[frozenset]:
        """Simplices as label sets after applying ``mapping`` to labels."""
        return {frozenset(mapping(self.vertices[i]) for i in s) for s in self.simplices}

    def isomorphic_under(self, other: "SimplicialComplex", mapping) -> bool:
        """True iff ``mapping`` (label -> label) carries self's simplices exactly onto other's."""
        return self.relabel(mapping) == other.label_sets()

    def face_poset(self):
        """Face poset ordered by inclusion; element ``i`` is ``self.simplices[i]``."""
        from .posets import FinitePoset
        index = {s: i for i, s in enumerate(self.simplices)}
        covers = []
        for s in self.simplices:
            if len(s) > 1:
                for i in range(len(s)):
                    covers.append((index[s[:i] + s[i + 1:]], index[s]))
        return FinitePoset.from_covers(len(self.simplices), covers)

    def __repr__(self):
        return f"<SimplicialComplex f={self.f_vector()}>"


def full_simplex(labels: Sequence[Hashable]) -> SimplicialComplex:
    return SimplicialComplex.from_maximal(labels, [range(len(labels))] if labels else [])


def join_power(K: SimplicialComplex, n: int) -> SimplicialComplex:
    """n-fold join; vertex labels ``(copy, label)``, index ``copy*|V| + i``."""
    if n < 1:
        raise ValueError("join power needs n >= 1")
    m = len(K.vertices)
    vertices = [(c, v) for c in range(n) for v in K.vertices]
    options = [()] + K.simplices
    simplices = []
    for choice in itertools.product(options, repeat=n):
        s = tuple(c * m + v for c, part in enumerate(choice) for v in part)
        if s:
            simplices.append(s)
    return SimplicialComplex(vertices, simplices, check=False)


def collapse_greedily(K: SimplicialComplex) -> tuple[list[tuple[tuple[int, ...], tuple[int, ...]]], list[tuple[int, ...]]]:
    """Elementary collapses, lexicographically smallest free face first.

    Returns ``(pairs, remaining)`` where each pair is ``(free_face, coface)``.
    """
    alive = set(K.simplices)
    cofaces = defaultdict(set)
    for s in K.simplices:
        for i in range(len(s)):
            if len(s) > 1:
                cofaces[s[:i] + s[i + 1:]].add(s)

    def is_free(t):
        if t not in alive:
            return False
        cf = cofaces[t]
        if len(cf) != 1:
            return False
        (s,) = cf
        return not cofaces[s]

    heap = [t for t in alive if is_free(t)]
    heapq.heapify(heap)
    pairs = []
    while heap:
        t = heapq.heappop(heap)
        if not is_free(t):
            continue
        (s,) = cofaces[t]
        pairs.append((t, s))
        alive.discard(t)
        alive.discard(s)
        touched = []
        for face_owner in (t, s):
            if len(face_owner) > 1:
                for i in range(len(face_owner)):
                    f = face_owner[:i] + face_owner[i + 1:]
                    cofaces[f].discard(face_owner)
                    touched.append(f)
        for f in touched:
            if is_free(f):
                heapq.heappush(heap, f)
            # f's own faces may have become free once f is maximal
            if f in alive and not cofaces[f] and len(f) > 1:
                for i in range(len(f)):
                    g = f[:i] + f[i + 1:]
                    if is_free(g):
                        heapq.heappush(heap, g)
    remaining = sorted(alive, key=lambda s: (len(s), s))
    return pairs, remaining


def replay_collapses(K: SimplicialComplex, pairs) -> list[tuple[int, ...]]:
    """Re-validate a collapse sequence; returns the surviving simplices."""
    alive = set(K.simplices)
    for t, s in pairs:
        if t not in alive or s not in alive:
            raise ValueError(f"collapse ({t}, {s}) uses a removed simplex")
        if not set(t) < set(s) or len(s) != len(t) + 1:
            raise ValueError(f"({t}, {s}) is not a codimension-one pair")
        for u in alive:
            if u != s and len(u) > len(t) and set(t) <= set(u):
                raise ValueError(f"{t} is not free: also a face of {u}")
        alive.discard(t)
        alive.discard(s)
    return sorted(alive, key=lambda s: (len(s), s))
