"""Linear algebra over GF(2) with vectors packed into Python ints.

Bit ``i`` of a vector is its coordinate ``i``.  Elimination pivots on the
highest set bit.
"""
from __future__ import annotations

from typing import Iterable


class GF2Span:
    """Incrementally maintained row-echelon basis of a subspace.

    Every stored vector carries a ``tag`` (another packed vector) recording
    which inserted generators it is a combination of.
    """

    def __init__(self):
        self.pivots: dict[int, tuple[int, int]] = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, vec: int, tag: int = 0) -> tuple[int, int]:
        pivots = self.pivots
        while vec:
            h = vec.bit_length() - 1
            entry = pivots.get(h)
            if entry is None:
                break
            vec ^= entry[0]
            tag ^= entry[1]
        return vec, tag

    def reduce_fully(self, vec: int, tag: int = 0) -> tuple[int, int]:
        """Reduce every pivot position, not only the leading one."""
        pivots = self.pivots
        rest = 0
        while vec:
            h = vec.bit_length() - 1
            entry = pivots.get(h)
            if entry is None:
                rest |= 1 << h
                vec ^= 1 << h
                continue
            vec ^= entry[0]
            tag ^= entry[1]
        return rest, tag

    def add(self, vec: int, tag: int = 0) -> bool:
        """Insert ``vec``; returns False if it was already in the span."""
        vec, tag = self.reduce(vec, tag)
        if not vec:
            return False
        self.pivots[vec.bit_length() - 1] = (vec, tag)
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec)[0] == 0

    def express(self, vec: int) -> int | None:
        """Tag combination producing ``vec``, or None if ``vec`` is outside the span."""
        rest, tag = self.reduce(vec)
        return tag if rest == 0 else None


def rank(vectors: Iterable[int]) -> int:
    span = GF2Span()
    for v in vectors:
        span.add(v)
    return len(span)


def nullspace(columns: list[int]) -> list[int]:
    """Basis of {x : sum_j x_j columns[j] = 0}, as packed vectors over the column index."""
    span = GF2Span()
    out = []
    for j, col in enumerate(columns):
        vec, tag = span.reduce(col, 1 << j)
        if vec:
            span.pivots[vec.bit_length() - 1] = (vec, tag)
        else:
            out.append(tag)
    return out


def in_column_space(columns: Iterable[int], target: int) -> bool:
    span = GF2Span()
    for c in columns:
        span.add(c)
    return span.contains(target)


def pack(indices: Iterable[int]) -> int:
    v = 0
    for i in indices:
        v ^= 1 << i
    return v


def unpack(vec: int) -> list[int]:
    out = []
    while vec:
        low = vec & -vec
        out.append(low.bit_length() - 1)
        vec ^= low
    return out
