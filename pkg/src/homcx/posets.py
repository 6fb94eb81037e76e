"""Finite posets, order complexes and Quillen-type fiber conditions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import FormatError
from .graphs import bits
from .simplicial import SimplicialComplex, collapse_greedily, replay_collapses


class FinitePoset:
    """Strict partial order on ``0..n-1``.

    ``below[i]`` is a bitmask of the elements strictly less than ``i``.
    """

    def __init__(self, n: int, below: Sequence[int], labels: Sequence | None = None):
        self.n = n
        self.below = tuple(below)
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        for i in range(n):
            if (self.below[i] >> i) & 1:
                raise ValueError(f"relation not irreflexive at {i}")
            for j in bits(self.below[i]):
                if self.below[j] & ~self.below[i]:
                    raise ValueError(f"relation not transitive at {j} < {i}")

    @classmethod
    def from_covers(cls, n: int, covers, labels=None) -> "FinitePoset":
        """Transitive closure of the pairs ``(a, b)`` meaning ``a < b``."""
        below = [0] * n
        for a, b in covers:
            below[b] |= 1 << a
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = below[i]
                for j in bits(below[i]):
                    acc |= below[j]
                if acc != below[i]:
                    below[i] = acc
                    changed = True
        return cls(n, below, labels)

    @classmethod
    def chain(cls, n: int) -> "FinitePoset":
        return cls(n, [(1 << i) - 1 for i in range(n)])

    @classmethod
    def antichain(cls, n: int) -> "FinitePoset":
        return cls(n, [0] * n)

    def less(self, a: int, b: int) -> bool:
        return bool((self.below[b] >> a) & 1)

    def leq(self, a: int, b: int) -> bool:
        return a == b or self.less(a, b)

    def comparable(self, a: int, b: int) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    @property
    def above(self) -> tuple[int, ...]:
        up = [0] * self.n
        for i in range(self.n):
            for j in bits(self.below[i]):
                up[j] |= 1 << i
        return tuple(up)

    def down_set(self, p: int) -> int:
        """Bitmask of P_{<=p}."""
        return self.below[p] | (1 << p)

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for b in range(self.n):
            for a in bits(self.below[b]):
                if not any(self.less(a, c) for c in bits(self.below[b])):
                    out.append((a, b))
        return out

    def subposet(self, members: Sequence[int]) -> "FinitePoset":
        pos = {m: i for i, m in enumerate(members)}
        below = []
        for m in members:
            below.append(sum(1 << pos[x] for x in bits(self.below[m]) if x in pos))
        return FinitePoset(len(members), below, [self.labels[m] for m in members])

    def maximum(self, members: Sequence[int]) -> int | None:
        """The greatest element of the subset, if it has one."""
        for m in members:
            if all(self.leq(x, m) for x in members):
                return m
        return None

    def minimum(self, members: Sequence[int]) -> int | None:
        for m in members:
            if all(self.leq(m, x) for x in members):
                return m
        return None

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        comp, frontier = 1, 1
        up = self.above
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.below[v] | up[v]
            frontier = nxt & ~comp
            comp |= nxt
        return comp == (1 << self.n) - 1

    def __repr__(self):
        return f"<FinitePoset n={self.n} covers={len(self.covers())}>"


def opposite(P: FinitePoset) -> FinitePoset:
    return FinitePoset(P.n, P.above, P.labels)


def chains(P: FinitePoset, max_length: int | None = None) -> list[tuple[int, ...]]:
    """All nonempty chains as index-sorted tuples."""
    up = P.above
    out = []

    def extend(chain, cand):
        out.append(tuple(sorted(chain)))
        if max_length is not None and len(chain) >= max_length:
            return
        for x in bits(cand):
            # grow upward only, so each chain is produced once from its minimum
            extend(chain + [x], cand & up[x])

    for p in range(P.n):
        extend([p], up[p])
    return out


def order_complex(P: FinitePoset) -> SimplicialComplex:
    """Chains of ``P`` as simplices; vertex ``i`` is element ``i``."""
    return SimplicialComplex(P.labels, chains(P), check=False)


# -- poset maps ---------------------------------------------------------------

@dataclass
class PosetMap:
    source: FinitePoset
    target: FinitePoset
    assignment: tuple[int, ...]

    def __post_init__(self):
        self.assignment = tuple(self.assignment)
        if len(self.assignment) != self.source.n:
            raise ValueError("assignment must cover every source element")
        for b in range(self.source.n):
            for a in bits(self.source.below[b]):
                if not self.target.leq(self.assignment[a], self.assignment[b]):
                    raise ValueError(f"map is not order-preserving at {a} < {b}")

    def fiber(self, q: int) -> list[int]:
        return [p for p in range(self.source.n) if self.assignment[p] == q]

    def opposite(self) -> "PosetMap":
        return PosetMap(opposite(self.source), opposite(self.target), self.assignment)


@dataclass
class ConditionResult:
    holds: bool
    witness: tuple[int, int] | None = None


def check_condition_B(phi: PosetMap, use_opposite: bool = False, variant: str = "maximum") -> ConditionResult:
    """For all p, q with phi(p) >= q, the set phi^{-1}(q) cap P_{<=p} must have
    a greatest element (``variant="maximum"``) or merely be nonempty, i.e.
    have some maximal element (``variant="maximal"``).
    """
    if variant not in ("maximum", "maximal"):
        raise ValueError("variant must be 'maximum' or 'maximal'")
    if use_opposite:
        phi = phi.opposite()
    P, Q = phi.source, phi.target
    for p in range(P.n):
        down = bits(P.down_set(p))
        for q in range(Q.n):
            if not Q.leq(q, phi.assignment[p]):
                continue
            S = [x for x in down if phi.assignment[x] == q]
            if not S:
                return ConditionResult(False, (p, q))
            if variant == "maximum" and P.maximum(S) is None:
                return ConditionResult(False, (p, q))
    return ConditionResult(True)


CONTRACTIBLE = "certified-contractible"
NOT_CONTRACTIBLE = "not-contractible"
UNKNOWN = "unknown"


@dataclass
class FiberVerdict:
    status: str
    certificate: object = None
    reduced_homology: object = None
    members: list[int] = field(default_factory=list)


def fiber_verdict(P: FinitePoset) -> FiberVerdict:
    """Tri-state contractibility verdict for the order complex of ``P``.

    Certificates: ``("apex", element)`` for a cone point, ``("collapses",
    pairs)`` for an elementary collapse sequence ending in one vertex.
    """
    members = list(range(P.n))
    if P.n:
        top = P.maximum(members)
        if top is not None:
            return FiberVerdict(CONTRACTIBLE, ("apex", top))
        bottom = P.minimum(members)
        if bottom is not None:
            return FiberVerdict(CONTRACTIBLE, ("apex", bottom))
    K = order_complex(P)
    if P.n:
        pairs, remaining = collapse_greedily(K)
        if len(remaining) == 1:
            return FiberVerdict(CONTRACTIBLE, ("collapses", pairs))
    from .chains import homology, simplicial_chain
    H = homology(simplicial_chain(K, "Z", reduced=True))
    if not H.is_zero():
        return FiberVerdict(NOT_CONTRACTIBLE, reduced_homology=H)
    return FiberVerdict(UNKNOWN, reduced_homology=H)


def check_condition_A(phi: PosetMap) -> dict[int, FiberVerdict]:
    """Per-fiber verdicts for contractibility of the order complexes of fibers."""
    out = {}
    for q in range(phi.target.n):
        fib = phi.fiber(q)
        v = fiber_verdict(phi.source.subposet(fib))
        v.members = fib
        out[q] = v
    return out


def verify_certificate(P: FinitePoset, verdict: FiberVerdict) -> bool:
    """Independently re-check a certified-contractible verdict."""
    kind, data = verdict.certificate
    if kind == "apex":
        return all(P.comparable(data, x) for x in range(P.n))
    remaining = replay_collapses(order_complex(P), data)
    return len(remaining) == 1


# -- text format --------------------------------------------------------------

def read_poset(text: str) -> FinitePoset:
    n = None
    covers = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "elements" or not fields[1].isdigit():
                raise FormatError("expected header 'elements N'", lineno)
            n = int(fields[1])
            continue
        if len(fields) != 3 or fields[1] != "<" or not (fields[0].isdigit() and fields[2].isdigit()):
            raise FormatError(f"expected 'a < b', got {line!r}", lineno)
        a, b = int(fields[0]), int(fields[2])
        if a >= n or b >= n:
            raise FormatError(f"element out of range in {line!r}", lineno)
        covers.append((a, b))
    if n is None:
        raise FormatError("missing 'elements N' header")
    try:
        return FinitePoset.from_covers(n, covers)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_poset(P: FinitePoset) -> str:
    return "\n".join([f"elements {P.n}"] + [f"{a} < {b}" for a, b in P.covers()]) + "\n"
