"""Finite undirected graphs with loops, stored as rows of neighbor bitmasks.

Vertices are ``0..n-1``.  ``adj[v]`` is an int whose bit ``u`` is set iff
``(v, u)`` is an edge; a loop at ``v`` is bit ``v`` of ``adj[v]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import FormatError, HomcxError, ResourceLimitError


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int) -> list[int]:
    """Indices of the set bits of ``x`` in increasing order."""
    out = []
    i = 0
    while x:
        if x & 1:
            out.append(i)
        x >>= 1
        i += 1
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """An immutable finite graph; ``adj`` must be symmetric."""

    n: int
    adj: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency must have one row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbor out of range")
            for u in bits(row):
                if not (self.adj[u] >> v) & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "") -> "Graph":
        """Build a graph from undirected edges; each edge is symmetrized."""
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), name)

    # -- queries -----------------------------------------------------------
    @property
    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def has_loop(self, v: int) -> bool:
        return self.has_edge(v, v)

    @property
    def looped(self) -> bool:
        return any(self.has_loop(v) for v in range(self.n))

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges ``(u, v)`` with ``u <= v``, loops included."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u <= v]

    def num_edges(self) -> int:
        return len(self.edges())

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        label = self.name or f"Graph(n={self.n})"
        return f"<{label}: {self.n} vertices, {self.num_edges()} edges>"


# -- named families -----------------------------------------------------------

def complete(m: int) -> Graph:
    if m < 1:
        raise ValueError("complete graph needs m >= 1")
    return Graph.from_edges(m, itertools.combinations(range(m), 2), f"K{m}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def path(n: int) -> Graph:
    """Path on ``n`` vertices."""
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], f"P{n}")


def star(k: int) -> Graph:
    """K_{1,k}: center 0, leaves 1..k."""
    if k < 1:
        raise ValueError("star needs k >= 1")
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)], f"K1,{k}")


def edgeless(n: int) -> Graph:
    return Graph(n, (0,) * n, f"E{n}")


def kneser_vertices(n: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(n), k))


def kneser(n: int, k: int) -> Graph:
    """Kneser graph: k-subsets of [n] in lexicographic order, adjacent iff disjoint."""
    if not (1 <= k and 2 * k <= n):
        raise ValueError("kneser graph needs 1 <= k <= n/2")
    verts = [mask_of(s) for s in kneser_vertices(n, k)]
    edges = [(i, j) for i, j in itertools.combinations(range(len(verts)), 2)
             if not verts[i] & verts[j]]
    return Graph.from_edges(len(verts), edges, f"KG({n},{k})")


FAMILIES = {
    "complete": (complete, 1),
    "cycle": (cycle, 1),
    "path": (path, 1),
    "kneser": (kneser, 2),
    "star": (star, 1),
    "edgeless": (edgeless, 1),
}


def make_named(family: str, *params: int) -> Graph:
    try:
        ctor, arity = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown graph family {family!r}") from None
    if len(params) != arity:
        raise ValueError(f"{family} takes {arity} parameter(s), got {len(params)}")
    return ctor(*params)


def parse_family(spec: str) -> Graph:
    """Parse ``complete:4``, ``cycle:5``, ``kneser:5,2`` style strings."""
    family, sep, rest = spec.partition(":")
    if not sep:
        raise ValueError(f"graph spec {spec!r} is not of the form family:params")
    try:
        params = [int(p) for p in rest.split(",")]
    except ValueError:
        raise ValueError(f"bad parameters in graph spec {spec!r}") from None
    return make_named(family, *params)


# -- text format --------------------------------------------------------------

def write_graph(G: Graph) -> str:
    lines = [f"vertices {G.n}"]
    lines += [f"{u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "vertices" or not fields[1].isdigit():
                raise FormatError("expected header 'vertices N'", lineno)
            n = int(fields[1])
            continue
        if len(fields) != 2 or not all(f.isdigit() for f in fields):
            raise FormatError(f"expected 'u v', got {line!r}", lineno)
        u, v = int(fields[0]), int(fields[1])
        if u >= n or v >= n:
            raise FormatError(f"vertex out of range in {line!r}", lineno)
        edges.append((u, v))
    if n is None:
        raise FormatError("missing 'vertices N' header")
    return Graph.from_edges(n, edges)


# -- graph operations ---------------------------------------------------------

def complement(G: Graph, mode: str = "looped") -> Graph:
    """Looped complement (all non-edges, loops included) or unlooped (loops dropped)."""
    full = (1 << G.n) - 1
    rows = [full & ~row for row in G.adj]
    if mode == "unlooped":
        rows = [row & ~(1 << v) for v, row in enumerate(rows)]
    elif mode != "looped":
        raise ValueError("mode must be 'looped' or 'unlooped'")
    return Graph(G.n, tuple(rows))


def induced(G: Graph, S: Sequence[int] | int) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``S`` (a bitmask or an iterable of vertices).

    Returns the subgraph and the relabeling list: new vertex ``i`` is old
    vertex ``relabel[i]``; members keep their relative order.
    """
    members = bits(S) if isinstance(S, int) else sorted(set(S))
    pos = {v: i for i, v in enumerate(members)}
    adj = []
    for v in members:
        adj.append(mask_of(pos[u] for u in bits(G.adj[v]) if u in pos))
    return Graph(len(members), tuple(adj)), members


def delete_vertex(G: Graph, v: int) -> Graph:
    return induced(G, [u for u in range(G.n) if u != v])[0]


def tensor_product(G: Graph, H: Graph) -> Graph:
    """Categorical product; vertex ``(g, h)`` is numbered ``g*|V(H)| + h``."""
    m = H.n
    adj = []
    for g in range(G.n):
        for h in range(H.n):
            row = 0
            for g2 in bits(G.adj[g]):
                row |= H.adj[h] << (g2 * m)
            adj.append(row)
    return Graph(G.n * m, tuple(adj))


def add_base_vertex(H: Graph) -> Graph:
    """H_+: a new looped last vertex adjacent to every vertex."""
    b = H.n
    adj = [row | (1 << b) for row in H.adj]
    adj.append((1 << (b + 1)) - 1)
    return Graph(b + 1, tuple(adj))


def is_homomorphism(G: Graph, H: Graph, phi: Sequence[int]) -> bool:
    if len(phi) != G.n:
        return False
    return all(H.has_edge(phi[u], phi[v]) for u, v in G.edges())


def enumerate_homomorphisms(G: Graph, H: Graph, max_nodes: int | None = None) -> list[tuple[int, ...]]:
    """All homomorphisms G -> H in lexicographic order, by backtracking.

    Raises ResourceLimitError once more than ``max_nodes`` search nodes are visited.
    """
    n = G.n
    earlier = [[u for u in bits(G.adj[v]) if u < v] for v in range(n)]
    looped_targets = mask_of(c for c in range(H.n) if H.has_loop(c))
    full = (1 << H.n) - 1
    phi = [0] * n
    out = []
    nodes = 0

    def rec(v):
        nonlocal nodes
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise ResourceLimitError(f"homomorphism search exceeded {max_nodes} nodes")
        if v == n:
            out.append(tuple(phi))
            return
        allowed = full
        for u in earlier[v]:
            allowed &= H.adj[phi[u]]
        if G.has_loop(v):
            allowed &= looped_targets
        for c in bits(allowed):
            phi[v] = c
            rec(v + 1)

    rec(0)
    return out


def find_folds(G: Graph) -> list[tuple[int, int]]:
    """Ordered pairs ``(u, v)``, ``u != v``, with N(v) a subset of N(u)."""
    return [(u, v) for u in range(G.n) for v in range(G.n)
            if u != v and G.adj[v] & ~G.adj[u] == 0]


def fold_reduce(G: Graph) -> tuple[Graph, list[int]]:
    """Delete folded vertices until none remain.

    Returns the reduced graph and the deleted vertices, named by their
    original indices.
    """
    labels = list(range(G.n))
    deleted = []
    while True:
        folds = find_folds(G)
        if not folds:
            return G, deleted
        _, v = folds[0]
        deleted.append(labels.pop(v))
        G = delete_vertex(G, v)


def greedy_chromatic_upper(G: Graph) -> int:
    """Colors used by greedy coloring in descending-degree order."""
    if G.looped:
        raise HomcxError("a graph with a loop has no proper coloring")
    order = sorted(range(G.n), key=lambda v: (-G.degree(v), v))
    color = {}
    for v in order:
        used = {color[u] for u in G.neighbors(v) if u in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return max(color.values(), default=-1) + 1


def max_independent_set(G: Graph, max_nodes: int | None = None) -> int:
    """Exact independence number by branch and bound on bitmasks."""
    candidates = mask_of(v for v in range(G.n) if not G.has_loop(v))
    best = 0
    nodes = 0

    def rec(cand, size):
        nonlocal best, nodes
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise ResourceLimitError(f"independent set search exceeded {max_nodes} nodes")
        if size + popcount(cand) <= best:
            return
        if not cand:
            best = size
            return
        v = (cand & -cand).bit_length() - 1
        rec(cand & ~G.adj[v] & ~(1 << v), size + 1)
        # skipping v only helps if v has a neighbor among the candidates
        if cand & G.adj[v] & ~(1 << v):
            rec(cand & ~(1 << v), size)

    rec(candidates, 0)
    return best


def iter_connected_components(G: Graph) -> Iterator[list[int]]:
    seen = 0
    for s in range(G.n):
        if (seen >> s) & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= G.adj[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        yield bits(comp)
