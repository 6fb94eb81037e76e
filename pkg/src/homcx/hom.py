"""Hom complexes, Hom_+ complexes, neighborhood/independence complexes,
functorial maps and the free Z/2 actions.

A cell of Hom(G, H) is keyed by a tuple of color bitmasks, one per vertex of
G.  Cells are ordered by ``(dimension, key)``; every ordering and orbit
representative in the package derives from that key.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .chains import ChainComplex, ChainMap
from .errors import HomcxError, NotFreeError, ResourceLimitError
from .graphs import (Graph, add_base_vertex, bits, complement, complete, cycle, is_homomorphism,
                     popcount, tensor_product)
from .simplicial import SimplicialComplex

Key = tuple[int, ...]


def cell_dim(key: Key) -> int:
    return sum(popcount(m) - 1 for m in key)


def support(key: Key) -> int:
    """Bitmask of the source vertices whose color list is nonempty."""
    s = 0
    for x, m in enumerate(key):
        if m:
            s |= 1 << x
    return s


def submasks(mask: int) -> list[int]:
    """Nonempty submasks in increasing numeric order."""
    out = []
    sub = mask
    while sub:
        out.append(sub)
        sub = (sub - 1) & mask
    out.reverse()
    return out


class _Neighbors:
    """Memoized common-neighbor masks of a target graph."""

    def __init__(self, H: Graph):
        self.H = H
        self.full = (1 << H.n) - 1
        self._cache = {0: self.full}

    def common(self, S: int) -> int:
        got = self._cache.get(S)
        if got is None:
            got = self.full
            for c in bits(S):
                got &= self.H.adj[c]
            self._cache[S] = got
        return got


def _enumerate_lists(G: Graph, H: Graph, allow_empty: bool, dim_budget: int | None, max_cells: int | None):
    """Backtracking over admissible color lists, vertex by vertex."""
    n = G.n
    nb = _Neighbors(H)
    earlier = [[u for u in bits(G.adj[v]) if u < v] for v in range(n)]
    loops = [G.has_loop(v) for v in range(n)]
    key = [0] * n
    out = []

    def rec(v, used):
        if v == n:
            out.append(tuple(key))
            if max_cells is not None and len(out) > max_cells:
                raise ResourceLimitError(f"complex exceeds {max_cells} cells")
            return
        allowed = nb.full
        for u in earlier[v]:
            allowed &= nb.common(key[u])
        options = submasks(allowed)
        if allow_empty:
            options = [0] + options
        for S in options:
            extra = popcount(S) - 1 if S else 0
            if dim_budget is not None and used + extra > dim_budget:
                continue
            if loops[v] and S & ~nb.common(S):
                continue
            key[v] = S
            rec(v + 1, used + extra)
        key[v] = 0

    rec(0, 0)
    return out


class HomComplex:
    """Cells of Hom(G, H), graded by dimension, with exact face structure."""

    def __init__(self, G: Graph, H: Graph, cells: Sequence[Key], dim_cap: int | None = None, truncated: bool = False):
        self.G = G
        self.H = H
        self.dim_cap = dim_cap
        self.truncated = truncated
        by_dim: dict[int, list[Key]] = {}
        for c in sorted(set(cells), key=lambda c: (cell_dim(c), c)):
            by_dim.setdefault(cell_dim(c), []).append(c)
        self.cells = [by_dim.get(d, []) for d in range(max(by_dim, default=-1) + 1)]
        self.index = {c: (d, i) for d, cs in enumerate(self.cells) for i, c in enumerate(cs)}

    # -- structure -----------------------------------------------------------
    @property
    def dimension(self) -> int:
        return len(self.cells) - 1

    def f_vector(self) -> list[int]:
        return [len(cs) for cs in self.cells]

    def __len__(self) -> int:
        return len(self.index)

    def __contains__(self, key) -> bool:
        return tuple(key) in self.index

    def __iter__(self):
        for cs in self.cells:
            yield from cs

    @property
    def is_empty(self) -> bool:
        return not self.index

    def vertices(self) -> list[tuple[int, ...]]:
        """0-cells as homomorphisms (color per source vertex)."""
        return [tuple(bits(m)[0] for m in c) for c in (self.cells[0] if self.cells else [])]

    def faces(self, key: Key) -> list[tuple[Key, int]]:
        """Codimension-one faces with their signs in the product-of-simplices orientation."""
        out = []
        prefix = 0
        for x, m in enumerate(key):
            size = popcount(m)
            if size > 1:
                for p, c in enumerate(bits(m)):
                    face = key[:x] + (m & ~(1 << c),) + key[x + 1:]
                    out.append((face, -1 if (prefix + p) & 1 else 1))
            prefix += size - 1
        return out

    def cover_relations(self) -> list[tuple[Key, Key]]:
        return [(f, c) for c in self for f, _ in self.faces(c)]

    def valid_through(self) -> int | None:
        """Highest degree whose homology this (possibly truncated) complex determines."""
        return self.dim_cap - 1 if self.truncated else None

    def chain_complex(self, ring: str = "Z") -> ChainComplex:
        basis = {d: cs for d, cs in enumerate(self.cells)} or {0: []}
        boundary = {}
        for d, cs in enumerate(self.cells):
            cols = []
            for c in cs:
                cols.append({self.index[f][1]: s for f, s in self.faces(c)} if d else {})
            boundary[d] = cols
        return ChainComplex(ring, basis, boundary, self.valid_through(), check=False)

    def poset(self):
        """Face poset of the cells, element order = cell order."""
        from .posets import FinitePoset
        order = list(self)
        pos = {c: i for i, c in enumerate(order)}
        return FinitePoset.from_covers(len(order), [(pos[f], pos[c]) for f, c in self.cover_relations()], order)

    def verify_cells(self) -> bool:
        """Re-check the edge condition on every stored cell."""
        for c in self:
            for x, y in self.G.edges():
                for a in bits(c[x]):
                    if not self.H.adj[a] & c[y] == c[y]:
                        return False
            if any(m == 0 for m in c):
                return False
        return True

    def __repr__(self):
        trunc = f", truncated at {self.dim_cap}" if self.truncated else ""
        return f"<HomComplex f={self.f_vector()}{trunc}>"


def build_hom(G: Graph, H: Graph, dim_cap: int | None = None, max_cells: int | None = None) -> HomComplex:
    """All cells of Hom(G, H) of dimension at most ``dim_cap``."""
    budget = None if dim_cap is None else dim_cap + 1
    cells = _enumerate_lists(G, H, False, budget, max_cells)
    truncated = False
    if dim_cap is not None:
        truncated = any(cell_dim(c) > dim_cap for c in cells)
        cells = [c for c in cells if cell_dim(c) <= dim_cap]
    return HomComplex(G, H, cells, dim_cap, truncated)


# -- Hom_+ and friends ---------------------------------------------------------

def plus_vertex_labels(G: Graph, H: Graph) -> list[tuple[int, int]]:
    return [(x, c) for x in range(G.n) for c in range(H.n)]


def plus_simplex(key: Key, m: int) -> tuple[int, ...]:
    return tuple(x * m + c for x, mask in enumerate(key) for c in bits(mask))


def plus_cell(simplex: Sequence[int], nG: int, m: int) -> Key:
    key = [0] * nG
    for v in simplex:
        x, c = divmod(v, m)
        key[x] |= 1 << c
    return tuple(key)


def build_hom_plus(G: Graph, H: Graph, max_cells: int | None = None) -> SimplicialComplex:
    """Hom_+(G, H): lists may be empty (not all); vertex ``(x, c)`` has index ``x*|V(H)| + c``."""
    keys = _enumerate_lists(G, H, True, None, max_cells)
    simplices = [plus_simplex(k, H.n) for k in keys if any(k)]
    return SimplicialComplex(plus_vertex_labels(G, H), simplices, check=False)


def hom_plus_via_link(G: Graph, H: Graph) -> SimplicialComplex:
    """Hom_+ as the link of the all-to-base homomorphism inside Hom(G, H_+)."""
    Hp = add_base_vertex(H)
    base = 1 << H.n
    X = build_hom(G, Hp)
    simplices = []
    for c in X:
        if all(m & base for m in c) and any(m & ~base for m in c):
            simplices.append(plus_simplex(tuple(m & ~base for m in c), H.n))
    return SimplicialComplex(plus_vertex_labels(G, H), simplices, check=False)


def neighborhood_complex(G: Graph) -> SimplicialComplex:
    """Vertices: non-isolated vertices; simplices: sets with a common neighbor."""
    verts = [v for v in range(G.n) if G.adj[v]]
    pos = {v: i for i, v in enumerate(verts)}
    facets = [[pos[u] for u in bits(G.adj[v])] for v in range(G.n) if G.adj[v]]
    return SimplicialComplex.from_maximal(verts, facets)


def independence_complex(G: Graph) -> SimplicialComplex:
    """Independent sets; a looped vertex never appears."""
    verts = [v for v in range(G.n) if not G.has_loop(v)]
    pos = {v: i for i, v in enumerate(verts)}
    out = []

    def rec(chosen, cand):
        if chosen:
            out.append(tuple(pos[v] for v in chosen))
        for v in bits(cand):
            rec(chosen + [v], cand & ~G.adj[v] & ~((1 << (v + 1)) - 1))

    rec([], sum(1 << v for v in verts))
    return SimplicialComplex(verts, out, check=False)


def verify_hom_plus_iso(G: Graph, H: Graph) -> bool:
    """Hom_+(G, H) equals Ind(G x looped-complement(H)) under (x, c) <-> x*|V(H)| + c."""
    plus = build_hom_plus(G, H)
    ind = independence_complex(tensor_product(G, complement(H, "looped")))
    m = H.n
    return plus.isomorphic_under(ind, lambda lab: lab[0] * m + lab[1])


# -- functoriality ---------------------------------------------------------------

@dataclass(frozen=True)
class GraphHom:
    source: Graph
    target: Graph
    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))
        if not is_homomorphism(self.source, self.target, self.mapping):
            raise HomcxError("vertex map is not a graph homomorphism")

    def __call__(self, v: int) -> int:
        return self.mapping[v]

    def then(self, other: "GraphHom") -> "GraphHom":
        """``other o self``."""
        return GraphHom(self.source, other.target, tuple(other.mapping[v] for v in self.mapping))


def _perm_sign(seq: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv & 1 else 1


class CellularMap:
    """Cell-to-cell map between Hom complexes that is a product of simplicial maps on each cell.

    ``sign(key)`` is the degree of the map on a cell whose dimension is
    preserved; cells whose image has lower dimension go to zero on chains.
    """

    def __init__(self, source: HomComplex, target: HomComplex, fn: Callable[[Key], Key],
                 sign: Callable[[Key], int]):
        self.source = source
        self.target = target
        self._fn = fn
        self._sign = sign

    def __call__(self, key: Key) -> Key:
        return self._fn(key)

    def sign(self, key: Key) -> int:
        return self._sign(key)

    def is_order_preserving(self) -> bool:
        for f, c in self.source.cover_relations():
            a, b = self(f), self(c)
            if any(x & ~y for x, y in zip(a, b)):
                return False
        return all(self(c) in self.target for c in self.source)

    def chain_map(self, ring: str = "Z", source_chains: ChainComplex | None = None,
                  target_chains: ChainComplex | None = None) -> ChainMap:
        S = source_chains or self.source.chain_complex(ring)
        T = target_chains or self.target.chain_complex(ring)
        images = {}
        for d, cs in enumerate(self.source.cells):
            imgs = []
            for c in cs:
                img = self(c)
                if cell_dim(img) > d:
                    raise HomcxError("map raises cell dimension; it is not cellular on chains")
                if cell_dim(img) == d:
                    imgs.append({self.target.index[img][1]: self.sign(c)})
                else:
                    imgs.append({})
            images[d] = imgs
        return ChainMap(S, T, images)

    def compose(self, other: "CellularMap") -> "CellularMap":
        """``self o other``."""
        def sign(k):
            return other.sign(k) * self.sign(other(k))
        return CellularMap(other.source, self.target, lambda k: self(other(k)), sign)


def covariant_cell(phi: GraphHom, key: Key) -> Key:
    out = []
    for m in key:
        img = 0
        for c in bits(m):
            img |= 1 << phi.mapping[c]
        out.append(img)
    return tuple(out)


def contravariant_cell(phi: GraphHom, key: Key) -> Key:
    return tuple(key[phi.mapping[x]] for x in range(phi.source.n))


def covariant_sign(phi: GraphHom, key: Key) -> int:
    s = 1
    for m in key:
        s *= _perm_sign([phi.mapping[c] for c in bits(m)])
    return s


def contravariant_sign(phi: GraphHom, key: Key) -> int:
    # Koszul sign of reordering the positive-dimensional factors
    dims = [(phi.mapping[x], popcount(key[phi.mapping[x]]) - 1) for x in range(phi.source.n)]
    dims = [(pos, d) for pos, d in dims if d > 0]
    s = 0
    for i in range(len(dims)):
        for j in range(i + 1, len(dims)):
            if dims[i][0] > dims[j][0]:
                s += dims[i][1] * dims[j][1]
    return -1 if s & 1 else 1


def induced_map(phi: GraphHom, variance: str, other: Graph, source: HomComplex | None = None,
                target: HomComplex | None = None, dim_cap: int | None = None) -> CellularMap:
    """Covariant: Hom(other, G) -> Hom(other, G'); contravariant: Hom(G', other) -> Hom(G, other)."""
    if variance == "covariant":
        source = source or build_hom(other, phi.source, dim_cap)
        target = target or build_hom(other, phi.target, dim_cap)
        return CellularMap(source, target, lambda k: covariant_cell(phi, k), lambda k: covariant_sign(phi, k))
    if variance == "contravariant":
        source = source or build_hom(phi.target, other, dim_cap)
        target = target or build_hom(phi.source, other, dim_cap)
        return CellularMap(source, target, lambda k: contravariant_cell(phi, k),
                           lambda k: contravariant_sign(phi, k))
    raise ValueError("variance must be 'covariant' or 'contravariant'")


# -- Z/2 actions ----------------------------------------------------------------

class Involution:
    """Cell-level involution of a Hom complex induced by a source automorphism.

    Orbit representatives are the cells with the smaller key; ``sheet(key)``
    is 0 on representatives and 1 on their partners.
    """

    def __init__(self, X: HomComplex, auto: GraphHom, require_free: bool = True):
        if auto.source != X.G or auto.target != X.G:
            raise HomcxError("involution must come from an automorphism of the source graph")
        if any(auto.mapping[auto.mapping[v]] != v for v in range(X.G.n)):
            raise HomcxError("source automorphism is not an involution")
        self.complex = X
        self.auto = auto
        self.fixed = [c for c in X if self(c) == c]
        if require_free and self.fixed:
            raise NotFreeError(f"Z/2 action fixes {len(self.fixed)} cell(s), e.g. {self.fixed[0]}")

    def __call__(self, key: Key) -> Key:
        return contravariant_cell(self.auto, key)

    def sign(self, key: Key) -> int:
        return contravariant_sign(self.auto, key)

    @property
    def is_free(self) -> bool:
        return not self.fixed

    def representative(self, key: Key) -> Key:
        return min(key, self(key))

    def sheet(self, key: Key) -> int:
        return 0 if key <= self(key) else 1

    def orbits(self, d: int) -> list[Key]:
        """Orbit representatives of dimension ``d`` in cell order."""
        return [c for c in self.complex.cells[d] if c <= self(c)] if d < len(self.complex.cells) else []

    def respects_faces(self) -> bool:
        X = self.complex
        for f, c in X.cover_relations():
            if self(f) not in {g for g, _ in X.faces(self(c))}:
                return False
        return all(self(self(c)) == c and self(c) in X for c in X)

    def cellular_map(self) -> CellularMap:
        return CellularMap(self.complex, self.complex, self, self.sign)


def cycle_reflection(r: int) -> GraphHom:
    """x -> -x on C_{2r+1}."""
    C = cycle(2 * r + 1)
    return GraphHom(C, C, tuple((-x) % (2 * r + 1) for x in range(2 * r + 1)))


def complete_swap(m: int) -> GraphHom:
    """Swap vertices 0 and 1 of K_m, fixing the rest."""
    K = complete(m)
    return GraphHom(K, K, (1, 0) + tuple(range(2, m)))


def cycle_involution(r: int, H: Graph, X: HomComplex | None = None, dim_cap: int | None = None) -> Involution:
    X = X or build_hom(cycle(2 * r + 1), H, dim_cap)
    return Involution(X, cycle_reflection(r))


def complete_involution(m: int, H: Graph, X: HomComplex | None = None, dim_cap: int | None = None) -> Involution:
    if m < 2:
        raise ValueError("the swap action needs m >= 2")
    X = X or build_hom(complete(m), H, dim_cap)
    return Involution(X, complete_swap(m))


def restriction_to_edge(r: int) -> GraphHom:
    """K_2 -> C_{2r+1} onto the swapped pair {r, r+1}, equivariant for swap and reflection."""
    return GraphHom(complete(2), cycle(2 * r + 1), (r, r + 1))


def cellular_chain(X: HomComplex, ring: str = "Z") -> ChainComplex:
    """Cellular chains of a Hom complex with product-of-simplices orientations."""
    return X.chain_complex(ring)
