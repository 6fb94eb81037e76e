"""Free Z/2 actions on Hom complexes: quotient homology, the first
Stiefel-Whitney cocycle, cup powers and the height of w.

Two models of the quotient are provided and must agree:

* ``OrderModel``: the order complex of the cell poset with vertices ordered
  by ``(dimension, key)``, and its quotient as an ordered Delta-complex.  Cup
  products are the Alexander-Whitney front/back face products.
* ``CellularModel``: the cells of X themselves, quotient cochains being the
  invariant cochains.  Each cell is a product of simplices with colors in
  increasing order, so the product of the per-factor Alexander-Whitney
  diagonals is a cellular diagonal.  The action only permutes factors and
  keeps color order, so that diagonal is equivariant and descends.

The order model is the reference at small sizes; the cellular model is what
makes degree-3 questions about Hom(C5, K5) feasible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Sequence

from . import gf2
from .chains import ChainComplex, ChainMap, HomologyResult, homology, induced_map_homology
from .errors import DisconnectedError, HomcxError, NotFreeError, SoundnessError
from .graphs import bits, popcount
from .hom import HomComplex, Involution, cell_dim, submasks


class OrderedDeltaComplex:
    """Simplices as increasing vertex tuples; ``faces[d][i][j]`` indexes face j.

    Distinct simplices may share a vertex tuple, so faces are stored
    explicitly instead of looked up by vertex set.
    """

    def __init__(self, vertices: Sequence, simplices: dict[int, list[tuple[int, ...]]],
                 faces: dict[int, list[tuple[int, ...]]]):
        self.vertices = list(vertices)
        self.simplices = simplices
        self.faces = faces
        for d, ss in simplices.items():
            for i, s in enumerate(ss):
                if any(a >= b for a, b in zip(s, s[1:])):
                    raise SoundnessError(f"simplex {s} is not increasing")
                if d and len(faces[d][i]) != d + 1:
                    raise SoundnessError(f"simplex {s} has {len(faces[d][i])} faces")
                for j, f in enumerate(faces.get(d, [()] * len(ss))[i] if d else ()):
                    if simplices[d - 1][f] != s[:j] + s[j + 1:]:
                        raise SoundnessError(f"face {j} of {s} has the wrong vertices")

    @property
    def dimension(self) -> int:
        return max((d for d, ss in self.simplices.items() if ss), default=-1)

    def count(self, d: int) -> int:
        return len(self.simplices.get(d, ()))

    def f_vector(self) -> list[int]:
        return [self.count(d) for d in range(self.dimension + 1)]

    def front(self, d: int, i: int, p: int) -> int:
        """Index of the front p-face (first p+1 vertices)."""
        while d > p:
            i = self.faces[d][i][d]
            d -= 1
        return i

    def back(self, d: int, i: int, q: int) -> int:
        """Index of the back q-face (last q+1 vertices)."""
        while d > q:
            i = self.faces[d][i][0]
            d -= 1
        return i

    def chain_complex(self, ring: str = "F2") -> ChainComplex:
        basis = {d: list(range(len(ss))) for d, ss in self.simplices.items()} or {0: []}
        boundary = {}
        for d in basis:
            cols = []
            for i in basis[d]:
                col: dict[int, int] = {}
                if d:
                    for j, f in enumerate(self.faces[d][i]):
                        col[f] = col.get(f, 0) + (-1) ** j
                cols.append(col)
            boundary[d] = cols
        return ChainComplex(ring, basis, boundary, check=False)


# -- models ---------------------------------------------------------------------

def _check_free(sigma: Involution):
    if not sigma.is_free:
        raise NotFreeError("the action fixes a cell; quotient models need a free action")


def _proper_faces(key):
    """All proper faces (nonempty sublists everywhere) of a cell key."""
    options = [submasks(m) for m in key]
    for combo in iproduct(*options):
        if combo != key:
            yield combo


class OrderModel:
    """Order complex of the cell poset and its ordered Delta-complex quotient."""

    kind = "order"

    def __init__(self, X: HomComplex, sigma: Involution, max_dim: int | None = None):
        _check_free(sigma)
        self.X = X
        self.sigma = sigma
        cells = list(X)
        pos = {c: i for i, c in enumerate(cells)}
        below = [[pos[f] for f in _proper_faces(c) if f in pos] for c in cells]
        top = X.dimension if max_dim is None else min(max_dim, X.dimension)
        chains: dict[int, list[tuple[int, ...]]] = {d: [] for d in range(top + 1)}

        def grow(chain):
            chains[len(chain) - 1].append(chain)
            if len(chain) - 1 < top:
                for f in below[chain[0]]:
                    grow((f,) + chain)

        for i in range(len(cells)):
            grow((i,))
        for d in chains:
            chains[d].sort()
        self.cells = cells
        self.vertex_involution = [pos[sigma(c)] for c in cells]
        inv = self.vertex_involution
        index = {d: {s: i for i, s in enumerate(ss)} for d, ss in chains.items()}
        faces = {d: [tuple(index[d - 1][s[:j] + s[j + 1:]] for j in range(d + 1)) for s in ss] if d else []
                 for d, ss in chains.items()}
        self.cover = OrderedDeltaComplex(cells, chains, faces)

        # quotient: orbit of cell i is numbered by position of its representative
        reps = [i for i, c in enumerate(cells) if sigma.sheet(c) == 0]
        self.orbit_of_vertex = {}
        for k, i in enumerate(reps):
            self.orbit_of_vertex[i] = k
            self.orbit_of_vertex[inv[i]] = k
        qsimp: dict[int, list[tuple[int, ...]]] = {}
        self.rep_chain: dict[int, list[tuple[int, ...]]] = {}
        self.orbit_of_chain: dict[tuple[int, ...], tuple[int, int]] = {}
        for d, ss in chains.items():
            qsimp[d] = []
            self.rep_chain[d] = []
            for s in ss:
                if s in self.orbit_of_chain:
                    continue
                t = tuple(inv[v] for v in s)
                if set(s) & set(t):
                    raise SoundnessError(f"chain {s} meets its own orbit; the action is not free")
                if any(a >= b for a, b in zip(t, t[1:])):
                    raise SoundnessError("the action does not preserve the order within a chain")
                k = len(qsimp[d])
                qsimp[d].append(tuple(self.orbit_of_vertex[v] for v in s))
                self.rep_chain[d].append(s)
                self.orbit_of_chain[s] = (d, k)
                self.orbit_of_chain[t] = (d, k)
        qfaces = {d: [tuple(self.orbit_of_chain[s[:j] + s[j + 1:]][1] for j in range(d + 1))
                      for s in self.rep_chain[d]] if d else []
                  for d in qsimp}
        self.quotient = OrderedDeltaComplex([cells[i] for i in reps], qsimp, qfaces)
        self.top = top

    def count(self, d: int) -> int:
        return self.quotient.count(d)

    def quotient_chain(self, ring: str = "F2") -> ChainComplex:
        return self.quotient.chain_complex(ring)

    def sheet_of_vertex(self, v: int) -> int:
        return self.sigma.sheet(self.cells[v])

    def edge_lifts(self):
        """(u, v) cover-vertex lifts of each quotient edge, in quotient order."""
        return [(s[0], s[1]) for s in self.rep_chain.get(1, [])]

    def cup(self, a: int, p: int, b: int, q: int) -> int:
        Q = self.quotient
        out = 0
        for i in range(Q.count(p + q)):
            if (a >> Q.front(p + q, i, p)) & 1 and (b >> Q.back(p + q, i, q)) & 1:
                out |= 1 << i
        return out

    def coboundary_columns(self, k: int) -> list[int]:
        """delta of each (k-1)-cochain basis vector, packed over k-simplices."""
        Q = self.quotient
        cols = [0] * Q.count(k - 1)
        for i, fs in enumerate(Q.faces.get(k, [])):
            for f in fs:
                cols[f] ^= 1 << i
        return cols


class CellularModel:
    """Quotient cochains as invariant cochains on the cells of X."""

    kind = "cellular"

    def __init__(self, X: HomComplex, sigma: Involution, max_dim: int | None = None):
        _check_free(sigma)
        self.X = X
        self.sigma = sigma
        self.top = X.dimension if max_dim is None else min(max_dim, X.dimension)
        self.orbits: dict[int, list[tuple[int, ...]]] = {}
        self.orbit_index: dict[tuple[int, ...], int] = {}
        for d in range(self.top + 1):
            reps = sigma.orbits(d)
            self.orbits[d] = reps
            for k, c in enumerate(reps):
                self.orbit_index[c] = k
                self.orbit_index[sigma(c)] = k
            if 2 * len(reps) != len(X.cells[d]):
                raise SoundnessError(f"dimension {d}: {len(X.cells[d])} cells but {len(reps)} orbits")

    def count(self, d: int) -> int:
        return len(self.orbits.get(d, ()))

    def quotient_chain(self, ring: str = "F2") -> ChainComplex:
        if ring != "F2":
            raise HomcxError("cellular quotient chains are only oriented mod 2")
        basis = {d: list(range(len(cs))) for d, cs in self.orbits.items()} or {0: []}
        boundary = {}
        for d, cs in self.orbits.items():
            cols = []
            for c in cs:
                col: dict[int, int] = {}
                if d:
                    for f, _ in self.X.faces(c):
                        o = self.orbit_index[f]
                        col[o] = col.get(o, 0) + 1
                cols.append(col)
            boundary[d] = cols
        vt = self.X.valid_through()
        if self.top < self.X.dimension:
            vt = self.top - 1 if vt is None else min(vt, self.top - 1)
        return ChainComplex("F2", basis, boundary, vt, check=False)

    def edge_lifts(self):
        out = []
        for e in self.orbits.get(1, []):
            x = next(i for i, m in enumerate(e) if popcount(m) == 2)
            a, b = bits(e[x])
            out.append((e[:x] + (1 << a,) + e[x + 1:], e[:x] + (1 << b,) + e[x + 1:]))
        return out

    def value(self, cochain: int, key) -> int:
        return (cochain >> self.orbit_index[key]) & 1

    def cup(self, a: int, p: int, b: int, q: int) -> int:
        out = 0
        for i, c in enumerate(self.orbits.get(p + q, [])):
            if _product_aw(c, p, lambda f: self.value(a, f), lambda g: self.value(b, g)):
                out |= 1 << i
        return out

    def power_step(self, w: int, prev: int, k: int) -> int:
        """w cup prev for prev of degree k-1 (only splits of front degree one)."""
        out = 0
        for i, c in enumerate(self.orbits.get(k, [])):
            acc = 0
            for x, m in enumerate(c):
                if popcount(m) < 2:
                    continue
                cs = bits(m)
                front = tuple(mm if y == x else 1 << bits(mm)[0] for y, mm in enumerate(c))
                front = front[:x] + ((1 << cs[0]) | (1 << cs[1]),) + front[x + 1:]
                back = c[:x] + (m & ~(1 << cs[0]),) + c[x + 1:]
                acc ^= self.value(w, front) & self.value(prev, back)
            if acc:
                out |= 1 << i
        return out

    def coboundary_columns(self, k: int) -> list[int]:
        cols = [0] * self.count(k - 1)
        for i, c in enumerate(self.orbits.get(k, [])):
            for f, _ in self.X.faces(c):
                cols[self.orbit_index[f]] ^= 1 << i
        return cols


def _product_aw(cell, p: int, a, b) -> int:
    """Sum over per-factor split points s_x (total p) of a(front) * b(back), mod 2."""
    lists = [bits(m) for m in cell]
    dims = [len(l) - 1 for l in lists]
    total = 0

    def rec(x, left, front, back):
        nonlocal total
        if x == len(lists):
            if left == 0 and a(tuple(front)) and b(tuple(back)):
                total ^= 1
            return
        l = lists[x]
        rest = sum(dims[x + 1:])
        for s in range(max(0, left - rest), min(dims[x], left) + 1):
            fm = sum(1 << c for c in l[: s + 1])
            bm = sum(1 << c for c in l[s:])
            rec(x + 1, left - s, front + [fm], back + [bm])

    rec(0, p, [], [])
    return total


def equivariant_model(X: HomComplex, sigma: Involution, method: str = "order", max_dim: int | None = None):
    """Quotient model of a free action; ``method`` is ``order`` or ``cellular``."""
    if sigma.complex is not X:
        raise HomcxError("involution acts on a different complex")
    if method == "order":
        return OrderModel(X, sigma, max_dim)
    if method == "cellular":
        return CellularModel(X, sigma, max_dim)
    raise ValueError("method must be 'order' or 'cellular'")


def quotient_homology(model) -> HomologyResult:
    return homology(model.quotient_chain("F2"))


# -- Stiefel-Whitney data --------------------------------------------------------

@dataclass
class SWClassData:
    model: object
    w: int                                   # packed over quotient edges
    powers: list[int] = field(default_factory=list)
    nonzero: list[bool] = field(default_factory=list)
    height: int | None = None

    @property
    def powers_checked(self) -> int:
        return len(self.nonzero) - 1


def sw1_cocycle(model, sheet=None) -> SWClassData:
    """w(edge) = sheet(u) + sheet(v) for the chosen lift {u, v} of each quotient edge.

    ``sheet`` maps a cover vertex (cell key for the cellular model, cell index
    for the order model) to 0/1 and must take different values on the two
    members of an orbit; the default puts the smaller key on sheet 0.
    """
    if sheet is None:
        sheet = model.sheet_of_vertex if model.kind == "order" else model.sigma.sheet
    w = 0
    for i, (u, v) in enumerate(model.edge_lifts()):
        if sheet(u) ^ sheet(v):
            w |= 1 << i
    if model.top >= 2 and coboundary(model, w, 1):
        raise SoundnessError("w is not a cocycle")
    return SWClassData(model, w)


def coboundary(model, cochain: int, k: int) -> int:
    """delta of a k-cochain, packed over (k+1)-cells."""
    out = 0
    for j, col in enumerate(model.coboundary_columns(k + 1)):
        if (cochain >> j) & 1:
            out ^= col
    return out


def unit_cochain(model) -> int:
    return (1 << model.count(0)) - 1


def cup(model, a: int, p: int, b: int, q: int) -> int:
    return model.cup(a, p, b, q)


def cup_power(model, w: int, k: int) -> int:
    """k-th cup power of a 1-cocycle; w^0 is the unit."""
    x = unit_cochain(model)
    for j in range(1, k + 1):
        x = model.power_step(w, x, j) if model.kind == "cellular" else model.cup(w, 1, x, j - 1)
    return x


def is_coboundary(model, cochain: int, k: int) -> bool:
    if k == 0:
        return cochain == 0
    return gf2.in_column_space(model.coboundary_columns(k), cochain)


def _components(X: HomComplex) -> int:
    verts = X.cells[0] if X.cells else []
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in (X.cells[1] if len(X.cells) > 1 else []):
        (f, _), (g, _) = X.faces(e)
        a, b = find(f), find(g)
        if a != b:
            parent[a] = b
    return len({find(v) for v in verts})


def sw_class(X: HomComplex, sigma: Involution, cap: int, method: str = "auto",
             allow_disconnected: bool = False, order_limit: int = 400) -> SWClassData:
    """w and its powers up to ``cap`` with the largest non-coboundary power as ``height``.

    ``height`` is -1 for an empty complex and 0 when w itself is a coboundary.
    """
    if sigma.complex is not X:
        raise HomcxError("involution acts on a different complex")
    if cap < 0:
        raise ValueError("cap must be non-negative")
    if X.truncated and X.dim_cap < cap:
        raise HomcxError(f"complex truncated at dimension {X.dim_cap}; height up to {cap} needs cells through {cap}")
    if X.is_empty:
        return SWClassData(None, 0, [0], [False], -1)
    comps = _components(X)
    if comps > 1 and not allow_disconnected:
        raise DisconnectedError(
            f"complex has {comps} components; the height of w is defined per component. "
            "Restrict to a component or pass allow_disconnected=True for the global class.")
    if method == "auto":
        method = "order" if len(X) <= order_limit else "cellular"
    cap = min(cap, X.dimension)
    model = equivariant_model(X, sigma, method, max_dim=cap + 1)
    data = sw1_cocycle(model)
    x = unit_cochain(model)
    data.powers = [x]
    data.nonzero = [True]
    for k in range(1, cap + 1):
        x = model.power_step(data.w, x, k) if model.kind == "cellular" else model.cup(data.w, 1, x, k - 1)
        if k < model.top and coboundary(model, x, k):
            raise SoundnessError(f"w^{k} is not a cocycle")
        data.powers.append(x)
        data.nonzero.append(not is_coboundary(model, x, k))
    for k in range(1, len(data.nonzero)):
        if data.nonzero[k] and not data.nonzero[k - 1]:
            raise SoundnessError(f"w^{k} is nonzero although w^{k - 1} vanishes")
    data.height = max(k for k, nz in enumerate(data.nonzero) if nz)
    return data


def sw_height(X: HomComplex, sigma: Involution, cap: int, method: str = "auto",
              allow_disconnected: bool = False) -> int:
    """Largest k <= cap with w^k not a coboundary in the quotient."""
    return sw_class(X, sigma, cap, method, allow_disconnected).height


# -- maps between quotients -----------------------------------------------------

def check_equivariant(f, sigma: Involution, tau: Involution) -> bool:
    """f o sigma == tau o f on every cell of the source."""
    return all(f(sigma(c)) == tau(f(c)) for c in f.source)


def quotient_chain_map(f, source_model, target_model) -> ChainMap:
    """Mod-2 chain map between quotient complexes induced by an equivariant map."""
    if not check_equivariant(f, source_model.sigma, target_model.sigma):
        raise HomcxError("map does not intertwine the two involutions")
    S = source_model.quotient_chain("F2")
    T = target_model.quotient_chain("F2")
    images: dict[int, list[dict]] = {}
    if source_model.kind == "cellular" and target_model.kind == "cellular":
        for d, reps in source_model.orbits.items():
            imgs = []
            for c in reps:
                img = f(c)
                if cell_dim(img) > d:
                    raise HomcxError("map raises cell dimension")
                imgs.append({target_model.orbit_index[img]: 1} if cell_dim(img) == d and d <= target_model.top else {})
            images[d] = imgs
    elif source_model.kind == "order" and target_model.kind == "order":
        tpos = {c: i for i, c in enumerate(target_model.cells)}
        for d, chains in source_model.rep_chain.items():
            imgs = []
            for s in chains:
                t = tuple(tpos[f(source_model.cells[v])] for v in s)
                if len(set(t)) == len(t) and t in target_model.orbit_of_chain:
                    imgs.append({target_model.orbit_of_chain[t][1]: 1})
                else:
                    imgs.append({})
            images[d] = imgs
    else:
        raise HomcxError("both models must be of the same kind")
    return ChainMap(S, T, images)


def quotient_induced_map(f, source_model, target_model, degrees: Sequence[int] | None = None):
    """Matrices over GF(2) of the induced map on quotient homology, per degree."""
    g = quotient_chain_map(f, source_model, target_model)
    vt = g.source.valid_through
    if degrees is None:
        degrees = [d for d in g.source.degrees if vt is None or d <= vt]
    return induced_map_homology(g, degrees)
