"""Support filtration of C_*(Hom_+(G, K_n)), its E^1 page, d^1, E^2 rows and,
over GF(2), the higher pages.

Filtration degree of a simplex is ``|supp| - 1``.  Page entries are indexed
``(d, s)`` with ``d`` the homological degree and ``s`` the filtration degree;
``d^1`` maps ``(d, s)`` to ``(d - 1, s - 1)``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from itertools import combinations

from . import gf2
from .chains import ChainComplex, HomologyBasis, HomologyResult, homology, simplicial_chain
from .errors import SoundnessError
from .graphs import Graph, complete, induced
from .hom import build_hom, build_hom_plus, plus_cell, plus_simplex, support
from .intmat import column_echelon, matmul, smith_form


class SupportFiltration:
    """F_s spanned by simplices of Hom_+(G, K_n) with at most s+1 supported vertices."""

    def __init__(self, G: Graph, n: int, ring: str = "Z"):
        self.G = G
        self.n = n
        self.H = complete(n)
        self.complex = build_hom_plus(G, self.H)
        self.ring = ring
        self.chains = simplicial_chain(self.complex, ring)
        self.length = G.n  # flags F_0 .. F_{length-1}
        for s in range(self.length):
            if not self.chains.subcomplex_closed(lambda d, lab, s=s: self.level(lab) <= s):
                raise SoundnessError(f"F_{s} is not closed under the boundary")

    def level(self, simplex) -> int:
        return len({v // self.n for v in simplex}) - 1

    def member(self, s: int):
        return lambda d, lab: self.level(lab) <= s

    def flag(self, s: int) -> ChainComplex:
        return self.chains.subcomplex(self.member(s), check=False)

    def layer(self, s: int) -> ChainComplex:
        """The relative complex F_s / F_{s-1}."""
        return self.chains._restrict(lambda d, lab: self.level(lab) == s)

    def cell_of(self, simplex) -> tuple[int, ...]:
        return plus_cell(simplex, self.G.n, self.n)


# -- E^1 ---------------------------------------------------------------------------

@dataclass
class E1Page:
    filtration: SupportFiltration
    ring: str
    groups: dict[tuple[int, int], HomologyBasis]
    d1: dict[tuple[int, int], list[list[int]]]   # (d, s) -> matrix into (d-1, s-1)
    layers: dict[int, ChainComplex] = field(repr=False, default_factory=dict)

    def rank(self, d: int, s: int) -> int:
        b = self.groups.get((d, s))
        return b.rank if b else 0

    def torsion(self, d: int, s: int) -> list[int]:
        b = self.groups.get((d, s))
        return [o for o in b.orders if o] if b else []

    def orders(self, d: int, s: int) -> list[int]:
        b = self.groups.get((d, s))
        return list(b.orders) if b else []

    def entries(self):
        return sorted(self.groups)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * self.rank(d, s) for d, s in self.groups)

    def check_d1_squared(self) -> bool:
        for (d, s), A in self.d1.items():
            B = self.d1.get((d - 1, s - 1))
            if B is None or not A or not B or not A[0] or not B[0]:
                continue
            P = matmul(B, A)
            tgt = self.orders(d - 2, s - 2)
            for i, row in enumerate(P):
                o = 2 if self.ring == "F2" else (tgt[i] if i < len(tgt) else 0)
                if any((v % o if o else v) for v in row):
                    return False
        return True


def e1_page(F: SupportFiltration, ring: str | None = None) -> E1Page:
    ring = ring or F.ring
    C = F.chains if ring == F.ring else F.chains.with_ring(ring)
    layers = {}
    groups = {}
    for s in range(F.length):
        Q = C._restrict(lambda d, lab, s=s: F.level(lab) == s)
        layers[s] = Q
        for d in Q.degrees:
            groups[(d, s)] = None
    # one tracked reduction per layer, shared between degrees
    from .chains import HomologyEngine
    engines = {s: HomologyEngine(Q) for s, Q in layers.items()}
    for (d, s) in list(groups):
        groups[(d, s)] = engines[s].basis(d)
    groups = {k: b for k, b in groups.items() if len(b)}
    index = {d: C.index(d) for d in C.degrees}
    d1 = {}
    for (d, s), src in groups.items():
        tgt = groups.get((d - 1, s - 1))
        if tgt is None:
            continue
        Qs, Qt = layers[s], layers[s - 1]
        t_index = Qt.index(d - 1)
        cols = []
        for rep in src.representatives:
            full = {index[d][Qs.basis[d][j]]: v for j, v in rep.items()}
            bd = C.boundary_of(full, d)
            proj = {}
            for i, v in bd.items():
                lab = C.basis[d - 1][i]
                if lab in t_index:
                    proj[t_index[lab]] = v
            cols.append(tgt.coordinates(proj))
        d1[(d, s)] = [[cols[j][i] for j in range(len(cols))] for i in range(len(tgt))]
    page = E1Page(F, ring, groups, d1, layers)
    return page


def support_filtration(G: Graph, n: int, ring: str = "Z") -> SupportFiltration:
    return SupportFiltration(G, n, ring)


# -- splitting -----------------------------------------------------------------------

def _twist(key, S_mask: int) -> int:
    """(-1)^(sum_x (|eta(x)|-1) * #(S before x)) relating simplicial and cellular signs."""
    e = 0
    before = 0
    for x, m in enumerate(key):
        if (S_mask >> x) & 1:
            e += (bin(m).count("1") - 1) * before
            before += 1
    return -1 if e & 1 else 1


def verify_e1_splitting(G: Graph, n: int, s: int, F: SupportFiltration | None = None) -> bool:
    """F_s / F_{s-1} equals the sum over (s+1)-subsets S of C_*(Hom(G[S], K_n)) shifted by s.

    Compared as based complexes over Z: each cell of Hom(G[S], K_n) goes to
    the simplex of the same (vertex, color) pairs, with a sign twist.
    """
    F = F or SupportFiltration(G, n, "Z")
    Q = F.layer(s)
    H = complete(n)
    seen = {d: set() for d in Q.degrees}
    q_index = {d: Q.index(d) for d in Q.degrees}
    for S in combinations(range(G.n), s + 1):
        GS, relabel = induced(G, list(S))
        X = build_hom(GS, H)
        Smask = sum(1 << x for x in S)
        for dim, cells in enumerate(X.cells):
            for c in cells:
                key = [0] * G.n
                for i, x in enumerate(relabel):
                    key[x] = c[i]
                key = tuple(key)
                simplex = plus_simplex(key, n)
                d = dim + s
                if d not in q_index or simplex not in q_index[d]:
                    return False
                seen[d].add(simplex)
                j = q_index[d][simplex]
                expected = {}
                for f, sign in X.faces(c):
                    fk = [0] * G.n
                    for i, x in enumerate(relabel):
                        fk[x] = f[i]
                    fk = tuple(fk)
                    row = q_index[d - 1][plus_simplex(fk, n)]
                    expected[row] = sign * _twist(fk, Smask) * _twist(key, Smask)
                if Q.boundary[d][j] != expected:
                    return False
    return all(len(seen[d]) == Q.dim(d) for d in Q.degrees)


# -- E^2 over Z ----------------------------------------------------------------------

@dataclass
class GroupSummary:
    rank: int
    torsion: list[int]

    def __str__(self):
        parts = (["Z" if self.rank == 1 else f"Z^{self.rank}"] if self.rank else []) + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def _lattice_basis(gens: list[list[int]], dim: int) -> list[list[int]]:
    """Basis (as columns) of the lattice generated by column vectors ``gens``."""
    if not gens:
        return []
    A = [[g[i] for g in gens] for i in range(dim)]
    ce = column_echelon(A, dim, len(gens))
    AV = matmul(A, ce.V)
    return [[AV[i][j] for i in range(dim)] for j in range(ce.rank)]


def _coordinates(basis: list[list[int]], vec: list[int]) -> list[int]:
    """Integer coordinates of ``vec`` in a column-echelon lattice basis."""
    dim = len(vec)
    y = []
    rest = list(vec)
    for col in basis:
        piv = next(i for i in range(dim) if col[i])
        if rest[piv] % col[piv]:
            raise SoundnessError("vector is not in the lattice")
        c = rest[piv] // col[piv]
        y.append(c)
        for i in range(dim):
            rest[i] -= c * col[i]
    if any(rest):
        raise SoundnessError("vector is not in the lattice")
    return y


def _subquotient(K: list[list[int]], M: list[list[int]], dim: int) -> GroupSummary:
    """Structure of lattice(K) / lattice(M), assuming M is contained in K."""
    Kb = _lattice_basis(K, dim)
    k = len(Kb)
    coords = [_coordinates(Kb, m) for m in M]
    A = [[c[i] for c in coords] for i in range(k)]
    diag = smith_form(A, k, len(coords), transforms=False).diagonal if coords and k else []
    return GroupSummary(k - len(diag), [x for x in diag if x > 1])


def _kernel_lattice(F_mat: list[list[int]], src_dim: int, tgt_orders: list[int]) -> list[list[int]]:
    """Generators of {x in Z^src_dim : F x = 0 in the target group}."""
    rels = [o for o in tgt_orders]
    nt = len(tgt_orders)
    ncols = src_dim + nt
    A = [[(F_mat[i][j] if j < src_dim else (-rels[i] if j - src_dim == i else 0)) for j in range(ncols)]
         for i in range(nt)]
    if nt == 0:
        return [[1 if i == j else 0 for i in range(src_dim)] for j in range(src_dim)]
    ce = column_echelon(A, nt, ncols)
    return [[ce.V[i][j] for i in range(src_dim)] for j in range(ce.rank, ncols)]


def e2_entry(E1: E1Page, d: int, s: int) -> GroupSummary:
    """Homology of E^1 along d^1 at (d, s)."""
    orders = E1.orders(d, s)
    a = len(orders)
    if a == 0:
        return GroupSummary(0, [])
    if E1.ring == "F2":
        out_map = E1.d1.get((d, s))
        in_map = E1.d1.get((d + 1, s + 1))
        r_out = gf2.rank(gf2.pack(i for i, v in enumerate(col) if v & 1)
                         for col in zip(*out_map)) if out_map and out_map[0] else 0
        r_in = gf2.rank(gf2.pack(i for i, v in enumerate(col) if v & 1)
                        for col in zip(*in_map)) if in_map and in_map[0] else 0
        return GroupSummary(a - r_out - r_in, [])
    out_map = E1.d1.get((d, s))
    if out_map is not None and out_map and out_map[0]:
        K = _kernel_lattice(out_map, a, E1.orders(d - 1, s - 1))
    else:
        K = [[1 if i == j else 0 for i in range(a)] for j in range(a)]
    M = [[o if i == j else 0 for i in range(a)] for j, o in enumerate(orders) if o]
    in_map = E1.d1.get((d + 1, s + 1))
    if in_map is not None and in_map and in_map[0]:
        M += [[in_map[i][j] for i in range(a)] for j in range(len(in_map[0]))]
    return _subquotient(K + M, M, a)


def e2_row(E1: E1Page, offset: int) -> dict[tuple[int, int], GroupSummary]:
    """E^2 along the d^1-line of entries (s + offset, s)."""
    out = {}
    for s in range(E1.filtration.length):
        d = s + offset
        out[(d, s)] = e2_entry(E1, d, s)
    return out


# -- higher pages over GF(2) ----------------------------------------------------------

def spectral_pages_f2(F: SupportFiltration, max_page: int | None = None) -> dict[int, dict[tuple[int, int], int]]:
    """Dimensions of E^r_{d,s} over GF(2) for r = 1 .. max_page (default: until stable)."""
    C = F.chains.with_ring("F2")
    lev = {d: [F.level(lab) for lab in C.basis[d]] for d in C.degrees}
    cols = {d: [gf2.pack(c) for c in C.boundary[d]] for d in C.degrees}
    L = F.length
    max_page = max_page or L + 1

    def fmask(d, p):
        return gf2.pack(i for i, l in enumerate(lev.get(d, [])) if l <= p)

    def Z(r, p, d):
        """Basis of {x in F_p C_d : boundary(x) in F_{p-r}}."""
        if p < 0:
            return []
        keep = [i for i, l in enumerate(lev.get(d, [])) if l <= p]
        if d - 1 not in lev:
            return [1 << i for i in keep]
        outside = ~fmask(d - 1, p - r)
        null = gf2.nullspace([cols[d][i] & outside for i in keep])
        out = []
        for tag in null:
            v = 0
            for t in gf2.unpack(tag):
                v |= 1 << keep[t]
            out.append(v)
        return out

    def boundary(vec, d):
        out = 0
        for i in gf2.unpack(vec):
            out ^= cols[d][i]
        return out

    pages = {}
    for r in range(1, max_page + 1):
        page = {}
        for d in C.degrees:
            for p in range(L):
                top = Z(r, p, d)
                if not top:
                    continue
                span = gf2.GF2Span()
                for v in Z(r - 1, p - 1, d):
                    span.add(v)
                if d + 1 in cols:
                    for v in Z(r - 1, p + r - 1, d + 1):
                        span.add(boundary(v, d + 1))
                # the denominator sits inside Z^r_p, so dimensions subtract
                dim = len(top) - len(span)
                if dim:
                    page[(d, p)] = dim
        pages[r] = page
    return pages


def abutment_check(F: SupportFiltration) -> bool:
    """Total GF(2) dimension of E^infinity per degree equals that of H_*(Hom_+)."""
    pages = spectral_pages_f2(F)
    final = pages[max(pages)]
    H = homology(F.chains.with_ring("F2"))
    totals: dict[int, int] = {}
    for (d, _), v in final.items():
        totals[d] = totals.get(d, 0) + v
    return all(totals.get(d, 0) == H.rank(d) for d in set(totals) | set(H.betti))


# -- dumps ------------------------------------------------------------------------------

def tableau_csv(E1: E1Page) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["d", "s", "rank", "torsion"])
    for d, s in E1.entries():
        w.writerow([d, s, E1.rank(d, s), " ".join(str(t) for t in E1.torsion(d, s))])
    return buf.getvalue()
