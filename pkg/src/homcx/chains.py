"""Chain complexes over GF(2) or Z, homology, relative homology and induced maps."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

from . import gf2
from .errors import FormatError, NotChainMapError, SoundnessError
from .intmat import column_echelon, matvec, smith_form
from .reduction import ChainReduction

RINGS = ("F2", "Z")


class ChainComplex:
    """Graded free module with sparse boundary columns.

    ``basis[d]`` lists labels of degree-``d`` generators; ``boundary[d][j]``
    maps row index (in degree ``d-1``) to coefficient for generator ``j``.
    ``valid_through`` is the highest degree whose homology is trustworthy
    (``None`` means all degrees).
    """

    def __init__(self, ring: str, basis: dict[int, Sequence[Hashable]], boundary: dict[int, list[dict]],
                 valid_through: int | None = None, check: bool = True):
        if ring not in RINGS:
            raise ValueError(f"ring must be one of {RINGS}")
        self.ring = ring
        self.basis = {d: list(b) for d, b in basis.items()}
        self.boundary = {}
        for d in self.basis:
            cols = boundary.get(d)
            if cols is None:
                cols = [{} for _ in self.basis[d]]
            if len(cols) != len(self.basis[d]):
                raise ValueError(f"degree {d}: {len(cols)} boundary columns for {len(self.basis[d])} generators")
            if ring == "F2":
                cols = [{i: 1 for i, v in c.items() if v % 2} for c in cols]
            else:
                cols = [{i: v for i, v in c.items() if v} for c in cols]
            self.boundary[d] = cols
        self.valid_through = valid_through
        if check:
            self.check_d2()

    @property
    def degrees(self) -> list[int]:
        return sorted(self.basis)

    def dim(self, d: int) -> int:
        return len(self.basis.get(d, ()))

    def ranks(self) -> dict[int, int]:
        return {d: self.dim(d) for d in self.degrees}

    def index(self, d: int) -> dict:
        return {lab: i for i, lab in enumerate(self.basis.get(d, ()))}

    def boundary_of(self, chain: dict, d: int) -> dict:
        out = {}
        cols = self.boundary.get(d, [])
        for j, c in chain.items():
            for i, v in cols[j].items():
                out[i] = out.get(i, 0) + c * v
        return self._clean(out)

    def _clean(self, chain: dict) -> dict:
        if self.ring == "F2":
            return {k: 1 for k, v in chain.items() if v % 2}
        return {k: v for k, v in chain.items() if v}

    def check_d2(self):
        """Assert d_{d-1} o d_d == 0 exactly in every degree."""
        for d in self.degrees:
            if d - 1 not in self.basis:
                continue
            for j, col in enumerate(self.boundary[d]):
                if self.boundary_of(col, d - 1):
                    raise SoundnessError(f"boundary squared is nonzero on generator {self.basis[d][j]!r} (degree {d})")

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * self.dim(d) for d in self.degrees)

    def with_ring(self, ring: str) -> "ChainComplex":
        return ChainComplex(ring, self.basis, self.boundary, self.valid_through, check=False)

    def shift(self, k: int) -> "ChainComplex":
        """The complex C[k]: degree d moves to d + k."""
        vt = None if self.valid_through is None else self.valid_through + k
        return ChainComplex(self.ring, {d + k: b for d, b in self.basis.items()},
                            {d + k: c for d, c in self.boundary.items()}, vt, check=False)

    def augmented(self) -> "ChainComplex":
        """Append the augmentation to a single degree -1 generator (reduced homology)."""
        if -1 in self.basis:
            raise ValueError("complex already has a degree -1 term")
        basis = dict(self.basis)
        boundary = dict(self.boundary)
        basis[-1] = ["*"]
        boundary[-1] = [{}]
        boundary[0] = [{0: 1} for _ in self.boundary.get(0, [])]
        if 0 not in basis:
            basis[0] = []
            boundary[0] = []
        return ChainComplex(self.ring, basis, boundary, self.valid_through, check=False)

    def subcomplex_closed(self, member: Callable[[int, Hashable], bool]) -> bool:
        for d in self.degrees:
            below = self.basis.get(d - 1, [])
            for j, lab in enumerate(self.basis[d]):
                if member(d, lab):
                    for i in self.boundary[d][j]:
                        if not member(d - 1, below[i]):
                            return False
        return True

    def quotient(self, member: Callable[[int, Hashable], bool], check: bool = True) -> "ChainComplex":
        """C / S where S is spanned by generators with ``member(d, label)`` true."""
        if check and not self.subcomplex_closed(member):
            raise ValueError("generators selected by the predicate do not span a subcomplex")
        return self._restrict(lambda d, lab: not member(d, lab))

    def subcomplex(self, member: Callable[[int, Hashable], bool], check: bool = True) -> "ChainComplex":
        if check and not self.subcomplex_closed(member):
            raise ValueError("generators selected by the predicate do not span a subcomplex")
        return self._restrict(member)

    def _restrict(self, keep) -> "ChainComplex":
        new_index = {}
        basis = {}
        for d in self.degrees:
            kept = [j for j, lab in enumerate(self.basis[d]) if keep(d, lab)]
            new_index[d] = {j: k for k, j in enumerate(kept)}
            basis[d] = [self.basis[d][j] for j in kept]
        boundary = {}
        for d in self.degrees:
            below = new_index.get(d - 1, {})
            boundary[d] = [{below[i]: v for i, v in self.boundary[d][j].items() if i in below}
                           for j in new_index[d]]
        return ChainComplex(self.ring, basis, boundary, self.valid_through, check=False)

    def __repr__(self):
        return f"<ChainComplex {self.ring} ranks={[self.dim(d) for d in self.degrees]} degrees={self.degrees}>"


# -- homology -----------------------------------------------------------------

@dataclass
class HomologyResult:
    ring: str
    betti: dict[int, int]
    torsion: dict[int, list[int]] = field(default_factory=dict)
    valid_through: int | None = None

    def rank(self, d: int) -> int:
        return self.betti.get(d, 0)

    def torsion_of(self, d: int) -> list[int]:
        return self.torsion.get(d, [])

    def is_zero(self, degrees=None) -> bool:
        ds = self.degrees if degrees is None else degrees
        return all(self.rank(d) == 0 and not self.torsion_of(d) for d in ds)

    @property
    def degrees(self) -> list[int]:
        ds = sorted(set(self.betti) | set(self.torsion))
        if self.valid_through is not None:
            ds = [d for d in ds if d <= self.valid_through]
        return ds

    def group(self, d: int) -> str:
        parts = []
        r = self.rank(d)
        base = "Z" if self.ring == "Z" else "F2"
        if r:
            parts.append(base if r == 1 else f"{base}^{r}")
        parts += [f"Z/{t}" for t in self.torsion_of(d)]
        return " + ".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {
            "ring": self.ring,
            "betti": {str(d): self.rank(d) for d in self.degrees},
            "torsion": {str(d): self.torsion_of(d) for d in self.degrees if self.torsion_of(d)},
            "valid_through": self.valid_through,
        }

    def __str__(self):
        return ", ".join(f"H{d}={self.group(d)}" for d in self.degrees)


def _f2_rank(C: ChainComplex, d: int) -> int:
    return gf2.rank(gf2.pack(col) for col in C.boundary.get(d, []))


def homology(C: ChainComplex) -> HomologyResult:
    """Betti numbers (and torsion over Z) in every degree of ``C``.

    GF(2) uses packed bitset elimination; Z uses unit-pivot reduction followed
    by a dense Smith normal form on the residual matrices.
    """
    degrees = C.degrees
    if C.ring == "F2":
        rk = {d: _f2_rank(C, d) for d in degrees}
        torsion = {}
    else:
        red = ChainReduction(C, track=False)
        torsion = {}
        rk = {}
        for d in degrees:
            rows, cols, M = red.reduced_matrix(d)
            diag = smith_form(M, len(rows), len(cols), transforms=False).diagonal if rows and cols else []
            # each unit pivot in degree d contributed one to the rank of d_d
            rk[d] = len(diag) + red.pair_count.get(d, 0)
            torsion[d - 1] = [x for x in diag if x > 1]
    betti = {}
    for d in degrees:
        betti[d] = C.dim(d) - rk.get(d, 0) - rk.get(d + 1, 0)
    torsion = {d: t for d, t in torsion.items() if t and d in C.basis}
    return HomologyResult(C.ring, betti, torsion, C.valid_through)


class HomologyBasis:
    """Chosen generators of H_d and coordinates of cycles against them.

    ``orders[i]`` is 0 for a free generator and the torsion order otherwise
    (over GF(2) every order is 0, i.e. a vector-space basis).
    """

    def __init__(self, C: ChainComplex, d: int, reduction: ChainReduction | None = None):
        self.complex = C
        self.degree = d
        self.ring = C.ring
        self.reduction = red = reduction or ChainReduction(C, track=True)
        if C.ring == "F2":
            self.cells = sorted(red.alive.get(d, ()))
            self._pos = {c: i for i, c in enumerate(self.cells)}
            self.orders = [0] * len(self.cells)
            self.representatives = [red.lift({c: 1}, d) for c in self.cells]
            return
        _, self.cells, A = red.reduced_matrix(d)
        _, _, B = red.reduced_matrix(d + 1)
        n = len(self.cells)
        self._pos = {c: i for i, c in enumerate(self.cells)}
        ncols_b = len(red.alive.get(d + 1, ()))
        ce = column_echelon(A, len(A), n)
        self._echelon = ce
        r = ce.rank
        k = n - r
        Vinv_B = [matvec(ce.V_inv, [B[i][j] for i in range(n)]) for j in range(ncols_b)]
        M = [[Vinv_B[j][r + i] for j in range(ncols_b)] for i in range(k)]
        snf = smith_form(M, k, ncols_b)
        self._snf = snf
        orders = []
        keep = []
        for i in range(k):
            o = snf.diagonal[i] if i < snf.rank else 0
            if o != 1:
                keep.append(i)
                orders.append(o)
        self._keep = keep
        self.orders = orders
        self.representatives = []
        for i in keep:
            # generator = K @ P_inv[:, i], with K the last k columns of V
            coeffs = [snf.P_inv[t][i] for t in range(k)]
            vec = [sum(ce.V[row][r + t] * coeffs[t] for t in range(k)) for row in range(n)]
            chain = {self.cells[row]: v for row, v in enumerate(vec) if v}
            self.representatives.append(red.lift(chain, d))

    def __len__(self):
        return len(self.orders)

    @property
    def rank(self) -> int:
        return sum(1 for o in self.orders if o == 0)

    def coordinates(self, cycle: dict) -> list[int]:
        """Coordinates of the class of an original-basis cycle."""
        red = self.reduction
        if self.complex.boundary_of(cycle, self.degree):
            raise ValueError("chain is not a cycle")
        z = red.project(cycle, self.degree)
        if self.ring == "F2":
            out = [0] * len(self.cells)
            for c, v in z.items():
                out[self._pos[c]] = v & 1
            return out
        n = len(self.cells)
        y = [0] * n
        for c, v in z.items():
            y[self._pos[c]] = v
        ce = self._echelon
        w = matvec(ce.V_inv, y)
        if any(w[: ce.rank]):
            raise SoundnessError("projected cycle is not a cycle of the reduced complex")
        h = matvec(self._snf.P, w[ce.rank:]) if self._snf.P else []
        out = []
        for i, o in zip(self._keep, self.orders):
            out.append(h[i] % o if o else h[i])
        return out


class HomologyEngine:
    """Shares one tracked reduction between degrees."""

    def __init__(self, C: ChainComplex):
        self.complex = C
        self.reduction = ChainReduction(C, track=True)
        self._bases: dict[int, HomologyBasis] = {}

    def basis(self, d: int) -> HomologyBasis:
        if d not in self._bases:
            self._bases[d] = HomologyBasis(self.complex, d, self.reduction)
        return self._bases[d]


def relative_homology(C: ChainComplex, member: Callable[[int, Hashable], bool]) -> HomologyResult:
    """Homology of C / S, S spanned by generators where ``member`` holds."""
    return homology(C.quotient(member))


# -- chain maps ---------------------------------------------------------------

class ChainMap:
    """Linear map between complexes, ``images[d][j]`` a target chain dict."""

    def __init__(self, source: ChainComplex, target: ChainComplex, images: dict[int, list[dict]], shift: int = 0):
        self.source = source
        self.target = target
        self.images = images
        self.shift = shift

    def apply(self, chain: dict, d: int) -> dict:
        out = {}
        imgs = self.images.get(d, [])
        for j, c in chain.items():
            for i, v in imgs[j].items():
                out[i] = out.get(i, 0) + c * v
        return self.target._clean(out)

    def verify(self):
        """Raise NotChainMapError unless boundary and map commute."""
        vt = self.source.valid_through
        for d in self.source.degrees:
            if vt is not None and d > vt + 1:
                continue
            if d + self.shift - 1 not in self.target.basis and d - 1 not in self.source.basis:
                continue
            for j in range(self.source.dim(d)):
                lhs = self.target.boundary_of(self.apply({j: 1}, d), d + self.shift) \
                    if d + self.shift in self.target.basis else {}
                rhs = self.apply(self.source.boundary[d][j], d - 1) if d - 1 in self.source.basis else {}
                if self.target._clean({k: lhs.get(k, 0) - rhs.get(k, 0) for k in set(lhs) | set(rhs)}):
                    raise NotChainMapError(f"map does not commute with boundary on {self.source.basis[d][j]!r}")

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self o other``."""
        images = {}
        for d, imgs in other.images.items():
            images[d] = [self.apply(c, d + other.shift) for c in imgs]
        return ChainMap(other.source, self.target, images, self.shift + other.shift)


@dataclass
class InducedMap:
    degree: int
    matrix: list[list[int]]     # rows: target generators, cols: source generators
    source_orders: list[int]
    target_orders: list[int]

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.matrix for v in row)


def induced_on_homology(src: HomologyBasis, tgt: HomologyBasis, fn: Callable[[dict], dict]) -> InducedMap:
    """Matrix of ``fn`` (a chain-level map taking cycles to cycles) on homology."""
    cols = [tgt.coordinates(fn(rep)) for rep in src.representatives]
    matrix = [[cols[j][i] for j in range(len(cols))] for i in range(len(tgt))]
    return InducedMap(src.degree, matrix, list(src.orders), list(tgt.orders))


def induced_map_homology(f: ChainMap, degrees: Sequence[int] | None = None, verify: bool = True) -> dict[int, InducedMap]:
    if verify:
        f.verify()
    src_engine = HomologyEngine(f.source)
    tgt_engine = HomologyEngine(f.target)
    out = {}
    for d in (degrees if degrees is not None else f.source.degrees):
        if d + f.shift not in f.target.basis:
            continue
        s, t = src_engine.basis(d), tgt_engine.basis(d + f.shift)
        out[d] = induced_on_homology(s, t, lambda c, d=d: f.apply(c, d))
    return out


# -- builders -----------------------------------------------------------------

def simplicial_chain(K, ring: str = "Z", reduced: bool = False) -> ChainComplex:
    """Ordered simplicial chains: face i of (v0<...<vd) carries sign (-1)^i."""
    by_dim = K.by_dim()
    basis = {d: list(s) for d, s in by_dim.items()}
    if not basis:
        basis = {0: []}
    index = {d: {s: i for i, s in enumerate(ss)} for d, ss in basis.items()}
    boundary = {}
    for d, ss in basis.items():
        cols = []
        for s in ss:
            col = {}
            if d > 0:
                for i in range(len(s)):
                    col[index[d - 1][s[:i] + s[i + 1:]]] = (-1) ** i
            cols.append(col)
        boundary[d] = cols
    C = ChainComplex(ring, basis, boundary, check=False)
    return C.augmented() if reduced else C


def homological_connectivity(X, ring: str = "Z") -> int:
    """Largest k with reduced H_i = 0 for all i <= k (lower-bound semantics).

    -2 for the empty complex, -1 for nonempty but disconnected.  Degrees above
    ``valid_through`` (truncated complexes) are never trusted, and an acyclic
    range is reported as its top degree.
    """
    C = X if isinstance(X, ChainComplex) else to_chain_complex(X, ring)
    if all(C.dim(d) == 0 for d in C.degrees):
        return -2
    H = homology(C.augmented())
    top = max(C.degrees)
    if C.valid_through is not None:
        top = min(top, C.valid_through)
    k = -1
    for d in range(0, top + 1):
        if H.rank(d) or H.torsion_of(d):
            return k
        k = d
    return k


def to_chain_complex(X, ring: str = "Z") -> ChainComplex:
    from .simplicial import SimplicialComplex
    if isinstance(X, SimplicialComplex):
        return simplicial_chain(X, ring)
    if hasattr(X, "chain_complex"):
        return X.chain_complex(ring)
    raise TypeError(f"cannot build a chain complex from {type(X).__name__}")


def write_matrix_dump(C: ChainComplex) -> str:
    """Sparse triplet dump: per degree a header ``degree rows cols nnz`` then ``nnz`` lines ``i j v``."""
    lines = []
    for d in C.degrees:
        if d - 1 not in C.basis:
            continue
        entries = [(i, j, col[i]) for j, col in enumerate(C.boundary[d]) for i in sorted(col)]
        lines.append(f"{d} {C.dim(d - 1)} {C.dim(d)} {len(entries)}")
        lines += [f"{i} {j} {v}" for i, j, v in entries]
    return "\n".join(lines) + "\n"


def read_matrix_dump(text: str) -> dict[int, tuple[int, int, list[tuple[int, int, int]]]]:
    """Inverse of :func:`write_matrix_dump`: degree -> (rows, cols, triplets)."""
    out = {}
    lines = [l.split() for l in text.splitlines() if l.strip()]
    k = 0
    while k < len(lines):
        if len(lines[k]) != 4:
            raise FormatError("expected header 'degree rows cols nnz'", k + 1)
        d, rows, cols, nnz = map(int, lines[k])
        trip = []
        for t in range(k + 1, k + 1 + nnz):
            if t >= len(lines) or len(lines[t]) != 3:
                raise FormatError("expected triplet 'i j v'", t + 1)
            trip.append(tuple(map(int, lines[t])))
        out[d] = (rows, cols, trip)
        k += 1 + nnz
    return out
