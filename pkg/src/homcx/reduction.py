"""Algebraic reduction of chain complexes by unit pivots.

Removing a pair ``(a, b)`` with ``<da, b> = eps`` a unit gives a chain
homotopy equivalent complex with two fewer generators:

* boundary:   d'x = dx - eps^-1 <dx, b> da            (x in degree of a)
* projection: f(y) = y - eps^-1 <y, b> da               (y one degree below a)
              f(x) = x with the a-coefficient dropped
* inclusion:  g(x) = x - eps^-1 <d_t x, b> a

Every step is recorded so chains can be pushed to the reduced complex
(``project``) and reduced cycles pulled back to representatives in the
original complex (``lift``).
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass
class _Step:
    degree: int          # degree of a
    a: int
    b: int
    eps: int
    col_a: dict          # d a at the time of the step (contains b)
    row_b: dict          # x -> <d x, b> for the other columns alive at the time


class ChainReduction:
    """Exhaustive unit-pivot reduction of a ChainComplex.

    After construction ``alive[d]`` lists the surviving basis indices and
    ``cols[d]`` the reduced boundary columns.  Over GF(2) the reduced
    boundary is identically zero.
    """

    def __init__(self, C, track: bool = True):
        self.ring = C.ring
        self.mod2 = C.ring == "F2"
        self.track = track
        self.degrees = list(C.degrees)
        self.cols = {}
        self.rows = {}
        for d in self.degrees:
            cols = {}
            rows = {}
            for j, col in enumerate(C.boundary.get(d, [])):
                clean = {}
                for i, v in col.items():
                    v = v & 1 if self.mod2 else v
                    if v:
                        clean[i] = v
                cols[j] = clean
                for i in clean:
                    rows.setdefault(i, set()).add(j)
            self.cols[d] = cols
            self.rows[d] = rows
        self.alive = {d: set(range(C.dim(d))) for d in self.degrees}
        self.steps: list[_Step] = []
        self.pair_count: dict[int, int] = {}
        self._run()

    # -- reduction ---------------------------------------------------------
    def _is_unit(self, v: int) -> bool:
        return v == 1 or v == -1

    def _run(self):
        for d in sorted(self.degrees, reverse=True):
            cols, rows = self.cols[d], self.rows[d]
            pending = sorted(cols, key=lambda j: (len(cols[j]), j))
            while pending:
                nxt = []
                for a in pending:
                    col = cols.get(a)
                    if not col:
                        continue
                    best = None
                    for b, v in col.items():
                        if self._is_unit(v):
                            w = len(rows[b])
                            if best is None or w < best[0] or (w == best[0] and b < best[1]):
                                best = (w, b)
                    if best is None:
                        continue
                    nxt.extend(self._pivot(d, a, best[1]))
                pending = sorted({j for j in nxt if j in cols}, key=lambda j: (len(cols[j]), j))

    def _pivot(self, d, a, b):
        cols, rows = self.cols[d], self.rows[d]
        col_a = cols[a]
        eps = col_a[b]
        others = [x for x in rows[b] if x != a]
        row_b = {}
        for x in others:
            col_x = cols[x]
            coef = col_x[b]
            row_b[x] = coef
            factor = coef * eps  # eps is its own inverse
            for y, v in col_a.items():
                nv = col_x.get(y, 0) - factor * v
                if self.mod2:
                    nv &= 1
                if nv:
                    if y not in col_x:
                        rows[y].add(x)
                    col_x[y] = nv
                elif y in col_x:
                    del col_x[y]
                    rows[y].discard(x)
        self.pair_count[d] = self.pair_count.get(d, 0) + 1
        if self.track:
            self.steps.append(_Step(d, a, b, eps, dict(col_a), row_b))
        for y in col_a:
            rows[y].discard(a)
        del cols[a]
        rows.pop(b, None)
        self.alive[d].discard(a)
        self.alive[d - 1].discard(b)
        # a disappears as a row of d_{d+1}; b as a column of d_{d-1}
        if d + 1 in self.cols:
            up_cols, up_rows = self.cols[d + 1], self.rows[d + 1]
            for z in up_rows.pop(a, ()):
                up_cols[z].pop(a, None)
        if d - 1 in self.cols:
            dn_cols, dn_rows = self.cols[d - 1], self.rows[d - 1]
            for y in dn_cols.pop(b, {}):
                dn_rows[y].discard(b)
        return others

    # -- transport of chains -------------------------------------------------
    def project(self, chain: dict, degree: int) -> dict:
        """Image of an original chain in the reduced complex (keys = original indices)."""
        if not self.track:
            raise RuntimeError("reduction was built without tracking")
        x = {k: v for k, v in chain.items() if v}
        for st in self.steps:
            if st.degree == degree + 1:
                beta = x.get(st.b)
                if beta:
                    factor = beta * st.eps
                    for y, v in st.col_a.items():
                        nv = x.get(y, 0) - factor * v
                        if self.mod2:
                            nv &= 1
                        if nv:
                            x[y] = nv
                        else:
                            x.pop(y, None)
        alive = self.alive[degree]
        return {k: v for k, v in x.items() if k in alive and v}

    def lift(self, chain: dict, degree: int) -> dict:
        """Representative in the original complex of a reduced chain."""
        if not self.track:
            raise RuntimeError("reduction was built without tracking")
        x = {k: v for k, v in chain.items() if v}
        for st in reversed(self.steps):
            if st.degree != degree:
                continue
            s = 0
            if len(x) < len(st.row_b):
                for k, v in x.items():
                    c = st.row_b.get(k)
                    if c:
                        s += v * c
            else:
                for k, c in st.row_b.items():
                    v = x.get(k)
                    if v:
                        s += v * c
            if self.mod2:
                s &= 1
            if s:
                val = -s * st.eps
                if self.mod2:
                    val &= 1
                x[st.a] = val
        return x

    def reduced_matrix(self, d: int) -> tuple[list[int], list[int], list[list[int]]]:
        """Dense reduced boundary d_d as (row basis, column basis, rows)."""
        rows_basis = sorted(self.alive.get(d - 1, ()))
        cols_basis = sorted(self.alive.get(d, ()))
        pos = {r: i for i, r in enumerate(rows_basis)}
        M = [[0] * len(cols_basis) for _ in rows_basis]
        cols = self.cols.get(d, {})
        for j, c in enumerate(cols_basis):
            for r, v in cols.get(c, {}).items():
                if r in pos:
                    M[pos[r]][j] = v
        return rows_basis, cols_basis, M
