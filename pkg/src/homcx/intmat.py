"""Dense exact integer matrices: Smith normal form and column echelon form.

Matrices are lists of row lists of Python ints, so entries never overflow.
"""
from __future__ import annotations

from dataclasses import dataclass


def zeros(m: int, n: int) -> list[list[int]]:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> list[list[int]]:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = 1
    return out


def matmul(A, B):
    if not A:
        return []
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * n
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A, ncols: int | None = None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


@dataclass
class SmithForm:
    """``P @ A @ Q == D`` with ``P``, ``Q`` unimodular.

    ``diagonal`` holds the nonzero invariant factors, each dividing the next.
    ``P_inv`` is kept so that generators can be transported back.
    """

    diagonal: list[int]
    P: list[list[int]] | None
    P_inv: list[list[int]] | None
    Q: list[list[int]] | None

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def smith_form(A, nrows: int, ncols: int, transforms: bool = True) -> SmithForm:
    M = [list(r) for r in A] if A else zeros(nrows, ncols)
    P = identity(nrows) if transforms else None
    Pinv = identity(nrows) if transforms else None
    Q = identity(ncols) if transforms else None

    def swap_rows(i, j):
        if i == j:
            return
        M[i], M[j] = M[j], M[i]
        if transforms:
            P[i], P[j] = P[j], P[i]
            for row in Pinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i == j:
            return
        for row in M:
            row[i], row[j] = row[j], row[i]
        if transforms:
            for row in Q:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        if not c:
            return
        rs, rd = M[src], M[dst]
        for k in range(ncols):
            if rs[k]:
                rd[k] += c * rs[k]
        if transforms:
            ps, pd = P[src], P[dst]
            for k in range(nrows):
                if ps[k]:
                    pd[k] += c * ps[k]
            # inverse: col_src of Pinv -= c * col_dst
            for row in Pinv:
                if row[dst]:
                    row[src] -= c * row[dst]

    def add_col(dst, src, c):
        if not c:
            return
        for row in M:
            if row[src]:
                row[dst] += c * row[src]
        if transforms:
            for row in Q:
                if row[src]:
                    row[dst] += c * row[src]

    def negate_row(i):
        M[i] = [-x for x in M[i]]
        if transforms:
            P[i] = [-x for x in P[i]]
            for row in Pinv:
                row[i] = -row[i]

    diag = []
    t = 0
    while t < min(nrows, ncols):
        # smallest nonzero entry of the trailing block
        best = None
        for i in range(t, nrows):
            row = M[i]
            for j in range(t, ncols):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            p = M[t][t]
            for i in range(t + 1, nrows):
                if M[i][t]:
                    q = M[i][t] // p
                    add_row(i, t, -q)
                    if M[i][t]:
                        done = False
            for j in range(t + 1, ncols):
                if M[t][j]:
                    q = M[t][j] // p
                    add_col(j, t, -q)
                    if M[t][j]:
                        done = False
            if done:
                # enforce divisibility of the trailing block
                bad = None
                for i in range(t + 1, nrows):
                    if any(M[i][j] % p for j in range(t + 1, ncols)):
                        bad = i
                        break
                if bad is None:
                    break
                add_row(t, bad, 1)
                continue
            # move the smallest remaining entry of row/column t to the pivot
            best = (abs(M[t][t]), t, t)
            for i in range(t + 1, nrows):
                if M[i][t] and abs(M[i][t]) < best[0]:
                    best = (abs(M[i][t]), i, t)
            for j in range(t + 1, ncols):
                if M[t][j] and abs(M[t][j]) < best[0]:
                    best = (abs(M[t][j]), t, j)
            swap_rows(t, best[1])
            swap_cols(t, best[2])
        if M[t][t] < 0:
            negate_row(t)
        diag.append(M[t][t])
        t += 1
    return SmithForm(diag, P, Pinv, Q)


def elementary_divisors(A, nrows: int, ncols: int) -> list[int]:
    return smith_form(A, nrows, ncols, transforms=False).diagonal


@dataclass
class ColumnEchelon:
    """``A @ V`` has its first ``rank`` columns independent and the rest zero."""

    rank: int
    V: list[list[int]]
    V_inv: list[list[int]]


def column_echelon(A, nrows: int, ncols: int) -> ColumnEchelon:
    M = [list(r) for r in A] if A else zeros(nrows, ncols)
    V = identity(ncols)
    Vinv = identity(ncols)

    def swap(i, j):
        if i == j:
            return
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add(dst, src, c):
        # col_dst += c * col_src ; inverse: row_src of Vinv -= c * row_dst
        for row in M:
            if row[src]:
                row[dst] += c * row[src]
        for row in V:
            if row[src]:
                row[dst] += c * row[src]
        rd, rs = Vinv[dst], Vinv[src]
        for k in range(ncols):
            if rd[k]:
                rs[k] -= c * rd[k]

    r = 0
    for i in range(nrows):
        if r == ncols:
            break
        while True:
            nz = [j for j in range(r, ncols) if M[i][j]]
            if not nz:
                break
            j = min(nz, key=lambda j: abs(M[i][j]))
            swap(r, j)
            more = False
            for j in range(r + 1, ncols):
                if M[i][j]:
                    add(j, r, -(M[i][j] // M[i][r]))
                    if M[i][j]:
                        more = True
            if not more:
                r += 1
                break
    return ColumnEchelon(r, V, Vinv)
