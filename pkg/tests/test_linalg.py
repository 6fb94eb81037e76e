import random

from hypothesis import given, strategies as st

import oracles
from homcx import gf2
from homcx.intmat import column_echelon, elementary_divisors, matmul, smith_form

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=m, max_size=m)))


def is_diagonal_form(D, diag):
    for i, row in enumerate(D):
        for j, v in enumerate(row):
            expected = diag[i] if i == j and i < len(diag) else 0
            if v != expected:
                return False
    return True


@given(matrices)
def test_smith_form_identity_and_oracle(A):
    m, n = len(A), len(A[0])
    snf = smith_form(A, m, n)
    assert is_diagonal_form(matmul(matmul(snf.P, A), snf.Q), snf.diagonal)
    assert matmul(snf.P, snf.P_inv) == [[int(i == j) for j in range(m)] for i in range(m)]
    assert all(b % a == 0 for a, b in zip(snf.diagonal, snf.diagonal[1:]))
    assert sorted(elementary_divisors(A, m, n)) == oracles.smith_diagonal(A)


@given(matrices)
def test_column_echelon(A):
    m, n = len(A), len(A[0])
    ce = column_echelon(A, m, n)
    AV = matmul(A, ce.V)
    assert all(AV[i][j] == 0 for i in range(m) for j in range(ce.rank, n))
    assert ce.rank == oracles.rank_rational(A)
    assert matmul(ce.V, ce.V_inv) == [[int(i == j) for j in range(n)] for i in range(n)]


@given(st.lists(st.lists(st.integers(0, 1), min_size=6, max_size=6), min_size=1, max_size=8))
def test_gf2_rank_and_nullspace(rows):
    vecs = [gf2.pack(i for i, b in enumerate(r) if b) for r in rows]
    assert gf2.rank(vecs) == oracles.rank_mod2(rows)
    for combo in gf2.nullspace(vecs):
        acc = 0
        for j in gf2.unpack(combo):
            acc ^= vecs[j]
        assert acc == 0
    assert len(gf2.nullspace(vecs)) == len(vecs) - oracles.rank_mod2(rows)


def test_gf2_span_express():
    rng = random.Random(3)
    span = gf2.GF2Span()
    vecs = [rng.getrandbits(10) for _ in range(6)]
    for i, v in enumerate(vecs):
        span.add(v, 1 << i)
    for _ in range(20):
        mask = rng.getrandbits(6)
        target = 0
        for i in gf2.unpack(mask):
            target ^= vecs[i]
        combo = span.express(target)
        acc = 0
        for i in gf2.unpack(combo):
            acc ^= vecs[i]
        assert acc == target
