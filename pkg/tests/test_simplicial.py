import itertools

from hypothesis import given, strategies as st

import oracles
from homcx.chains import homology, simplicial_chain
from homcx.simplicial import SimplicialComplex, collapse_greedily, join_power, replay_collapses


@st.composite
def complexes(draw, max_v=6):
    n = draw(st.integers(1, max_v))
    facets = draw(st.lists(st.sets(st.integers(0, n - 1), min_size=1, max_size=4), min_size=1, max_size=6))
    facets = [tuple(sorted(f)) for f in facets]
    return SimplicialComplex.from_maximal(list(range(n)), facets), facets


def closure(facets):
    return {s for f in facets for r in range(1, len(f) + 1) for s in itertools.combinations(f, r)}


def test_join_power_of_two_points_is_sphere():
    S0 = SimplicialComplex(["a", "b"], [(0,), (1,)])
    S1 = join_power(S0, 2)
    assert S1.f_vector() == [4, 4]
    H = homology(simplicial_chain(S1, "Z", reduced=True))
    assert H.rank(1) == 1 and H.rank(0) == 0


@given(complexes())
def test_f_vector_and_betti_against_oracle(data):
    K, facets = data
    simplices = closure(facets)
    top = max(len(s) for s in simplices)
    assert K.f_vector() == [sum(1 for s in simplices if len(s) == d + 1) for d in range(top)]
    betti = oracles.simplicial_betti_mod2(simplices)
    H = homology(simplicial_chain(K, "F2"))
    assert [H.rank(d) for d in range(len(betti))] == betti
    assert K.euler_characteristic() == sum((-1) ** d * b for d, b in enumerate(betti))


@given(complexes())
def test_collapses_replay(data):
    K, _ = data
    pairs, remaining = collapse_greedily(K)
    assert sorted(replay_collapses(K, pairs)) == sorted(remaining)
    if len(remaining) == 1:
        assert homology(simplicial_chain(K, "Z", reduced=True)).is_zero()
