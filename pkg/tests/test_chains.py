import itertools

import pytest
from hypothesis import given, strategies as st

import oracles
from homcx.chains import (ChainComplex, ChainMap, homological_connectivity, homology, induced_map_homology,
                          read_matrix_dump, relative_homology, simplicial_chain, write_matrix_dump)
from homcx.errors import NotChainMapError
from homcx.simplicial import SimplicialComplex

RP2 = [(0, 1, 3), (0, 1, 5), (0, 2, 4), (0, 2, 5), (0, 3, 4), (1, 2, 3), (1, 2, 4), (1, 4, 5), (2, 3, 5), (3, 4, 5)]


def circle():
    return SimplicialComplex.from_maximal(range(3), [(0, 1), (1, 2), (0, 2)])


@st.composite
def complexes(draw, max_v=6):
    n = draw(st.integers(1, max_v))
    facets = draw(st.lists(st.sets(st.integers(0, n - 1), min_size=1, max_size=4), min_size=1, max_size=7))
    return SimplicialComplex.from_maximal(list(range(n)), [tuple(sorted(f)) for f in facets])


def dense(C, d):
    rows, cols = C.dim(d - 1), C.dim(d)
    M = [[0] * cols for _ in range(rows)]
    for j, col in enumerate(C.boundary.get(d, [])):
        for i, v in col.items():
            M[i][j] = v
    return M


def oracle_homology(C):
    """Betti numbers and torsion from rational ranks and sympy Smith forms."""
    betti, torsion = {}, {}
    for d in C.degrees:
        rk_in = oracles.rank_rational(dense(C, d + 1)) if C.dim(d + 1) and C.dim(d) else 0
        rk_out = oracles.rank_rational(dense(C, d)) if C.dim(d) and C.dim(d - 1) else 0
        betti[d] = C.dim(d) - rk_out - rk_in
        M = dense(C, d + 1)
        torsion[d] = [t for t in oracles.smith_diagonal(M) if t > 1] if C.dim(d + 1) and C.dim(d) else []
    return betti, torsion


def test_projective_plane_torsion():
    K = SimplicialComplex.from_maximal(range(6), RP2)
    HZ = homology(simplicial_chain(K, "Z"))
    assert (HZ.rank(0), HZ.rank(1), HZ.rank(2)) == (1, 0, 0)
    assert HZ.torsion_of(1) == [2]
    HF = homology(simplicial_chain(K, "F2"))
    assert [HF.rank(d) for d in range(3)] == [1, 1, 1]


@given(complexes())
def test_integral_homology_against_oracle(K):
    C = simplicial_chain(K, "Z")
    H = homology(C)
    betti, torsion = oracle_homology(C)
    for d in C.degrees:
        assert H.rank(d) == betti[d]
        assert sorted(H.torsion_of(d)) == torsion[d]


@given(complexes())
def test_universal_coefficients_and_euler(K):
    HZ = homology(simplicial_chain(K, "Z"))
    HF = homology(simplicial_chain(K, "F2"))
    for d in range(K.dimension + 1):
        two = lambda i: sum(1 for t in HZ.torsion_of(i) if t % 2 == 0)
        assert HF.rank(d) == HZ.rank(d) + two(d) + two(d - 1)
    chi = sum((-1) ** d * n for d, n in enumerate(K.f_vector()))
    assert chi == sum((-1) ** d * HZ.rank(d) for d in range(K.dimension + 1))


def test_d2_check_rejects_bad_complex():
    with pytest.raises(Exception):
        ChainComplex("Z", {0: ["a"], 1: ["e"], 2: ["t"]}, {1: [{0: 1}], 2: [{0: 1}]})


def test_connectivity_values():
    assert homological_connectivity(circle()) == 0
    two_points = SimplicialComplex(range(2), [(0,), (1,)])
    assert homological_connectivity(two_points) == -1
    assert homological_connectivity(SimplicialComplex([], [])) == -2


def test_relative_homology_of_disk_mod_boundary():
    disk = SimplicialComplex.from_maximal(range(3), [(0, 1, 2)])
    C = simplicial_chain(disk, "Z")
    H = relative_homology(C, lambda d, lab: d < 2)
    assert H.rank(2) == 1 and H.rank(1) == 0 and H.rank(0) == 0


def test_identity_and_constant_maps():
    C = simplicial_chain(circle(), "Z")
    ident = ChainMap(C, C, {d: [{j: 1} for j in range(C.dim(d))] for d in C.degrees})
    maps = induced_map_homology(ident)
    assert maps[1].matrix == [[1]] and maps[0].matrix == [[1]]
    # every vertex to vertex 0, every edge degenerates to zero
    const = ChainMap(C, C, {0: [{0: 1}] * 3, 1: [{}] * 3})
    assert induced_map_homology(const, degrees=[1])[1].is_zero()
    with pytest.raises(NotChainMapError):
        ChainMap(C, C, {0: [{0: 1}, {}, {}], 1: [{}] * 3}).verify()


def test_matrix_dump_round_trip():
    C = simplicial_chain(SimplicialComplex.from_maximal(range(6), RP2), "Z")
    text = write_matrix_dump(C)
    lines = text.splitlines()
    k, parsed = 0, {}
    while k < len(lines):
        d, rows, cols, nnz = map(int, lines[k].split())
        M = [[0] * cols for _ in range(rows)]
        for line in lines[k + 1:k + 1 + nnz]:
            i, j, v = map(int, line.split())
            M[i][j] = v
        parsed[d] = M
        k += 1 + nnz
    assert set(parsed) == {1, 2}
    for d in parsed:
        assert parsed[d] == dense(C, d)
    back = read_matrix_dump(text)
    assert {d: (r, c) for d, (r, c, _) in back.items()} == {1: (6, 15), 2: (15, 10)}
