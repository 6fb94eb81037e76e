import itertools

import pytest
from hypothesis import given, settings

import oracles
from homcx.chains import homology
from homcx.filtration import (abutment_check, e1_page, e2_entry, e2_row, spectral_pages_f2, support_filtration,
                              tableau_csv, verify_e1_splitting)
from homcx.graphs import Graph, complete, cycle, path, star
from homcx.verify import small_graphs
from strategies import graphs


def expected_e1_f2(G, n):
    """E^1 over GF(2) via the splitting formula with brute-force cells."""
    eG = oracles.edge_set(G)
    eK = {frozenset((a, b)) for a in range(n) for b in range(n) if a != b}
    table = {}
    for s in range(G.n):
        for S in itertools.combinations(range(G.n), s + 1):
            cells = oracles.hom_cells(len(S), oracles.induced_edges(eG, S), n, eK)
            for k, b in enumerate(oracles.cellular_betti_mod2(cells)):
                if b:
                    table[(k + s, s)] = table.get((k + s, s), 0) + b
    return table


def page_table(E1):
    return {(d, s): E1.rank(d, s) for d, s in E1.entries() if E1.rank(d, s)}


def test_k2_2_flags():
    F = support_filtration(complete(2), 2)
    assert F.complex.f_vector() == [4, 4]
    assert F.flag(0).ranks() == {0: 4, 1: 2}
    assert F.flag(1).ranks() == {0: 4, 1: 4}
    E1 = e1_page(F)
    # F_0 is two disjoint edges (one per source vertex), so E^1_{0,0} has rank 2
    assert page_table(E1) == {(0, 0): 2, (1, 1): 2}
    assert E1.euler_characteristic() == 0


def test_single_vertex_is_one_flag():
    F = support_filtration(complete(1), 3)
    assert F.length == 1
    E1 = e1_page(F)
    assert page_table(E1) == {(0, 0): 1}
    assert e2_entry(E1, 0, 0).rank == 1


def test_c5_3_top_flag():
    F = support_filtration(cycle(5), 3)
    top = F.flag(4)
    assert top.ranks() == F.chains.ranks()
    below = F.flag(3)
    missing = sum(F.chains.dim(d) - below.dim(d) for d in F.chains.degrees)
    assert missing == sum(len(c) for c in [oracles.hom_cells(5, oracles.edge_set(cycle(5)), 3,
                                                             oracles.edge_set(complete(3)))])


@pytest.mark.parametrize("G,n", [(complete(2), 2), (path(3), 3), (cycle(5), 3), (cycle(4), 3), (star(3), 2)])
def test_e1_against_splitting_oracle(G, n):
    E1 = e1_page(support_filtration(G, n), "F2")
    assert page_table(E1) == expected_e1_f2(G, n)
    assert E1.check_d1_squared()


@settings(max_examples=15)
@given(graphs(max_n=4))
def test_e1_euler_and_vanishing(G):
    for n in (2, 3):
        F = support_filtration(G, n)
        E1 = e1_page(F)
        cells = oracles.hom_plus_cells(G.n, oracles.edge_set(G), n, oracles.edge_set(complete(n)))
        chi = sum((-1) ** (sum(len(l) for l in c) - 1) for c in cells)
        assert E1.euler_characteristic() == chi
        assert all(s < G.n for _, s in E1.entries())
        assert E1.check_d1_squared()


@pytest.mark.parametrize("G", [g for g in small_graphs(3, loops=False)] + [path(4), cycle(4), star(3), cycle(5)])
def test_splitting_small_corpus(G):
    for n in (2, 3):
        F = support_filtration(G, n)
        for s in range(G.n):
            assert verify_e1_splitting(G, n, s, F)


def test_splitting_detects_a_mismatch():
    # comparing against the wrong graph must fail
    F = support_filtration(path(3), 3)
    assert not verify_e1_splitting(Graph.from_edges(3, [(0, 1)]), 3, 1, F)


def test_c5_k3_row():
    E1 = e1_page(support_filtration(cycle(5), 3))
    row = e2_row(E1, 0)
    assert row[(0, 0)].rank == 1 and not row[(0, 0)].torsion
    for s in (1, 2, 3):
        assert row[(s, s)].rank == 0 and not row[(s, s)].torsion
    # Hom(C5, K3) has two components, so the top corner of E^1 is Z^2
    assert E1.rank(4, 4) == 2
    assert row[(4, 4)].rank == 1


def test_c5_k4_row():
    E1 = e1_page(support_filtration(cycle(5), 4))
    row = e2_row(E1, 0)
    assert row[(0, 0)].rank == 1
    assert all(row[(s, s)].rank == 0 and not row[(s, s)].torsion for s in (1, 2, 3, 4))
    assert E1.rank(4, 4) == 1


@pytest.mark.parametrize("G,n", [(complete(2), 2), (path(3), 3), (path(4), 2), (cycle(4), 3), (star(3), 3)])
def test_abutment(G, n):
    assert abutment_check(support_filtration(G, n))


def test_spectral_first_page_matches_e1():
    F = support_filtration(path(3), 3)
    pages = spectral_pages_f2(F, 2)
    E1 = e1_page(F, "F2")
    assert pages[1] == page_table(E1)
    E2 = {k: v.rank for k in E1.entries() for v in [e2_entry(E1, *k)] if v.rank}
    assert pages[2] == E2


def test_trivial_filtration_e2_equals_e1():
    E1 = e1_page(support_filtration(complete(1), 4))
    assert all(e2_entry(E1, d, s).rank == E1.rank(d, s) for d, s in E1.entries())


def test_tableau_csv():
    text = tableau_csv(e1_page(support_filtration(complete(2), 2)))
    assert text.splitlines() == ["d,s,rank,torsion", "0,0,2,", "1,1,2,"]
