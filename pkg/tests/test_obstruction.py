import pytest
from hypothesis import given, settings

import oracles
from homcx.graphs import complete, cycle, edgeless, kneser, path
from homcx.obstruction import (PROXY, RIGOROUS, bound_report, chi_lower_connectivity, chi_lower_sw,
                               parse_strategy)
from homcx.verify import corpus
from strategies import graphs

ALL = ["neighborhood", "k2", "k3", "c3", "c5", "sw-k2", "sw-k3", "sw-c3", "sw-c5"]


def exact_chi(G):
    return oracles.chromatic_number(G.n, oracles.edge_set(G))


def test_parse_strategy():
    assert parse_strategy("neighborhood") == ("neighborhood", None)
    assert parse_strategy("k3") == ("complete", 3)
    assert parse_strategy("sw-c5") == ("sw-cycle", 5)
    for bad in ("c4", "sw-k1", "k0", "banana"):
        with pytest.raises(ValueError):
            parse_strategy(bad)


def test_petersen():
    rep = bound_report(kneser(5, 2), deterministic=True)
    assert rep.best_lower == 3
    assert rep.greedy_upper >= 3
    nb = next(e for e in rep.strategies if e.name == "neighborhood")
    assert nb.invariant == 0 and nb.bound == 3 and nb.rigor == RIGOROUS


def test_complete_graphs():
    rep = bound_report(complete(4), deterministic=True)
    assert (rep.best_lower, rep.greedy_upper) == (4, 4)
    rep = bound_report(complete(5), ["sw-c5", "sw-k2"], deterministic=True)
    assert rep.best_lower == 5


def test_edgeless():
    rep = bound_report(edgeless(3), deterministic=True)
    assert (rep.best_lower, rep.greedy_upper) == (1, 1)
    assert all(e.bound is None for e in rep.strategies)


def test_proxy_label_and_caveat():
    e = chi_lower_connectivity(complete(5), "neighborhood")
    assert e.invariant == 2 and e.bound == 5
    assert e.rigor == PROXY and "pi_1 unverified" in e.note


def test_degenerate_cycle_case():
    e = chi_lower_connectivity(kneser(5, 2), "c5")
    assert e.invariant == -1 and e.bound == 3 and "k = -1" in e.note


def test_empty_complex_reported_without_bound():
    e = chi_lower_sw(cycle(5), "sw-k3")
    assert e.bound is None and e.complex_cells_by_dim == [] and "empty" in e.note


def test_report_schema_and_determinism():
    a = bound_report(cycle(5), deterministic=True).to_json()
    b = bound_report(cycle(5), deterministic=True).to_json()
    assert a == b
    d = bound_report(cycle(5), deterministic=True).as_dict()
    assert {"input", "strategies", "greedy_upper", "best_lower"} <= set(d)
    assert {"name", "complex_cells_by_dim", "invariant", "bound", "rigor", "ms"} <= set(d["strategies"][0])


def test_resource_cap_recorded():
    rep = bound_report(complete(5), ["k3"], max_cells=10, deterministic=True)
    assert rep.strategies[0].bound is None and "resource cap" in rep.strategies[0].note


@pytest.mark.parametrize("G", corpus(), ids=lambda G: G.name or str(G.n))
def test_corpus_soundness(G):
    chi = exact_chi(G)
    rep = bound_report(G, ALL, deterministic=True)
    for e in rep.strategies:
        if e.rigor == RIGOROUS and e.bound is not None:
            assert e.bound <= chi, e
    assert rep.best_lower <= chi <= rep.greedy_upper


@pytest.mark.parametrize("G", corpus(), ids=lambda G: G.name or str(G.n))
def test_height_plus_m_below_chi(G):
    chi = exact_chi(G)
    for m in (2, 3):
        e = chi_lower_sw(G, f"sw-k{m}")
        if e.invariant is not None and e.invariant >= 0:
            assert e.invariant + m <= chi


@settings(max_examples=25)
@given(graphs(min_n=1, max_n=6))
def test_random_soundness(G):
    chi = exact_chi(G)
    rep = bound_report(G, ["neighborhood", "k2", "c3", "sw-k2", "sw-c3"], deterministic=True)
    assert rep.best_lower <= chi
    assert rep.greedy_upper >= chi


def test_sw_examples():
    e = chi_lower_sw(complete(4), "sw-k2")
    assert (e.invariant, e.bound, e.rigor) == (2, 4, RIGOROUS)
    e = chi_lower_sw(cycle(5), "sw-k2")
    assert (e.invariant, e.bound) == (1, 3)
    e = chi_lower_sw(complete(4), "sw-c5")
    assert e.invariant <= 1


def test_connectivity_examples():
    e = chi_lower_connectivity(complete(5), "k2")
    assert (e.invariant, e.bound, e.rigor) == (2, 5, PROXY)
    e = chi_lower_connectivity(cycle(5), "c5")
    assert e.invariant <= -1 and e.bound <= 3
    rep = bound_report(kneser(5, 2), ["neighborhood", "k2"], deterministic=True)
    assert rep.best_lower == 3
