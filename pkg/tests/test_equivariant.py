import pytest
from hypothesis import given

import oracles
from homcx.chains import homology
from homcx.equivariant import (coboundary, cup_power, equivariant_model, is_coboundary, quotient_homology,
                               quotient_induced_map, sw1_cocycle, sw_class, sw_height)
from homcx.errors import DisconnectedError, HomcxError
from homcx.graphs import complete, cycle, kneser
from homcx.hom import (GraphHom, Involution, build_hom, complete_involution, complete_swap, cycle_involution,
                       cycle_reflection, induced_map)
from strategies import graphs


def swap(n, m=2):
    return complete_involution(m, complete(n))


def invariant_component_exists(sigma):
    """Brute-force: the double cover is nontrivial iff some path component is sigma-invariant."""
    X = sigma.complex
    parent = {v: v for v in X.cells[0]}

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for e in (X.cells[1] if len(X.cells) > 1 else []):
        (f, _), (g, _) = X.faces(e)
        parent[find(f)] = find(g)
    return any(find(v) == find(sigma(v)) for v in X.cells[0])


@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize("method", ["order", "cellular"])
def test_projective_space_heights(n, method):
    sigma = swap(n)
    assert sw_height(sigma.complex, sigma, n - 1, method) == n - 2


@pytest.mark.parametrize("method", ["order", "cellular"])
def test_quotient_of_hexagon_is_circle(method):
    sigma = swap(3)
    H = quotient_homology(equivariant_model(sigma.complex, sigma, method))
    assert (H.rank(0), H.rank(1)) == (1, 1)


def test_order_and_cellular_agree_on_quotient_homology():
    for sigma in (swap(4), swap(4, 3), cycle_involution(1, complete(4)), cycle_involution(2, complete(3))):
        X = sigma.complex
        Ho = quotient_homology(equivariant_model(X, sigma, "order"))
        Hc = quotient_homology(equivariant_model(X, sigma, "cellular"))
        assert [Ho.rank(d) for d in range(X.dimension + 1)] == [Hc.rank(d) for d in range(X.dimension + 1)]
        chi_x = sum((-1) ** d * n for d, n in enumerate(X.f_vector()))
        assert sum((-1) ** d * Hc.rank(d) for d in range(X.dimension + 1)) * 2 == chi_x


def test_order_and_cellular_agree_on_heights():
    for sigma in (swap(4), swap(5, 3), cycle_involution(1, complete(4)), cycle_involution(1, complete(5))):
        X = sigma.complex
        a = sw_class(X, sigma, X.dimension, "order", allow_disconnected=True)
        b = sw_class(X, sigma, X.dimension, "cellular", allow_disconnected=True)
        assert a.nonzero == b.nonzero


def test_powers_are_cocycles_and_monotone():
    sigma = swap(5)
    X = sigma.complex
    for method in ("order", "cellular"):
        model = equivariant_model(X, sigma, method)
        w = sw1_cocycle(model).w
        seen_zero = False
        for k in range(0, X.dimension + 1):
            x = cup_power(model, w, k)
            if k < X.dimension:
                assert coboundary(model, x, k) == 0
            z = is_coboundary(model, x, k)
            assert not (seen_zero and not z)
            seen_zero = seen_zero or z


def test_height_bounded_by_quotient_dimension():
    for sigma in (swap(4), cycle_involution(2, complete(4))):
        X = sigma.complex
        data = sw_class(X, sigma, X.dimension)
        H = quotient_homology(data.model)
        top = max(d for d in range(X.dimension + 1) if H.rank(d))
        assert data.height <= top


def test_c5_k4_height_one():
    sigma = cycle_involution(2, complete(4))
    assert sw_height(sigma.complex, sigma, 3) == 1


def test_disconnected_requires_flag():
    sigma = cycle_involution(2, complete(3))
    with pytest.raises(DisconnectedError):
        sw_height(sigma.complex, sigma, 1)
    assert sw_height(sigma.complex, sigma, 1, allow_disconnected=True) == 0


def test_empty_complex_height():
    X = build_hom(complete(3), complete(2))
    sigma = Involution(X, complete_swap(3))
    assert sw_class(X, sigma, 2).height == -1


def test_truncated_cap_rejected():
    X = build_hom(complete(2), complete(5), dim_cap=1)
    sigma = Involution(X, complete_swap(2))
    with pytest.raises(HomcxError):
        sw_class(X, sigma, 3)


@given(graphs(min_n=2, max_n=5))
def test_w_nonzero_iff_invariant_component(H):
    X = build_hom(complete(2), H)
    if X.is_empty:
        return
    sigma = Involution(X, complete_swap(2))
    h = sw_class(X, sigma, min(1, X.dimension), allow_disconnected=True).height
    expected = invariant_component_exists(sigma)
    assert (h >= 1) == expected


@given(graphs(min_n=2, max_n=5))
def test_height_sound_for_chromatic_number(H):
    # the swap height on Hom(K2, H) plus 2 never exceeds the chromatic number
    X = build_hom(complete(2), H)
    if X.is_empty:
        return
    sigma = Involution(X, complete_swap(2))
    h = sw_class(X, sigma, X.dimension, allow_disconnected=True).height
    assert h + 2 <= oracles.chromatic_number(H.n, oracles.edge_set(H))


def test_identity_induces_identity_on_quotient():
    sigma = swap(4)
    model = equivariant_model(sigma.complex, sigma, "cellular")
    ident = induced_map(GraphHom(complete(2), complete(2), (0, 1)), "contravariant", complete(4),
                        sigma.complex, sigma.complex)
    maps = quotient_induced_map(ident, model, model)
    for d, m in maps.items():
        assert m.matrix == [[int(i == j) for j in range(len(m.matrix))] for i in range(len(m.matrix))]


def test_restriction_map_equivariant_on_quotients():
    from homcx.hom import restriction_to_edge
    tau = cycle_involution(1, complete(4))
    sigma = swap(4)
    f = induced_map(restriction_to_edge(1), "contravariant", complete(4), tau.complex, sigma.complex)
    src = equivariant_model(tau.complex, tau, "cellular")
    tgt = equivariant_model(sigma.complex, sigma, "cellular")
    maps = quotient_induced_map(f, src, tgt, [0])
    assert maps[0].matrix == [[1]]


def test_two_points_quotient_is_a_point():
    sigma = swap(2)
    model = equivariant_model(sigma.complex, sigma, "order")
    H = quotient_homology(model)
    assert H.rank(0) == 1 and model.count(0) == 1
    assert sw_class(sigma.complex, sigma, 1, allow_disconnected=True).height == 0


@pytest.mark.parametrize("method", ["order", "cellular"])
def test_projective_plane_quotient(method):
    sigma = swap(4)
    H = quotient_homology(equivariant_model(sigma.complex, sigma, method))
    assert [H.rank(d) for d in range(3)] == [1, 1, 1]


def test_low_powers():
    sigma = swap(3)
    model = equivariant_model(sigma.complex, sigma, "order")
    w = sw1_cocycle(model).w
    assert cup_power(model, w, 0) == (1 << model.count(0)) - 1
    assert cup_power(model, w, 1) == w
    assert not is_coboundary(model, w, 1)


def test_swapped_components_give_trivial_class():
    # the reflection exchanges the two components of Hom(C5, K3)
    sigma = cycle_involution(2, complete(3))
    assert not invariant_component_exists(sigma)
    model = equivariant_model(sigma.complex, sigma, "order")
    assert is_coboundary(model, sw1_cocycle(model).w, 1)
