"""Acceptance checks, runnable from the command line (``hom verify``).

Each check returns a ``CheckResult``; values are compared exactly.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .chains import homology, simplicial_chain
from .equivariant import equivariant_model, quotient_homology, quotient_induced_map, sw_height
from .graphs import (Graph, complete, cycle, edgeless, enumerate_homomorphisms, fold_reduce, kneser, path,
                     star)
from .hom import (build_hom, complete_involution, cycle_involution, induced_map, neighborhood_complex,
                  restriction_to_edge, verify_hom_plus_iso)
from .obstruction import RIGOROUS, bound_report
from .filtration import SupportFiltration, e1_page, verify_e1_splitting


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    seconds: float = 0.0
    details: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:>2}. {self.title} ({self.seconds:.1f}s)"


def _reduced(H, degrees):
    """(rank, torsion) of reduced homology per degree."""
    out = {}
    for d in degrees:
        r = H.rank(d) - (1 if d == 0 else 0)
        out[d] = (r, tuple(H.torsion_of(d)))
    return out


def check_spheres() -> tuple[bool, list[str]]:
    ok, notes = True, []
    for m, n in [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 4)]:
        X = build_hom(complete(m), complete(n))
        H = homology(X.chain_complex("Z"))
        red = _reduced(H, range(X.dimension + 1))
        top = n - m
        good = all(t == () for _, t in red.values())
        good &= all(r == 0 for d, (r, _) in red.items() if d != top)
        good &= red.get(top, (0, ()))[0] > 0
        if m == n:
            import math
            good &= red[0][0] == math.factorial(n) - 1
        notes.append(f"Hom(K{m},K{n}): {H}; reduced homology concentrated in degree {top}: {good}")
        ok &= good
    return ok, notes


def _eq4(G, n, deg_f2, z_expect, cap=None):
    X = build_hom(G, complete(n), cap)
    H2 = homology(X.chain_complex("F2"))
    HZ = homology(X.chain_complex("Z"))
    good = all(H2.rank(d) == r for d, r in deg_f2.items())
    for d, (r, t) in z_expect.items():
        good &= HZ.rank(d) == r and HZ.torsion_of(d) == t
    return good, f"Hom({G.name},K{n}) f={X.f_vector()}: F2 {H2}; Z {HZ}"


def check_even_case():
    notes, ok = [], True
    for G in (cycle(5), cycle(7)):
        good, note = _eq4(G, 4, {0: 1, 1: 1, 2: 1}, {1: (0, [2]), 2: (0, [])})
        ok &= good
        notes.append(note)
    return ok, notes


def check_odd_case():
    good, note = _eq4(cycle(5), 5, {0: 1, 1: 0, 2: 1, 3: 1}, {2: (1, []), 3: (1, [])}, cap=4)
    return good, [note + " (cells through dimension 4, trusted through degree 3)"]


def check_sw_vanishing():
    X = build_hom(cycle(5), complete(5), 4)
    h = sw_height(X, cycle_involution(2, complete(5), X), 3, method="cellular")
    return h <= 2, [f"height of w on Hom(C5,K5)/gamma through degree 3: {h}"]


def check_sw_spheres():
    ok, notes = True, []
    for n in (3, 4):
        X = build_hom(complete(2), complete(n))
        s = complete_involution(2, complete(n), X)
        hs = {meth: sw_height(X, s, n, method=meth) for meth in ("order", "cellular")}
        ok &= hs["order"] == hs["cellular"] == n - 2
        notes.append(f"Hom(K2,K{n}): height {hs}")
    return ok, notes


def check_contrapositive():
    ok, notes = True, []
    X = build_hom(cycle(5), complete(4))
    h = sw_height(X, cycle_involution(2, complete(4), X), X.dimension)
    ok &= h <= 1
    notes.append(f"Hom(C5,K4): height {h} <= 1")
    for m, n in [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 4)]:
        X = build_hom(complete(m), complete(n))
        h = sw_height(X, complete_involution(m, complete(n), X), X.dimension, allow_disconnected=True)
        ok &= h <= n - m
        notes.append(f"Hom(K{m},K{n}): height {h} <= {n - m}")
    return ok, notes


def _z_homology(X):
    H = homology(X.chain_complex("Z") if hasattr(X, "chain_complex") else simplicial_chain(X, "Z"))
    return {d: (H.rank(d), tuple(H.torsion_of(d))) for d in H.degrees if H.rank(d) or H.torsion_of(d)}


def check_folds():
    ok, notes = True, []
    for T in (path(3), path(4), star(3)):
        R, _ = fold_reduce(T)
        for n in (3, 4):
            a = _z_homology(build_hom(T, complete(n)))
            b = _z_homology(build_hom(complete(2), complete(n)))
            ok &= a == b
            notes.append(f"Hom({T.name},K{n}) {a} vs Hom(K2,K{n}) {b}; folds to {R.n} vertices")
    return ok, notes


def random_graphs(count: int, n: int, seed: int, p: float = 0.5) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    for i in range(count):
        edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
        out.append(Graph.from_edges(n, edges, name=f"R{n}_{seed}_{i}"))
    return out


def check_neighborhood():
    ok, notes = True, []
    for G in [cycle(5), kneser(5, 2), complete(4)] + random_graphs(5, 7, seed=7):
        a = _z_homology(build_hom(complete(2), G))
        b = _z_homology(neighborhood_complex(G))
        ok &= a == b
        notes.append(f"{G.name}: Hom(K2,G) {a}, N(G) {b}")
    return ok, notes


def small_graphs(max_n: int = 3, loops: bool = True) -> list[Graph]:
    """Isomorphism representatives of graphs on 1..max_n vertices."""
    reps = []
    for n in range(1, max_n + 1):
        pairs = [(u, v) for u in range(n) for v in range(u, n) if loops or u != v]
        seen = set()
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1]
            forms = []
            for perm in itertools.permutations(range(n)):
                forms.append(tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges)))
            canon = min(forms)
            if canon in seen:
                continue
            seen.add(canon)
            reps.append(Graph.from_edges(n, edges, name=f"g{n}_{mask}"))
    return reps


def check_hom_plus():
    graphs = small_graphs(3)
    bad = [(G.name, H.name) for G in graphs for H in graphs if not verify_hom_plus_iso(G, H)]
    extra = [verify_hom_plus_iso(cycle(5), complete(3)), verify_hom_plus_iso(complete(3), complete(3))]
    return not bad and all(extra), [f"{len(graphs)} representatives, {len(graphs) ** 2} pairs, failures {bad[:5]}",
                                    f"(C5,K3), (K3,K3): {extra}"]


def check_splitting():
    ok, notes = True, []
    for G, n in [(complete(2), 2), (path(3), 3), (cycle(5), 3)]:
        F = SupportFiltration(G, n)
        split = [verify_e1_splitting(G, n, s, F) for s in range(G.n)]
        pages = [e1_page(F, "Z"), e1_page(F, "F2")]
        euler = [E.euler_characteristic() == F.chains.euler_characteristic() for E in pages]
        ok &= all(split) and all(euler)
        notes.append(f"({G.name},{n}): splitting {split}, Euler {euler}")
    return ok, notes


def chromatic_number(G: Graph) -> int | None:
    """Exact chromatic number by searching for homomorphisms to K_k (small graphs only)."""
    if G.looped:
        return None
    for k in range(0, G.n + 1):
        if enumerate_homomorphisms(G, complete(k)) if k else G.n == 0:
            return k
    return G.n


def corpus() -> list[Graph]:
    return ([complete(n) for n in range(1, 6)] + [cycle(n) for n in range(3, 8)]
            + [path(4), star(3), edgeless(3), kneser(5, 2)] + random_graphs(4, 6, seed=11))


def check_properties():
    from .chains import ChainComplex
    ok, notes = True, []
    # boundary squared and universal coefficients
    for G, H in [(cycle(5), complete(4)), (complete(3), complete(5)), (path(4), complete(3)), (complete(2), cycle(5))]:
        X = build_hom(G, H)
        C = X.chain_complex("Z")
        C.check_d2()
        HZ, HF = homology(C), homology(X.chain_complex("F2"))
        for d in range(X.dimension + 1):
            two = lambda t: sum(1 for x in t if x % 2 == 0)
            exp = HZ.rank(d) + two(HZ.torsion_of(d)) + two(HZ.torsion_of(d - 1))
            ok &= exp == HF.rank(d)
        ok &= sum((-1) ** d * HZ.rank(d) for d in HZ.degrees) == C.euler_characteristic()
    notes.append(f"boundary squared and universal coefficients: {ok}")
    # freeness
    free = True
    for r, H in [(1, complete(3)), (2, complete(4)), (2, cycle(5)), (1, kneser(5, 2))]:
        free &= cycle_involution(r, H).is_free
    for m, H in [(2, complete(4)), (3, complete(4)), (2, kneser(5, 2))]:
        free &= complete_involution(m, H).is_free
    notes.append(f"free actions: {free}")
    ok &= free
    # cellular versus order complex
    agree = True
    from .posets import order_complex
    for G, H in [(complete(2), complete(4)), (path(3), complete(3)), (cycle(5), complete(3)), (complete(3), complete(4))]:
        X = build_hom(G, H)
        if len(X) > 2000:
            continue
        a = homology(X.chain_complex("F2")).betti
        b = homology(simplicial_chain(order_complex(X.poset()), "F2")).betti
        agree &= {d: v for d, v in a.items() if v} == {d: v for d, v in b.items() if v}
    notes.append(f"cellular vs order complex: {agree}")
    ok &= agree
    # bound soundness
    sound = True
    for G in corpus():
        chi = chromatic_number(G)
        rep = bound_report(G, ["neighborhood", "k2", "k3", "c3", "c5", "sw-k2", "sw-c3", "sw-c5"],
                           deterministic=True)
        for e in rep.strategies:
            if e.rigor == RIGOROUS and e.bound is not None and e.bound > chi:
                sound = False
                notes.append(f"unsound: {G.name} {e.name} bound {e.bound} > chi {chi}")
    notes.append(f"bound soundness on {len(corpus())} graphs: {sound}")
    ok &= sound
    return ok, notes


def check_stretch():
    X = build_hom(cycle(5), complete(5), 4)
    s = cycle_involution(2, complete(5), X)
    Y = build_hom(complete(2), complete(5))
    t = complete_involution(2, complete(5), Y)
    f = induced_map(restriction_to_edge(2), "contravariant", complete(5), X, Y)
    maps = quotient_induced_map(f, equivariant_model(X, s, "cellular"), equivariant_model(Y, t, "cellular"), [3])
    zero = maps[3].is_zero()
    from .chains import induced_map_homology
    g = s.cellular_map().chain_map("Z")
    on_h2 = induced_map_homology(g, [2])[2].matrix
    minus = on_h2 == [[-1]]
    return zero and minus, [f"restriction on quotient H3 is zero: {zero}", f"gamma on H2(;Z): {on_h2}"]


CHECKS: dict[int, tuple[str, Callable]] = {
    1: ("Hom(Km,Kn) is a wedge of (n-m)-spheres", check_spheres),
    2: ("Hom(C5,K4), Hom(C7,K4) homology", check_even_case),
    3: ("Hom(C5,K5) homology through degree 3", check_odd_case),
    4: ("w^3 vanishes on Hom(C5,K5)", check_sw_vanishing),
    5: ("height of w on Hom(K2,Kn) is n-2", check_sw_spheres),
    6: ("heights respect chi(Kn) = n", check_contrapositive),
    7: ("folding trees to K2 preserves homology", check_folds),
    8: ("Hom(K2,G) and N(G) have equal homology", check_neighborhood),
    9: ("Hom_+ equals an independence complex", check_hom_plus),
    10: ("support filtration splits; Euler consistency", check_splitting),
    11: ("property suites", check_properties),
    12: ("stretch: zero map on H3 and gamma = -1 on H2", check_stretch),
}


def run_check(number: int) -> CheckResult:
    title, fn = CHECKS[number]
    t0 = time.perf_counter()
    passed, details = fn()
    return CheckResult(number, title, bool(passed), time.perf_counter() - t0, details)


def run_all(numbers=None, stretch: bool = True) -> list[CheckResult]:
    numbers = numbers or [k for k in CHECKS if stretch or k != 12]
    return [run_check(k) for k in numbers]
