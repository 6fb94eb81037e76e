"""Chromatic lower bounds from Hom complexes, collected into auditable reports.

Strategy names:

* ``neighborhood``: connectivity of N(G), bound k + 3
* ``k<m>``: connectivity of Hom(K_m, G), bound k + m + 1
* ``c<2r+1>``: connectivity of Hom(C_{2r+1}, G), bound k + 4
* ``sw-k<m>``: height h of w on Hom(K_m, G) under the swap, bound h + m
* ``sw-c<2r+1>``: height h of w on Hom(C_{2r+1}, G) under the reflection, bound h + 3

Connectivity is homological.  Bounds from k <= 0 are rigorous (nonempty and
path-connected are detected exactly by H_0); higher k is labeled
``homological-proxy`` because simple connectivity is never checked.
"""
from __future__ import annotations

import json
import re
import time
from dataclasses import asdict, dataclass, field

from .chains import homological_connectivity, simplicial_chain
from .equivariant import sw_class
from .errors import HomcxError, ResourceLimitError, SoundnessError
from .graphs import Graph, complete, cycle, greedy_chromatic_upper, write_graph
from .hom import Involution, build_hom, complete_swap, cycle_reflection, neighborhood_complex

RIGOROUS = "rigorous"
PROXY = "homological-proxy"

DEFAULT_STRATEGIES = ("neighborhood", "k2", "c3", "sw-k2", "sw-c3")

_PATTERN = re.compile(r"^(neighborhood|k(\d+)|c(\d+)|sw-k(\d+)|sw-c(\d+))$")


@dataclass
class BoundEntry:
    name: str
    complex_cells_by_dim: list[int]
    invariant: int | None
    bound: int | None
    rigor: str | None
    ms: float | None
    note: str = ""


@dataclass
class BoundReport:
    input: dict
    strategies: list[BoundEntry]
    greedy_upper: int | None
    best_lower: int
    best_lower_any: int = 0
    warnings: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "input": self.input,
            "strategies": [asdict(e) for e in self.strategies],
            "greedy_upper": self.greedy_upper,
            "best_lower": self.best_lower,
            "best_lower_any": self.best_lower_any,
            "warnings": self.warnings,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.as_dict(), indent=indent)


def parse_strategy(name: str) -> tuple[str, int | None]:
    """('neighborhood' | 'complete' | 'cycle' | 'sw-complete' | 'sw-cycle', parameter)."""
    m = _PATTERN.match(name.strip())
    if not m:
        raise ValueError(f"unknown strategy {name!r}")
    if m.group(1) == "neighborhood":
        return "neighborhood", None
    if m.group(2):
        kind, p = "complete", int(m.group(2))
    elif m.group(3):
        kind, p = "cycle", int(m.group(3))
    elif m.group(4):
        kind, p = "sw-complete", int(m.group(4))
    else:
        kind, p = "sw-cycle", int(m.group(5))
    if kind.endswith("complete") and p < 1:
        raise ValueError("complete test needs m >= 1")
    if kind.endswith("cycle") and (p < 3 or p % 2 == 0):
        raise ValueError("cycle test needs an odd length >= 3")
    if kind == "sw-complete" and p < 2:
        raise ValueError("the swap action needs m >= 2")
    return kind, p


def _connectivity_rigor(k: int) -> str:
    return RIGOROUS if k <= 0 else PROXY


def chi_lower_connectivity(G: Graph, test: str = "neighborhood", max_dim: int | None = None,
                           max_cells: int | None = None) -> BoundEntry:
    kind, p = parse_strategy(test)
    t0 = time.perf_counter()
    if kind == "neighborhood":
        K = neighborhood_complex(G)
        cells = K.f_vector()
        C = simplicial_chain(K, "Z")
        offset, label = 3, "N(G)"
    elif kind == "complete":
        X = build_hom(complete(p), G, max_dim, max_cells)
        cells, C = X.f_vector(), X.chain_complex("Z")
        offset, label = p + 1, f"Hom(K{p}, G)"
    elif kind == "cycle":
        X = build_hom(cycle(p), G, max_dim, max_cells)
        cells, C = X.f_vector(), X.chain_complex("Z")
        offset, label = 4, f"Hom(C{p}, G)"
    else:
        raise ValueError(f"{test!r} is not a connectivity strategy")
    k = homological_connectivity(C)
    ms = (time.perf_counter() - t0) * 1000
    if k == -2:
        return BoundEntry(test, cells, k, None, None, ms, f"{label} is empty; no bound")
    note = "" if k <= 0 else "pi_1 unverified"
    if C.valid_through is not None:
        note = (note + "; " if note else "") + f"connectivity trusted through degree {C.valid_through}"
    if kind == "cycle" and k == -1:
        note = (note + "; " if note else "") + "degenerate case k = -1 (nonempty complex)"
    return BoundEntry(test, cells, k, k + offset, _connectivity_rigor(k), ms, note)


def chi_lower_sw(G: Graph, test: str = "sw-k2", cap: int | None = None, max_dim: int | None = None,
                 max_cells: int | None = None) -> BoundEntry:
    kind, p = parse_strategy(test)
    if kind not in ("sw-complete", "sw-cycle"):
        raise ValueError(f"{test!r} is not a Stiefel-Whitney strategy")
    if G.looped:
        raise HomcxError("Stiefel-Whitney bounds need a loopless graph")
    t0 = time.perf_counter()
    if kind == "sw-complete":
        X = build_hom(complete(p), G, max_dim, max_cells)
        sigma = Involution(X, complete_swap(p)) if not X.is_empty else None
        offset, label = p, f"Hom(K{p}, G)"
    else:
        X = build_hom(cycle(p), G, max_dim, max_cells)
        sigma = Involution(X, cycle_reflection((p - 1) // 2)) if not X.is_empty else None
        offset, label = 3, f"Hom(C{p}, G)"
    cells = X.f_vector()
    if X.is_empty:
        ms = (time.perf_counter() - t0) * 1000
        note = f"{label} is empty; no bound"
        if kind == "sw-complete":
            note += f" (G admits no homomorphism from K{p})"
        return BoundEntry(test, cells, None, None, None, ms, note)
    top = X.dimension if cap is None else min(cap, X.dimension)
    data = sw_class(X, sigma, top, allow_disconnected=True)
    ms = (time.perf_counter() - t0) * 1000
    h = data.height
    note = f"powers checked through {data.powers_checked}"
    if X.truncated:
        note += f"; complex truncated at dimension {X.dim_cap}, height is a lower bound"
    return BoundEntry(test, cells, h, h + offset, RIGOROUS, ms, note)


def greedy_upper(G: Graph) -> int | None:
    return None if G.looped else greedy_chromatic_upper(G)


def describe(G: Graph) -> dict:
    import hashlib
    text = write_graph(G)
    return {
        "name": G.name,
        "vertices": G.n,
        "edges": G.num_edges(),
        "sha256": hashlib.sha256(text.encode()).hexdigest(),
    }


def run_strategy(G: Graph, name: str, max_dim: int | None = None, max_cells: int | None = None,
                 sw_cap: int | None = None) -> BoundEntry:
    kind, _ = parse_strategy(name)
    if kind.startswith("sw-"):
        return chi_lower_sw(G, name, sw_cap, max_dim, max_cells)
    return chi_lower_connectivity(G, name, max_dim, max_cells)


def bound_report(G: Graph, strategies=DEFAULT_STRATEGIES, max_dim: int | None = None,
                 max_cells: int | None = None, max_ms: float | None = None, sw_cap: int | None = None,
                 deterministic: bool = False) -> BoundReport:
    """Run each strategy, record failures, and cross-check against a greedy coloring.

    ``max_ms`` is checked after each strategy finishes; an overrun turns the
    entry into a recorded failure.  ``deterministic`` drops timings so equal
    inputs give byte-identical reports.
    """
    entries = []
    for name in strategies:
        try:
            e = run_strategy(G, name, max_dim, max_cells, sw_cap)
            if max_ms is not None and e.ms is not None and e.ms > max_ms:
                e = BoundEntry(name, e.complex_cells_by_dim, None, None, None, e.ms,
                               f"time cap of {max_ms} ms exceeded")
        except ResourceLimitError as exc:
            e = BoundEntry(name, [], None, None, None, None, f"resource cap: {exc}")
        except HomcxError as exc:
            if isinstance(exc, SoundnessError):
                raise
            e = BoundEntry(name, [], None, None, None, None, f"failed: {exc}")
        if deterministic:
            e.ms = None
        elif e.ms is not None:
            e.ms = round(e.ms, 3)
        entries.append(e)
    upper = greedy_upper(G)
    trivial = 1 if G.n else 0
    best = max([trivial] + [e.bound for e in entries if e.bound is not None and e.rigor == RIGOROUS])
    best_any = max([trivial] + [e.bound for e in entries if e.bound is not None])
    warnings = []
    if upper is not None and best > upper:
        raise SoundnessError(f"rigorous lower bound {best} exceeds greedy upper bound {upper}")
    if upper is not None and best_any > upper:
        warnings.append(f"homological-proxy bound {best_any} exceeds greedy upper bound {upper}")
    return BoundReport(describe(G), entries, upper, best, best_any, warnings)
