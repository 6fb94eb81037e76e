"""The ``hom`` command line tool.

Exit codes: 0 success, 1 bad input, 2 resource cap exceeded, 3 soundness
violation (including a failed ``verify`` check).
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .cache import cached_build
from .chains import homology
from .equivariant import sw_class
from .errors import FormatError, HomcxError, ResourceLimitError, SoundnessError
from .graphs import FAMILIES, Graph, complete, cycle, fold_reduce, parse_family, read_graph, write_graph
from .hom import Involution, complete_swap, cycle_reflection
from .obstruction import DEFAULT_STRATEGIES, bound_report, parse_strategy

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_SOUNDNESS = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    graphs: list[Graph]
    graph_specs: list[str]
    strategies: list[str] = field(default_factory=list)
    max_cells: int | None = None
    max_dim: int | None = None
    max_ms: float | None = None
    cache_dir: str | None = None
    fmt: str = "json"
    threads: int = 1
    deterministic: bool = False
    extra: dict = field(default_factory=dict)


def load_graph(spec: str) -> Graph:
    """A family spec such as ``cycle:5`` or a path to a graph file."""
    family = spec.partition(":")[0]
    if ":" in spec and family in FAMILIES:
        G = parse_family(spec)
        return G
    path = Path(spec)
    if not path.exists():
        raise FormatError(f"{spec!r} is neither a graph family spec nor an existing file")
    try:
        G = read_graph(path.read_text())
    except FormatError as exc:
        raise FormatError(f"{spec}: {exc}") from None
    return Graph(G.n, G.adj, name=path.stem)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hom", description="Hom complexes, their homology and chromatic lower bounds.")
    p.add_argument("--version", action="version", version=f"hom {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", dest="fmt", choices=["json", "csv", "text"], default="json")
        sp.add_argument("--max-cells", type=int)
        sp.add_argument("--max-dim", type=int)
        sp.add_argument("--max-ms", type=float)
        sp.add_argument("--cache-dir")
        sp.add_argument("--threads", type=int, default=1, help="accepted for compatibility; work is single-threaded")
        sp.add_argument("--deterministic", action="store_true", help="omit timings so reports are byte-identical")
        sp.add_argument("--output", "-o", help="write the report here instead of stdout")

    sp = sub.add_parser("build", help="build Hom(G, H) and report its cells")
    sp.add_argument("source")
    sp.add_argument("target")
    common(sp)

    sp = sub.add_parser("homology", help="homology of Hom(G, H)")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("--ring", choices=["Z", "F2"], default="Z")
    common(sp)

    sp = sub.add_parser("sw-height", help="height of the first Stiefel-Whitney class of Hom(K_m or C_2r+1, H)")
    sp.add_argument("source", help="complete:m or an odd cycle:n")
    sp.add_argument("target")
    sp.add_argument("--cap", type=int)
    sp.add_argument("--method", choices=["auto", "order", "cellular"], default="auto")
    common(sp)

    sp = sub.add_parser("chi-bound", help="chromatic lower bounds for a graph")
    sp.add_argument("graph")
    sp.add_argument("--strategy", default=",".join(DEFAULT_STRATEGIES),
                    help="comma list of neighborhood, k<m>, c<2r+1>, sw-k<m>, sw-c<2r+1>")
    common(sp)

    sp = sub.add_parser("e1-page", help="E^1 page of the support filtration of Hom_+(G, K_n)")
    sp.add_argument("graph")
    sp.add_argument("n", type=int)
    sp.add_argument("--ring", choices=["Z", "F2"], default="Z")
    common(sp)

    sp = sub.add_parser("fold-reduce", help="delete folded vertices until none remain")
    sp.add_argument("graph")
    common(sp)

    sp = sub.add_parser("verify", help="run the acceptance checks")
    sp.add_argument("--only", help="comma list of check numbers")
    sp.add_argument("--no-stretch", action="store_true")
    common(sp)
    return p


def parse_inputs(argv: list[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    specs = [getattr(args, k) for k in ("source", "target", "graph") if getattr(args, k, None) is not None]
    for name in ("max_cells", "max_dim", "max_ms", "threads"):
        v = getattr(args, name)
        if v is not None and v <= 0 and not (name == "max_dim" and v == 0):
            raise ValueError(f"--{name.replace('_', '-')} must be positive")
    graphs = [load_graph(s) for s in specs]
    strategies = []
    if args.command == "chi-bound":
        strategies = [s.strip() for s in args.strategy.split(",") if s.strip()]
        for s in strategies:
            parse_strategy(s)
    extra = {k: v for k, v in vars(args).items()
             if k in ("ring", "cap", "method", "n", "only", "no_stretch", "output")}
    return RunConfig(args.command, graphs, specs, strategies, args.max_cells, args.max_dim, args.max_ms,
                     args.cache_dir, args.fmt, args.threads, args.deterministic, extra)


def input_hash(cfg: RunConfig) -> str:
    h = hashlib.sha256()
    h.update(cfg.command.encode())
    for G in cfg.graphs:
        h.update(write_graph(G).encode())
    flags = {"strategies": cfg.strategies, "max_cells": cfg.max_cells, "max_dim": cfg.max_dim,
             **{k: v for k, v in cfg.extra.items() if k != "output"}}
    h.update(json.dumps(flags, sort_keys=True).encode())
    return h.hexdigest()


# -- commands -----------------------------------------------------------------------

def _build(cfg: RunConfig, G: Graph, H: Graph):
    X, hit = cached_build(G, H, cfg.max_dim, cfg.max_cells, cfg.cache_dir)
    return X, hit


def cmd_build(cfg):
    G, H = cfg.graphs
    X, hit = _build(cfg, G, H)
    return {"cells_by_dim": X.f_vector(), "dimension": X.dimension, "truncated": X.truncated,
            "dim_cap": X.dim_cap}


def cmd_homology(cfg):
    G, H = cfg.graphs
    X, hit = _build(cfg, G, H)
    res = homology(X.chain_complex(cfg.extra["ring"]))
    d = res.as_dict()
    return {"ring": d["ring"], "betti": d["betti"], "torsion": d["torsion"], "cells_by_dim": X.f_vector(),
            "valid_through": d["valid_through"]}


def _involution_for(source: Graph, X):
    if source.n >= 2 and source == complete(source.n):
        return Involution(X, complete_swap(source.n)), "swap"
    if source.n >= 3 and source.n % 2 == 1 and source == cycle(source.n):
        return Involution(X, cycle_reflection((source.n - 1) // 2)), "reflection"
    raise HomcxError("sw-height needs a complete graph (swap) or an odd cycle (reflection) as source")


def cmd_sw_height(cfg):
    G, H = cfg.graphs
    cap = cfg.extra.get("cap")
    X, hit = _build(cfg, G, H)
    if X.is_empty:
        return {"height": -1, "powers_checked": 0, "nonzero": [], "cells_by_dim": [], "action": None}
    sigma, action = _involution_for(G, X)
    cap = X.dimension if cap is None else cap
    data = sw_class(X, sigma, min(cap, X.dimension), cfg.extra["method"], allow_disconnected=True)
    return {"height": data.height, "powers_checked": data.powers_checked, "nonzero": data.nonzero,
            "action": action, "cells_by_dim": X.f_vector(), "truncated": X.truncated}


def cmd_chi_bound(cfg):
    (G,) = cfg.graphs
    rep = bound_report(G, cfg.strategies, cfg.max_dim, cfg.max_cells, cfg.max_ms, deterministic=cfg.deterministic)
    return rep.as_dict()


def cmd_e1_page(cfg):
    from .filtration import SupportFiltration, e1_page, tableau_csv
    (G,) = cfg.graphs
    F = SupportFiltration(G, cfg.extra["n"], cfg.extra["ring"])
    if cfg.max_cells is not None and len(F.complex) > cfg.max_cells:
        raise ResourceLimitError(f"Hom_+ has {len(F.complex)} simplices, above --max-cells {cfg.max_cells}")
    E = e1_page(F)
    entries = [{"d": d, "s": s, "rank": E.rank(d, s), "torsion": E.torsion(d, s)} for d, s in E.entries()]
    return {"ring": E.ring, "entries": entries, "euler_characteristic": E.euler_characteristic(),
            "d1_squared_zero": E.check_d1_squared(), "_csv": tableau_csv(E)}


def cmd_fold_reduce(cfg):
    (G,) = cfg.graphs
    R, deleted = fold_reduce(G)
    return {"deleted": deleted, "vertices": R.n, "graph": write_graph(R)}


def cmd_verify(cfg):
    from .verify import run_all
    only = cfg.extra.get("only")
    numbers = [int(x) for x in only.split(",")] if only else None
    results = run_all(numbers, stretch=not cfg.extra.get("no_stretch"))
    return {"checks": [{"number": r.number, "title": r.title, "passed": r.passed,
                        "seconds": None if cfg.deterministic else round(r.seconds, 3), "details": r.details}
                       for r in results],
            "all_passed": all(r.passed for r in results)}


COMMANDS = {
    "build": cmd_build,
    "homology": cmd_homology,
    "sw-height": cmd_sw_height,
    "chi-bound": cmd_chi_bound,
    "e1-page": cmd_e1_page,
    "fold-reduce": cmd_fold_reduce,
    "verify": cmd_verify,
}


# -- output --------------------------------------------------------------------------

def emit_report(cfg: RunConfig, result: dict) -> str:
    csv_text = result.pop("_csv", None)
    doc = {"tool": "hom", "version": __version__, "command": cfg.command, "inputs": cfg.graph_specs,
           "input_hash": input_hash(cfg), **result}
    if cfg.fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if cfg.fmt == "csv":
        if csv_text is not None:
            return csv_text
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in doc.items():
            w.writerow([k, json.dumps(v) if isinstance(v, (dict, list)) else v])
        return buf.getvalue()
    lines = []
    for k, v in doc.items():
        if k == "checks":
            for c in v:
                lines.append(f"[{'PASS' if c['passed'] else 'FAIL'}] {c['number']:>2}. {c['title']}")
        elif k == "strategies":
            for e in v:
                lines.append(f"  {e['name']:<14} invariant={e['invariant']} bound={e['bound']} "
                             f"rigor={e['rigor']} {e['note']}")
        elif isinstance(v, str) and "\n" in v:
            lines.append(f"{k}:")
            lines.extend("  " + line for line in v.rstrip().splitlines())
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def _write(text: str, output: str | None):
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    out = Path(output)
    fd, tmp = tempfile.mkstemp(dir=out.parent or ".", suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, out)


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_inputs(argv)
    except (FormatError, ValueError) as exc:
        print(f"hom: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:
        # argparse usage errors, --help and --version
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    t0 = time.perf_counter()
    try:
        result = COMMANDS[cfg.command](cfg)
        elapsed = (time.perf_counter() - t0) * 1000
        if cfg.max_ms is not None and cfg.command != "chi-bound" and elapsed > cfg.max_ms:
            raise ResourceLimitError(f"run took {elapsed:.0f} ms, above --max-ms {cfg.max_ms:g}")
    except ResourceLimitError as exc:
        print(f"hom: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except SoundnessError as exc:
        print(f"hom: soundness violation: {exc}", file=sys.stderr)
        return EXIT_SOUNDNESS
    except (HomcxError, ValueError) as exc:
        print(f"hom: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _write(emit_report(cfg, result), cfg.extra.get("output"))
    if cfg.command == "verify" and not result["all_passed"]:
        return EXIT_SOUNDNESS
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
