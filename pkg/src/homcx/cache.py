"""On-disk cache of built Hom complexes.

Entries are JSON files named by a SHA-256 over the two graph texts, the
construction flags and the package version, so a version bump never reuses
stale data.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import __version__
from .errors import FormatError
from .graphs import Graph, read_graph, write_graph
from .hom import HomComplex, build_hom

ENV_VAR = "HOMCX_CACHE_DIR"


def cache_key(G: Graph, H: Graph, dim_cap: int | None = None) -> str:
    flags = json.dumps({"kind": "hom", "dim_cap": dim_cap}, sort_keys=True)
    blob = "\n".join([write_graph(G), write_graph(H), flags, __version__])
    return hashlib.sha256(blob.encode()).hexdigest()


def dump_hom(X: HomComplex) -> str:
    covers = []
    for d in range(1, len(X.cells)):
        for j, c in enumerate(X.cells[d]):
            for f, _ in X.faces(c):
                covers.append([d, X.index[f][1], j])
    doc = {
        "version": __version__,
        "source": write_graph(X.G),
        "target": write_graph(X.H),
        "dim_cap": X.dim_cap,
        "truncated": X.truncated,
        "cells": [[list(c) for c in cs] for cs in X.cells],
        "covers": covers,
    }
    return json.dumps(doc, separators=(",", ":"))


def load_hom(text: str) -> HomComplex:
    try:
        doc = json.loads(text)
        G = read_graph(doc["source"])
        H = read_graph(doc["target"])
        cells = [tuple(c) for cs in doc["cells"] for c in cs]
        X = HomComplex(G, H, cells, doc["dim_cap"], doc["truncated"])
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise FormatError(f"corrupt cache entry: {exc}") from exc
    expected = sorted((d, X.index[f][1], j) for d in range(1, len(X.cells))
                      for j, c in enumerate(X.cells[d]) for f, _ in X.faces(c))
    if sorted(map(tuple, doc["covers"])) != expected:
        raise FormatError("cache entry cover relations disagree with its cells")
    return X


def cache_dir(explicit: str | os.PathLike | None = None) -> Path | None:
    d = explicit or os.environ.get(ENV_VAR)
    return Path(d) if d else None


def cached_build(G: Graph, H: Graph, dim_cap: int | None = None, max_cells: int | None = None,
                 directory: str | os.PathLike | None = None) -> tuple[HomComplex, bool]:
    """Build Hom(G, H), reusing a cache entry when one exists; returns (complex, hit)."""
    root = cache_dir(directory)
    if root is None:
        return build_hom(G, H, dim_cap, max_cells), False
    path = root / f"{cache_key(G, H, dim_cap)}.json"
    if path.exists():
        return load_hom(path.read_text()), True
    X = build_hom(G, H, dim_cap, max_cells)
    root.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=root, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(dump_hom(X))
    os.replace(tmp, path)
    return X, False
