import json

import pytest

from homcx.cache import cache_key, cached_build, dump_hom, load_hom
from homcx.errors import FormatError
from homcx.graphs import complete, cycle
from homcx.hom import build_hom


def test_dump_round_trip():
    X = build_hom(cycle(5), complete(3))
    Y = load_hom(dump_hom(X))
    assert Y.cells == X.cells and Y.G == X.G and Y.H == X.H
    assert Y.chain_complex("Z").boundary == X.chain_complex("Z").boundary


def test_truncation_survives():
    X = build_hom(cycle(5), complete(4), dim_cap=1)
    Y = load_hom(dump_hom(X))
    assert Y.truncated and Y.valid_through() == 0


def test_corrupt_entry_rejected():
    doc = json.loads(dump_hom(build_hom(complete(2), complete(3))))
    doc["covers"] = doc["covers"][1:]
    with pytest.raises(FormatError):
        load_hom(json.dumps(doc))
    with pytest.raises(FormatError):
        load_hom("{not json")


def test_key_depends_on_inputs():
    k = cache_key(cycle(5), complete(3))
    assert k != cache_key(cycle(5), complete(4))
    assert k != cache_key(cycle(5), complete(3), dim_cap=1)
    assert k == cache_key(cycle(5), complete(3))


def test_cached_build_hit(tmp_path):
    X, hit = cached_build(cycle(5), complete(3), directory=tmp_path)
    assert not hit
    Y, hit = cached_build(cycle(5), complete(3), directory=tmp_path)
    assert hit and Y.cells == X.cells
    assert len(list(tmp_path.glob("*.json"))) == 1


def test_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("HOMCX_CACHE_DIR", str(tmp_path))
    cached_build(complete(2), complete(3))
    assert len(list(tmp_path.glob("*.json"))) == 1
