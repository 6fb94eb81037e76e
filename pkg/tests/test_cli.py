import json

import pytest

from homcx import __version__
from homcx.cli import main, parse_inputs
from homcx.graphs import cycle, kneser


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_request(capsys):
    code, out, _ = run(capsys, "build", "cycle:5", "complete:4")
    doc = json.loads(out)
    assert code == 0
    assert doc["cells_by_dim"] == [240, 780, 840, 300]
    assert doc["version"] == __version__ and len(doc["input_hash"]) == 64


def test_parse_inputs():
    cfg = parse_inputs(["chi-bound", "kneser:5,2", "--strategy", "neighborhood,k2"])
    assert cfg.graphs == [kneser(5, 2)] and cfg.strategies == ["neighborhood", "k2"]
    cfg = parse_inputs(["build", "cycle:5", "complete:4"])
    assert cfg.graphs[0] == cycle(5)


def test_homology_report(capsys):
    code, out, _ = run(capsys, "homology", "cycle:5", "complete:4")
    doc = json.loads(out)
    assert code == 0
    assert doc["betti"] == {"0": 1, "1": 0, "2": 0, "3": 1}
    assert doc["torsion"] == {"1": [2]}
    assert "cells_by_dim" in doc


def test_sw_report(capsys):
    code, out, _ = run(capsys, "sw-height", "complete:2", "complete:4")
    doc = json.loads(out)
    assert code == 0 and doc["height"] == 2 and doc["powers_checked"] == 2


def test_chi_bound_text(capsys):
    code, out, _ = run(capsys, "chi-bound", "kneser:5,2", "--strategy", "neighborhood,k2", "--format", "text")
    assert code == 0 and "best_lower: 3" in out


def test_e1_csv(capsys):
    code, out, _ = run(capsys, "e1-page", "complete:2", "2", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "d,s,rank,torsion"


def test_fold_reduce(capsys):
    code, out, _ = run(capsys, "fold-reduce", "path:4")
    assert code == 0 and json.loads(out)["vertices"] == 2


def test_malformed_file(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("vertices 4\n0 1\n3 x\n")
    code, _, err = run(capsys, "build", str(f), "complete:3")
    assert code == 1 and "line 3" in err


def test_unknown_family_and_bad_caps(capsys):
    assert run(capsys, "build", "wheel:5", "complete:3")[0] == 1
    assert run(capsys, "build", "cycle:5", "complete:3", "--max-cells", "0")[0] == 1
    assert run(capsys, "build")[0] == 1


def test_resource_cap_exit(capsys):
    assert run(capsys, "build", "cycle:5", "complete:4", "--max-cells", "50")[0] == 2


def test_graph_file_round_trip(tmp_path, capsys):
    f = tmp_path / "c5.txt"
    f.write_text("# five cycle\nvertices 5\n0 1\n1 2\n2 3\n3 4\n0 4\n")
    _, a, _ = run(capsys, "build", str(f), "complete:3", "--deterministic")
    _, b, _ = run(capsys, "build", "cycle:5", "complete:3", "--deterministic")
    assert json.loads(a)["cells_by_dim"] == json.loads(b)["cells_by_dim"]


def test_cache_reload_is_byte_identical(tmp_path, capsys):
    args = ["homology", "cycle:5", "complete:3", "--cache-dir", str(tmp_path), "--deterministic"]
    _, first, _ = run(capsys, *args)
    assert list(tmp_path.glob("*.json"))
    _, second, _ = run(capsys, *args)
    assert first == second


def test_output_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert run(capsys, "build", "complete:2", "complete:3", "-o", str(out))[0] == 0
    assert json.loads(out.read_text())["cells_by_dim"] == [6, 6]


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "1,5", "--format", "text")
    assert code == 0 and out.count("[PASS]") == 2
