import json
import subprocess
import sys

import pytest

from critgraph.cli import main
from critgraph.colorer import ColoringWitness, verify_witness
from critgraph.constructions import ConstructionSpec
from critgraph.formats import read_graph


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("CRITGRAPH_BUDGET", raising=False)
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_toft_graph6(workdir, capsys):
    code, out, _ = run(capsys, "construct", "toft", "--m", "5", "--format", "graph6")
    assert code == 0 and "n=20 e=45" in out
    g = read_graph(workdir / "toft.g6")
    assert (g.n, g.num_edges) == (20, 45)
    spec = ConstructionSpec.from_json((workdir / "toft.spec.json").read_text())
    assert spec.build().same_adjacency(g)


def test_construct_ogt(workdir, capsys):
    code, _, _ = run(capsys, "construct", "ogt", "--q", "2", "--m", "9", "--out", "ogt.json")
    assert code == 0 and read_graph(workdir / "ogt.json").n == 72


def test_construct_bad_params_exit_1(workdir, capsys):
    code, _, err = run(capsys, "construct", "toft", "--m", "4")
    assert code == 1 and "odd" in err
    assert run(capsys, "construct", "nosuch")[0] == 1
    assert run(capsys, "construct", "u")[0] == 1
    assert run(capsys, "construct", "u", "--children", "petersen")[0] == 1


def test_construct_is_deterministic(workdir, capsys):
    run(capsys, "construct", "g5k", "--k", "4", "--out", "a.json")
    run(capsys, "construct", "g5k", "--k", "4", "--out", "b.json")
    assert (workdir / "a.json").read_bytes() == (workdir / "b.json").read_bytes()


def test_construct_from_manifest(workdir, capsys):
    (workdir / "m.json").write_text(json.dumps({"kind": "U", "children": [{"kind": "grotzsch"}, {"kind": "cycle", "params": {"m": 5}}]}))
    code, out, _ = run(capsys, "construct", "spec", "--spec", "m.json", "--out", "u.edges", "--format", "edgelist")
    assert code == 0 and "n=71" in out


def test_verify_grotzsch(workdir, capsys):
    run(capsys, "construct", "grotzsch", "--format", "graph6", "--out", "grotzsch.g6")
    code, out, _ = run(capsys, "verify", "grotzsch.g6", "--chi", "--critical", "4", "--no-timings")
    rep = json.loads(out)
    assert code == 0 and rep["reportVersion"] == 1
    assert rep["checks"]["chromatic"] == {"mode": "exact", "value": 4, "witness": {"colors": 4, "verified": True}}
    assert rep["checks"]["criticality"]["verdict"] == "k-critical"
    assert rep["checks"]["triangleFree"]["value"] is True
    assert rep["budget"] == {"maxNodes": 10**7, "maxSeconds": 60.0}
    assert "timings" not in rep


def test_verify_gyarfas_odd_girth(workdir, capsys):
    run(capsys, "construct", "gyarfas", "--format", "dimacs", "--out", "gyarfas.col")
    code, out, _ = run(capsys, "verify", "gyarfas.col", "--odd-girth", "--expect-odd-girth", "5")
    rep = json.loads(out)
    assert code == 0 and rep["checks"]["oddGirth"] == {"mode": "exact", "value": 5}
    assert "timings" in rep
    assert run(capsys, "verify", "gyarfas.col", "--expect-odd-girth", "7")[0] == 3


def test_verify_sampled_is_reproducible(workdir, capsys):
    run(capsys, "construct", "toft", "--format", "graph6")
    args = ["verify", "toft.g6", "--critical", "4", "--sample", "10", "--seed", "7", "--no-timings"]
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second and first[0] == 0
    rep = json.loads(first[1])
    assert rep["seed"] == 7 and rep["checks"]["criticality"]["mode"] == "sampled"
    assert run(capsys, "verify", "toft.g6", "--critical", "4", "--sample", "10")[0] == 1


def test_verify_exit_codes(workdir, capsys):
    run(capsys, "construct", "toft", "--format", "graph6")
    assert run(capsys, "verify", "toft.g6", "--critical", "5")[0] == 3
    (workdir / "bad.g6").write_bytes(b"D!W\n")
    code, _, err = run(capsys, "verify", "bad.g6")
    assert code == 1 and "byte 1" in err
    assert run(capsys, "verify", "missing.g6")[0] == 1
    run(capsys, "construct", "mycielski", "--times", "3", "--out", "m.json")
    assert run(capsys, "verify", "m.json", "--chi", "--max-nodes", "3", "--no-timings")[0] == 2


def test_budget_env(workdir, capsys, monkeypatch):
    run(capsys, "construct", "cycle", "--m", "7", "--out", "c.json")
    monkeypatch.setenv("CRITGRAPH_BUDGET", "1000:5")
    code, out, _ = run(capsys, "verify", "c.json", "--chi")
    assert code == 0 and json.loads(out)["budget"] == {"maxNodes": 1000, "maxSeconds": 5.0}


def test_witness_g5_proper(workdir, capsys):
    run(capsys, "construct", "gk", "--k", "5", "--base", "toft", "--out", "g5.json")
    code, out, _ = run(capsys, "witness", "g5.json", "--clause", "proper-k")
    doc = json.loads(out)
    g = read_graph(workdir / "g5.json")
    assert code == 0 and g.n == 165 and doc["k"] == 5
    assert verify_witness(g, ColoringWitness(doc["assignment"], 5))


def test_witness_toft_after_removal(workdir, capsys):
    run(capsys, "construct", "toft", "--out", "toft.json")
    code, _, _ = run(capsys, "witness", "toft.json", "--clause", "after-removal", "--edge", "0", "1", "--out", "w.json")
    doc = json.loads((workdir / "w.json").read_text())
    g = read_graph(workdir / "toft.json").without_edge(0, 1)
    assert code == 0 and doc["k"] == 3 and verify_witness(g, ColoringWitness(doc["assignment"], 3))
    assert set(doc) >= {"k", "assignment", "clause", "constraintProfile"}


def test_witness_errors(workdir, capsys):
    run(capsys, "construct", "toft", "--out", "toft.json")
    assert run(capsys, "witness", "toft.json", "--clause", "after-removal", "--edge", "0", "7")[0] == 1
    run(capsys, "construct", "ogt", "--out", "ogt.json")
    assert run(capsys, "witness", "ogt.json", "--clause", "proper-k")[0] == 1
    run(capsys, "construct", "toft", "--format", "graph6")
    assert run(capsys, "witness", "toft.g6", "--clause", "proper-k")[0] == 1
    doc = json.loads((workdir / "toft.json").read_text())
    doc["edges"].pop()
    (workdir / "tampered.json").write_text(json.dumps(doc))
    assert run(capsys, "witness", "tampered.json", "--clause", "proper-k")[0] == 1


def test_density_table(capsys):
    code, out, _ = run(capsys, "density", "table")
    assert code == 0
    for lit in (">=1/16", ">=4/31", "1/4", ">=1/36", ">=3/35", ">=1/64", ">=1/100", "?"):
        assert lit in out
    code, out, _ = run(capsys, "density", "table", "--json")
    assert json.loads(out)["reportVersion"] == 1


def test_density_sweeps(capsys):
    code, out, _ = run(capsys, "density", "sweep", "gk", "--k", "6", "--steps", "3", "--json")
    ratios = [r["ratioFloat"] for r in json.loads(out)["rows"]]
    assert code == 0 and len(ratios) == 3 and ratios == sorted(ratios)
    code, out, _ = run(capsys, "density", "sweep", "ogt", "--q", "1..3", "--json")
    rows = json.loads(out)["rows"]
    assert [r["params"]["q"] for r in rows] == [1, 2, 3]
    assert all(r["blockMatchesFormula"] for r in rows)
    code, out, _ = run(capsys, "density", "sweep", "toft")
    assert code == 0 and out.count("\n") == 3
    assert run(capsys, "density", "sweep")[0] == 1
    assert run(capsys, "density", "sweep", "cone")[0] == 1
    assert run(capsys, "density", "sweep", "ogt", "--q", "x..y")[0] == 1


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "critgraph.cli", "construct", "toft", "--m", "4"], cwd=tmp_path, capture_output=True, text=True)
    assert proc.returncode == 1
    proc = subprocess.run([sys.executable, "-m", "critgraph.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "construct" in proc.stdout
