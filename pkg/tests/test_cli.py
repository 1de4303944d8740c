import csv
import json

import numpy as np
import pytest

from starlhd.arrays import read_csv, verify_strength
from starlhd.cli import EXIT_INFEASIBLE, EXIT_INVALID, EXIT_OK, main
from starlhd.geometry import Star

from conftest import GUIDELINE_EXAMPLES


def run(*argv):
    return main([str(a) for a in argv])


def test_construct_example1_parameters(tmp_path):
    assert run("construct", "-p", 4, "-t", 3, "--t0", 2, "--policy", "compliant", "-o", tmp_path) == 0
    arr = read_csv((tmp_path / "noa.csv").read_text())
    assert arr.n == 16 and arr.levels == (8, 8, 8)
    star = Star.from_dict(json.loads((tmp_path / "star.json").read_text()))
    assert star.mu == 3 and star.t0 == 2
    assignment = json.loads((tmp_path / "assignment.json").read_text())
    assert len(assignment["generators"]) == 3
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["command"] == "construct" and manifest["schema_version"] == 1
    assert set(manifest["outputs"]) == {"star.json", "assignment.json", "noa.csv"}


def test_construct_spread_is_exact_oa(tmp_path):
    assert run("construct", "--p", 4, "--t", 2, "--t0", 0, "-o", tmp_path) == EXIT_OK
    arr = read_csv((tmp_path / "noa.csv").read_text())
    assert arr.levels == (4,) * 5
    assert verify_strength(arr, 2).is_exact


def test_construct_p5(tmp_path):
    assert run("construct", "-p", 5, "-t", 3, "--t0", 2, "-o", tmp_path) == EXIT_OK
    arr = read_csv((tmp_path / "noa.csv").read_text())
    assert arr.n == 32 and arr.d == 7


def test_construct_default_t0(tmp_path):
    assert run("construct", "-p", 4, "-t", 2, "-o", tmp_path) == EXIT_OK
    assert json.loads((tmp_path / "star.json").read_text())["t0"] == 1


def test_construct_infeasible(tmp_path, capsys):
    assert run("construct", "-p", 5, "-t", 3, "--t0", 0, "-o", tmp_path) == EXIT_INFEASIBLE
    assert "does not divide" in capsys.readouterr().err
    assert run("construct", "-p", 4, "-t", 2, "--t0", 1, "--policy", "compliant",
               "-o", tmp_path) == EXIT_INFEASIBLE
    assert run("construct", "-p", 4, "-t", 4, "--t0", 1, "-o", tmp_path) == EXIT_INVALID


def test_construct_is_reproducible(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        run("construct", "-p", 5, "-t", 3, "--t0", 1, "--policy", "compliant", "--seed", 4, "-o", out)
    for name in ("star.json", "assignment.json", "noa.csv", "manifest.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


@pytest.fixture
def noa_csv(tmp_path, example1_noa):
    path = tmp_path / "noa.csv"
    path.write_text(example1_noa.to_csv())
    return path


def test_lhd_midpoint(tmp_path, noa_csv):
    out = tmp_path / "lhd.csv"
    assert run("lhd", noa_csv, "--mode", "midpoint", "--seed", 1, "-o", out) == EXIT_OK
    pts = np.loadtxt(out, delimiter=",")
    assert pts.shape == (16, 3)
    assert np.allclose(pts * 32 % 2, 1)
    first = out.read_bytes()
    run("lhd", noa_csv, "--mode", "midpoint", "--seed", 1, "-o", out)
    assert out.read_bytes() == first
    prov = json.loads((tmp_path / "lhd.provenance.json").read_text())
    assert prov["mode"] == "midpoint"
    manifest = json.loads((tmp_path / "lhd.manifest.json").read_text())
    assert manifest["inputs"] == {"noa.csv": prov["source_sha256"]}


def test_lhd_uniform_seeds_differ(tmp_path, noa_csv):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run("lhd", noa_csv, "--seed", 1, "-o", a)
    run("lhd", noa_csv, "--seed", 2, "-o", b)
    assert a.read_bytes() != b.read_bytes()
    for path in (a, b):
        cells = np.floor(np.loadtxt(path, delimiter=",") * 16).astype(int)
        assert all(sorted(cells[:, j]) == list(range(16)) for j in range(3))


def test_lhd_oa9(tmp_path, oa9):
    src = tmp_path / "oa9.csv"
    src.write_text(oa9.to_csv())
    out = tmp_path / "l.csv"
    assert run("lhd", src, "-o", out) == EXIT_OK
    assert np.loadtxt(out, delimiter=",").shape == (9, 4)


def test_lhd_rejects_unbalanced(tmp_path, capsys):
    src = tmp_path / "bad.csv"
    src.write_text("2\n0\n0\n")
    assert run("lhd", src, "-o", tmp_path / "x.csv") == EXIT_INVALID
    assert "unbalanced" in capsys.readouterr().err


def test_evaluate(tmp_path, noa_csv, capsys):
    lhd = tmp_path / "lhd.csv"
    run("lhd", noa_csv, "--mode", "midpoint", "-o", lhd)
    capsys.readouterr()
    assert run("evaluate", lhd, "-k", 2) == EXIT_OK
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    assert [r["columns"] for r in rows] == ["1 2", "1 3", "2 3"]
    out = tmp_path / "eval.json"
    assert run("evaluate", lhd, "--format", "json", "-o", out) == EXIT_OK
    data = json.loads(out.read_text())
    assert len(data) == 1 and data[0]["k"] == 3 and data[0]["mid"] <= data[0]["aid"]


def test_evaluate_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("0.1,0.2\n0.3,oops\n")
    assert run("evaluate", bad) == EXIT_INVALID
    assert "row 2, column 2" in capsys.readouterr().err


@pytest.fixture
def sim_config(tmp_path):
    cfg = {
        "p": 4,
        "reps": 100,
        "seed": 7,
        "configurations": [{"label": k, "generators": v} for k, v in GUIDELINE_EXAMPLES.items()],
    }
    path = tmp_path / "sim.json"
    path.write_text(json.dumps(cfg))
    return path


def test_simulate(tmp_path, sim_config):
    out = tmp_path / "sim"
    assert run("simulate", sim_config, "-o", out) == EXIT_OK
    rows = list(csv.DictReader((out / "simulation.csv").open()))
    assert len(rows) == 400
    assert rows[0].keys() == {"configuration", "replicate", "mid", "aid"}
    summary = list(csv.DictReader((out / "summary.csv").open()))
    assert len(summary) == 8
    first = (out / "simulation.csv").read_bytes()
    run("simulate", sim_config, "-o", out)
    assert (out / "simulation.csv").read_bytes() == first


def test_simulate_overrides_and_errors(tmp_path, sim_config, capsys):
    out = tmp_path / "sim"
    assert run("simulate", sim_config, "--reps", 3, "-o", out) == EXIT_OK
    assert len((out / "simulation.csv").read_text().splitlines()) == 1 + 4 * 3
    bad = tmp_path / "bad.json"
    bad.write_text('{"p": 4,\n "configurations": [}')
    assert run("simulate", bad, "-o", out) == EXIT_INVALID
    assert "line 2" in capsys.readouterr().err
    bad.write_text(json.dumps({"p": 4, "configurations": [{"generators": [["A", "B", "AB"]]}]}))
    assert run("simulate", bad, "-o", out) == EXIT_INVALID
