import csv
import json
import math

import numpy as np
import pytest

import qgatelab
from qgatelab.cli import parse_angle, run


def read_csv(path):
    lines = path.read_text().splitlines()
    comments = [l for l in lines if l.startswith("#")]
    rows = list(csv.DictReader(l for l in lines if not l.startswith("#")))
    return comments, rows


@pytest.mark.parametrize("text,value", [("pi", math.pi), ("pi/2", math.pi / 2), ("-3*pi/4", -3 * math.pi / 4),
                                        ("0.5", 0.5), ("2pi", None)])
def test_parse_angle(text, value):
    if value is None:
        with pytest.raises(Exception):
            parse_angle(text)
    else:
        assert parse_angle(text) == pytest.approx(value)


def test_unknown_command_and_bad_flag():
    assert run(["teleport"]) == 2
    assert run(["synth-ns", "--seeds", "0"]) == 2
    assert run(["lattice-ground", "--sites", "4"]) == 2


def test_simulate_identity(tmp_path):
    sc = {"network": {"modes": 3, "elements": []}, "ancilla": [1, 0], "pattern": [1, 0], "signal_modes": [0],
          "cutoff": 2, "input": [[0.6, 0], [0, 0.48], [0.64, 0]]}
    (tmp_path / "s.json").write_text(json.dumps(sc))
    out = tmp_path / "o.json"
    assert run(["simulate", "--scenario", str(tmp_path / "s.json"), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["version"] == qgatelab.__version__
    assert doc["config"]["scenario_data"] == sc
    assert np.allclose(doc["result"]["output"], doc["result"]["input"])
    assert doc["result"]["success_probability"] == pytest.approx(1.0)


def test_malformed_json_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"network": {"modes": 2,\n  "elements": [}')
    assert run(["simulate", "--scenario", str(bad)]) == 2
    assert "line 2, column" in capsys.readouterr().err


def test_missing_field_is_named(tmp_path, capsys):
    f = tmp_path / "s.json"
    f.write_text(json.dumps({"network": {"modes": 2, "elements": []}, "ancilla": [0]}))
    assert run(["simulate", "--scenario", str(f)]) == 2
    assert "'pattern'" in capsys.readouterr().err


def test_wrong_input_length(tmp_path, capsys):
    f = tmp_path / "s.json"
    f.write_text(json.dumps({"network": {"modes": 2, "elements": []}, "ancilla": [0], "pattern": [0],
                             "signal_modes": [0], "cutoff": 1, "input": [[1, 0]]}))
    assert run(["simulate", "--scenario", str(f)]) == 2
    assert "'input'" in capsys.readouterr().err


def test_synth_ns_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run(["synth-ns", "--phi", "pi", "--seeds", "3", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["config"]["seeds"] == 3 and doc["config"]["command"] == "synth-ns"
    assert doc["result"]["success_probability"] == pytest.approx(0.25, abs=1e-6)


def test_numeric_failure_exit_code(tmp_path, monkeypatch, capsys):
    import qgatelab.lattice as lat
    from qgatelab.lattice import ConvergenceError

    def boom(*a, **k):
        raise ConvergenceError("no convergence")

    monkeypatch.setattr(lat, "ground_state", boom)
    assert run(["lattice-ground", "--sites", "4", "--atoms", "4", "--uj", "1", "--out", str(tmp_path / "x.csv")]) == 1
    assert "numeric failure" in capsys.readouterr().err


def test_lattice_ground_csv(tmp_path):
    out = tmp_path / "g.csv"
    assert run(["lattice-ground", "--sites", "6", "--atoms", "6", "--uj", "100", "--out", str(out)]) == 0
    comments, rows = read_csv(out)
    assert comments[0] == f"# version: {qgatelab.__version__}"
    assert any(c.startswith("# config:") for c in comments)
    assert len(rows) == 6 and set(rows[0]) == {"site", "mean", "variance"}
    assert all(float(r["variance"]) < 0.1 for r in rows)


def test_lattice_ground_too_large(capsys):
    assert run(["lattice-ground", "--sites", "20", "--atoms", "20", "--uj", "1"]) == 2
    assert "exceeds" in capsys.readouterr().err


def test_lattice_scan_csv(tmp_path):
    out = tmp_path / "scan.csv"
    assert run(["lattice-scan", "--sites", "5", "--atoms", "5", "--points", "5", "--out", str(out)]) == 0
    comments, rows = read_csv(out)
    assert len(rows) == 5
    assert any("reference_critical_ratio: 11.6" in c for c in comments)
    assert run(["lattice-scan", "--sites", "5", "--atoms", "5", "--uj-min", "10", "--uj-max", "1"]) == 2


def test_fidelity_sweep_csv(tmp_path):
    out = tmp_path / "f.csv"
    assert run(["fidelity-sweep", "--ps", "1,0.99", "--etas", "1,0.99", "--samples", "100", "--out", str(out)]) == 0
    comments, rows = read_csv(out)
    assert len(rows) == 4
    assert any(c.startswith("# crossing_detector_inefficiency") for c in comments)
    assert float(rows[0]["F_mean"]) == 1.0
    assert run(["fidelity-sweep", "--ps", "1.5"]) == 2


def test_lattice_gate_config_file(tmp_path):
    cfg = tmp_path / "g.json"
    cfg.write_text(json.dumps({"which": "swap", "params": {"U_bb": 1.0, "J_a": 0.05, "J_b": 0.05}}))
    out = tmp_path / "o.json"
    assert run(["lattice-gate", "--config", str(cfg), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["which"] == "swap"
    amps = doc["result"]["swap_amplitudes"]
    assert amps["01->10"] == pytest.approx(1 / math.sqrt(2), abs=1e-2)


def test_lattice_gate_bad_params(tmp_path, capsys):
    cfg = tmp_path / "g.json"
    cfg.write_text(json.dumps({"params": {"U_bb": -1.0}}))
    assert run(["lattice-gate", "--config", str(cfg)]) == 2
    assert "U_bb" in capsys.readouterr().err


def test_signflip_and_cs(tmp_path):
    out = tmp_path / "sf.json"
    assert run(["signflip-n", "--N", "2", "--seeds", "2", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["result"]["success_probability"] == pytest.approx(0.25, abs=1e-6)
    out = tmp_path / "cs.json"
    assert run(["synth-cs", "--seeds", "3", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["result"]["success_probability"] == pytest.approx(1 / 16, abs=1e-6)
