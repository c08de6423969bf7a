import json
import math

import pytest

from varent.circuits import build_variational_circuit, save_circuit
from varent.cli import main

PI = math.pi


def run_cli(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_sweep_preset_to_file(tmp_path, capsys):
    out = tmp_path / "a.csv"
    code, _, _ = run_cli(["sweep", "--preset", "fig6a", "--shots", "0", "--output", str(out)], capsys)
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 130


def test_sweep_json_and_overrides(capsys):
    code, out, _ = run_cli(["sweep", "--preset", "fig5a", "--shots", "10", "--qubits", "4", "--qubit", "2", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["config"]["n_qubits"] == 4 and data["config"]["qubit"] == 2


def test_sweep_config_file(tmp_path, capsys):
    cfg = {
        "n_qubits": 3, "depth": 1, "layer_thetas": [None], "layer_phis": ["pi"],
        "sweep": {"parameter": "theta", "layer": 0}, "range": {"start": 0, "end": "pi", "step": "pi/4"},
        "shots": 0, "closed_form": "qgan_k1",
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    code, out, _ = run_cli(["sweep", "--config", str(path)], capsys)
    assert code == 0
    assert len(out.splitlines()) == 6


def test_sweep_bad_config_exit_2(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text('{"depth": 1,\n "sweep": }')
    code, _, err = run_cli(["sweep", "--config", str(path)], capsys)
    assert code == 2 and "cfg.json:2:" in err


def test_missing_file_exit_3(tmp_path, capsys):
    code, _, _ = run_cli(["estimate", "--circuit", str(tmp_path / "nope.json"), "--qubit", "0"], capsys)
    assert code == 3


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "no-such-suite"])
    assert exc.value.code == 2


def test_estimate_report(tmp_path, capsys):
    path = tmp_path / "c.json"
    code, _, _ = run_cli(["circuit", "--preset", "fig5a", "--value", "pi/2", "--output", str(path)], capsys)
    assert code == 0
    code, out, _ = run_cli(["estimate", "--circuit", str(path), "--qubit", "1", "--shots", "100000", "--seed", "4", "--format", "json"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["e_exact"] == pytest.approx(0.5, abs=1e-12)
    assert abs(report["e_sampled"] - 0.5) < 0.01
    assert {"sx", "sy", "sz", "sx_std_error"} <= set(report)


def test_estimate_k0(tmp_path, capsys):
    path = tmp_path / "c.json"
    save_circuit(build_variational_circuit(3, 0, [[], [], []]), path)
    code, out, _ = run_cli(["estimate", "--circuit", str(path), "--qubit", "0", "--shots", "10000"], capsys)
    assert code == 0
    assert "e_exact: 0\n" in out and "e_sampled: 0\n" in out


def test_estimate_is_byte_identical(tmp_path, capsys):
    path = tmp_path / "c.json"
    run_cli(["circuit", "--preset", "fig5a", "--value", "pi/4", "--output", str(path)], capsys)
    args = ["estimate", "--circuit", str(path), "--qubit", "1", "--seed", "17", "--resolution", "32"]
    _, first, _ = run_cli(args, capsys)
    _, second, _ = run_cli(args, capsys)
    assert first == second and "e_grid:" in first


def test_estimate_parse_error(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"n_qubits": 3, "depth": 1, "thetas": [[0.1], [0.2]]}))
    code, _, err = run_cli(["estimate", "--circuit", str(path), "--qubit", "0"], capsys)
    assert code == 2 and "thetas" in err


def test_graph_command(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("n 4\n0 1\n0 2\n0 3\n")
    code, out, _ = run_cli(["graph", "--edges", str(path), "--theta", "pi/3", "--phi", "pi/2"], capsys)
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "vertex,degree,e_closed_form,e_simulated,abs_difference"
    assert rows[1].startswith("0,3,")
    code, out, _ = run_cli(["graph", "--edges", str(path), "--theta", "1", "--phi", "2", "--format", "json"], capsys)
    assert json.loads(out)["passed"] is True


def test_graph_bad_edges(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("n 2\n0 5\n")
    code, _, err = run_cli(["graph", "--edges", str(path), "--theta", "1", "--phi", "1"], capsys)
    assert code == 2 and ":2:" in err


@pytest.mark.parametrize("suite", ["locality", "graph-formula"])
def test_verify_command(suite, capsys):
    code, out, _ = run_cli(["verify", suite], capsys)
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_verify_failure_exit_code(monkeypatch, capsys):
    from varent import verify

    monkeypatch.setitem(verify.SUITES, "locality", lambda: {"suite": "locality", "passed": False})
    code, _, _ = run_cli(["verify", "locality"], capsys)
    assert code == 1


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "varent", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "sweep" in proc.stdout
