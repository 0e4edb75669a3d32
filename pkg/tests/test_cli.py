"""Command line interface: outputs, file formats, and exit codes."""
import csv
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from quditwork.cli import main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# monotones / criterion
# ---------------------------------------------------------------------------


def test_monotones_text_output(capsys):
    code, out, _ = run_cli(["monotones", "--preset", "omega_max"], capsys)
    assert code == 0
    assert "g_concurrence: 1" in out
    assert "criterion: PASS" in out
    assert "e_3: 0.03703703704" in out


def test_monotones_json_output(capsys):
    code, out, _ = run_cli(["monotones", "--preset", "phi_me", "--json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["g_concurrence"] == pytest.approx(1.0)
    assert doc["concurrence"] == pytest.approx(1.0)
    assert doc["criterion"]["passes"] is True
    assert doc["criterion"]["schmidt_rank"] == 2
    assert doc["tolerance"] == pytest.approx(1e-7)


def test_criterion_fails_for_rank_deficient(capsys):
    code, out, _ = run_cli(
        ["criterion", "--preset", "omega_tilde", "--json"], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["passes"] is False
    assert doc["schmidt_rank"] == 2


def test_preset_with_arguments(capsys):
    code, out, _ = run_cli(
        ["monotones", "--preset", "omega_tilde:0.5,0.25", "--json"], capsys
    )
    assert code == 0
    doc = json.loads(out)
    coeffs = doc["schmidt_coefficients"]
    assert coeffs[0] == pytest.approx(math.sqrt(0.5))
    assert coeffs[2] == pytest.approx(0.0, abs=1e-12)


def test_state_file_input(tmp_path, capsys):
    path = tmp_path / "st.json"
    amp = 1.0 / math.sqrt(2.0)
    doc = {
        "dimA": 2,
        "dimB": 2,
        "amplitudes": [[amp, 0], [0, 0], [0, 0], [amp, 0]],
    }
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(["monotones", "--state", str(path), "--json"], capsys)
    assert code == 0
    assert json.loads(out)["g_concurrence"] == pytest.approx(1.0)


# ---------------------------------------------------------------------------
# work / bound
# ---------------------------------------------------------------------------


def test_work_text_and_convergence(capsys):
    code, out, _ = run_cli(["work", "--preset", "prod00", "--grid", "64"], capsys)
    assert code == 0
    assert "work: 0.4426155718" in out
    assert "mode: QUBIT_CIRCLE" in out
    assert "converged: true" in out


def test_work_json_with_grid_dump(tmp_path, capsys):
    out_path = tmp_path / "surface.json"
    code, out, _ = run_cli(
        ["work", "--preset", "omega_max", "--grid", "8", "--json", "--out", str(out_path)],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["work"] == pytest.approx(1.0, abs=1e-12)
    dumped = json.loads(out_path.read_text())
    zg = np.array(dumped["zeta_grid"])
    assert zg.shape == (8, 8)
    assert np.allclose(zg, 1.0, atol=1e-12)


def test_work_csv_surface_dump(tmp_path, capsys):
    out_path = tmp_path / "surface.csv"
    code, _, _ = run_cli(
        ["work", "--preset", "phi_me", "--grid", "8", "--out", str(out_path)], capsys
    )
    assert code == 0
    with open(out_path, newline="") as fp:
        table = list(csv.reader(fp))
    assert table[0] == ["theta_index", "zeta"]
    assert len(table) == 9


def test_bound_output(capsys):
    code, out, _ = run_cli(
        ["bound", "--dim", "2", "--restarts", "2", "--grid", "16", "--json"], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert 0.3 < doc["bound"] < 0.6
    assert doc["mode"] == "QUBIT_CIRCLE"
    assert len(doc["product_state_a"]) == 2
    assert "reference" not in doc


def test_bound_dim3_carries_reference_annotation(capsys):
    code, out, _ = run_cli(
        ["bound", "--dim", "3", "--restarts", "1", "--grid", "8", "--json"], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["reference"]["value"] == pytest.approx(0.65)
    assert doc["reference"]["delta"] == pytest.approx(doc["bound"] - 0.65, abs=1e-12)


# ---------------------------------------------------------------------------
# protocol
# ---------------------------------------------------------------------------


def test_protocol_json_report(tmp_path, capsys):
    report_path = tmp_path / "report.json"
    code, out, _ = run_cli(
        [
            "protocol",
            "--preset",
            "omega_max",
            "--rounds",
            "2000",
            "--seed",
            "9",
            "--json",
            "--out",
            str(report_path),
        ],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["stats"]["success_ratio"] == 1.0
    assert doc["stats"]["feasible"] is True
    assert doc["generator"] == {"name": "philox", "seed": 9}
    assert sum(doc["stats"]["outcome_counts"]) == 2000
    saved = json.loads(report_path.read_text())
    assert saved == doc


def test_protocol_nan_fidelity_becomes_null(capsys):
    code, out, _ = run_cli(
        ["protocol", "--preset", "omega_tilde", "--rounds", "500", "--json"], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["stats"]["per_outcome_fidelity"][2] is None
    assert doc["stats"]["outcome_counts"][2] == 0
    assert doc["stats"]["feasible"] is False


def test_protocol_deterministic_across_invocations(capsys):
    args = ["protocol", "--preset", "phi_me", "--rounds", "3000", "--seed", "4", "--json"]
    _, out1, _ = run_cli(args, capsys)
    _, out2, _ = run_cli(args, capsys)
    assert json.loads(out1) == json.loads(out2)


# ---------------------------------------------------------------------------
# fig
# ---------------------------------------------------------------------------


def test_fig_writes_scan_csv(tmp_path, capsys):
    out_path = tmp_path / "scan.csv"
    code, out, _ = run_cli(
        ["fig", "rank2-mix", "--steps", "3", "--grid", "8", "--out", str(out_path)],
        capsys,
    )
    assert code == 0
    with open(out_path, newline="") as fp:
        table = list(csv.reader(fp))
    assert table[0] == ["param", "g_concurrence", "work", "mode", "grid"]
    assert len(table) == 4
    assert [r[0] for r in table[1:]] == ["0", "0.5", "1"]
    assert [r[1] for r in table[1:]] == ["1", "0.5", "0"]
    assert float(table[1][2]) == pytest.approx(1.0, abs=1e-12)


def test_fig_product_mix_g_column(tmp_path, capsys):
    out_path = tmp_path / "scan.csv"
    code, _, _ = run_cli(
        ["fig", "product-mix", "--steps", "5", "--grid", "8", "--out", str(out_path)],
        capsys,
    )
    assert code == 0
    with open(out_path, newline="") as fp:
        rows = list(csv.reader(fp))[1:]
    assert [float(r[1]) for r in rows] == pytest.approx([0, 0.25, 0.5, 0.75, 1.0])


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------


def test_exit_code_parse_error(capsys):
    code, _, err = run_cli(["monotones", "--preset", "nosuch"], capsys)
    assert code == 2
    assert "unknown preset" in err


def test_exit_code_missing_input(capsys):
    code, _, _ = run_cli(["monotones"], capsys)
    assert code == 2


def test_exit_code_state_file_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{broken")
    code, _, _ = run_cli(["monotones", "--state", str(path)], capsys)
    assert code == 2


def test_exit_code_invalid_state(tmp_path, capsys):
    path = tmp_path / "zero.json"
    doc = {"dimA": 2, "dimB": 2, "amplitudes": [[0, 0]] * 4}
    path.write_text(json.dumps(doc))
    code, _, err = run_cli(["monotones", "--state", str(path)], capsys)
    assert code == 3
    assert "zero norm" in err


def test_exit_code_validation_errors(capsys):
    code, _, _ = run_cli(["work", "--preset", "prod00", "--grid", "4"], capsys)
    assert code == 4
    code, _, _ = run_cli(["work", "--preset", "prod00", "--mode", "grid"], capsys)
    assert code == 4
    code, _, _ = run_cli(["fig", "rank2-mix", "--steps", "1", "--out", "/tmp/x.csv"], capsys)
    assert code == 4


def test_exit_code_bad_preset_arguments(capsys):
    code, _, _ = run_cli(["monotones", "--preset", "omega_tilde:a,b"], capsys)
    assert code == 2
    # r + s > 1 is a range problem, not a parse problem
    code, _, _ = run_cli(["monotones", "--preset", "omega_tilde:0.9,0.9"], capsys)
    assert code == 4


def test_argparse_rejects_unknown_mode():
    proc = subprocess.run(
        [sys.executable, "-m", "quditwork.cli", "work", "--preset", "prod00", "--mode", "bogus"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "quditwork.cli", "monotones", "--preset", "phi_me"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "g_concurrence: 1" in proc.stdout
