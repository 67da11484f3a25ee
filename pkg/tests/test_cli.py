import csv
import io
import subprocess
import sys

import numpy as np
import pytest

from phasecode import channels, verification
from phasecode.cli import main, parse_amplitudes, parse_codes


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "phasecode", *args], capture_output=True, text=True, timeout=300
    )


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_codes():
    assert parse_codes("symmetric:2..6,two_qubit") == ["symmetric:2", "symmetric:4", "symmetric:6", "two_qubit"]
    assert parse_codes("symmetric:4,8") == ["symmetric:4", "symmetric:8"]
    for bad in ("symmetric:3", "shor", "4", ""):
        with pytest.raises(Exception):
            parse_codes(bad)


def test_parse_amplitudes():
    (c0, c1), = parse_amplitudes("0.25:1.5707963267948966", 0)
    assert c0 == pytest.approx(0.5) and c1 == pytest.approx(np.sqrt(0.75) * 1j)
    assert len(parse_amplitudes("uniform-grid:5", 0)) == 5
    assert parse_amplitudes("random:3", 9) == parse_amplitudes("random:3", 9)


def test_sweep_two_rows(capsys):
    assert main(["sweep", "--code", "symmetric:4", "--lambda", "0,0.1", "--workers", "1"]) == 0
    out = capsys.readouterr()
    data = rows(out.out)
    assert len(data) == 2
    assert float(data[0]["p_accept_meas"]) == pytest.approx(1)
    assert float(data[1]["J_meas"]) == pytest.approx(0.9003320053750443, abs=1e-12)
    assert "PASS" in out.err


def test_sweep_j_improves_with_n(capsys):
    assert main(["sweep", "--code", "symmetric:2..10", "--lambda", "0.1", "--workers", "1"]) == 0
    data = {r["code_name"]: float(r["J_meas"]) for r in rows(capsys.readouterr().out)}
    assert data["symmetric8"] > data["symmetric4"]
    assert list(data) == [f"symmetric{n}" for n in (2, 4, 6, 8, 10)]


def test_sweep_two_qubit_reports_both_fidelities(tmp_path, capsys):
    out = tmp_path / "tq.csv"
    assert main(["sweep", "--code", "two_qubit", "--lambda", "0,0.5", "--out", str(out), "--workers", "1"]) == 0
    summary = capsys.readouterr().out
    assert "FINDING" in summary and "two_qubit" in summary
    data = rows(out.read_text())
    assert {"fidelity_meas", "fidelity_form", "delta_fidelity"} <= set(data[0])
    assert float(data[0]["fidelity_meas"]) == pytest.approx(1)
    assert float(data[0]["fidelity_form"]) == pytest.approx(0.5)


def test_sweep_large_code_uses_sparse_path(capsys):
    assert main(["sweep", "--code", "symmetric:40", "--lambda", "0.2", "--workers", "1"]) == 0
    (row,) = rows(capsys.readouterr().out)
    assert float(row["delta_J"]) < 1e-12


def test_sweep_parallel_matches_serial(tmp_path):
    args = ["sweep", "--code", "symmetric:2..6,standard", "--lambda", "0.1,0.7", "--c0sq", "uniform-grid:3", "--k", "1,2"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--workers", "1", "--out", str(a)]) == 0
    assert main(args + ["--workers", "3", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep\ncode = symmetric:4\nchannel = amplitude\ngamma = 0.1, 0.3\nc0sq = 0.3\nworkers = 1\n")
    assert main(["sweep", "--config", str(cfg)]) == 0
    data = rows(capsys.readouterr().out)
    assert [float(r["p_accept_meas"]) for r in data] == pytest.approx([0.9, 0.7])
    assert main(["sweep", "--config", str(cfg), "--gamma", "0.5"]) == 0
    (row,) = rows(capsys.readouterr().out)
    assert float(row["fidelity_meas"]) == pytest.approx(1)


def test_usage_errors():
    for args in (
        ["sweep", "--code", "symmetric:5"],
        ["sweep", "--lambda", "-1"],
        ["sweep", "--channel", "amplitude"],
        ["sweep", "--nope"],
        ["formulas", "bogus"],
    ):
        assert run_cli(*args).returncode == 2, args


def test_capacity_error():
    res = run_cli("sweep", "--code", "symmetric:14", "--channel", "amplitude", "--gamma", "0.1")
    assert res.returncode == 2
    assert "capacity" in res.stderr


def test_formulas_table(capsys):
    assert main(["formulas", "J", "watchdog", "--code", "symmetric:4", "--lambda", "0.1", "--k", "2"]) == 0
    data = rows(capsys.readouterr().out)
    by = {r["formula"]: float(r["value"]) for r in data}
    assert by["J"] == pytest.approx(0.9003320053750443)
    assert by["watchdog.J_k"] == pytest.approx(0.9025790893126721)


def test_decompose_dump(capsys):
    assert main(["decompose", "--code", "symmetric:4", "--lambda", "0.2", "--c0sq", "0.5"]) == 0
    out = capsys.readouterr().out
    assert out.count("# branch") == 5  # no-jump plus four single-bit jumps
    assert "total weight 1" in out


def test_verify_passes_and_is_deterministic():
    a = run_cli("verify", "--verbose")
    b = run_cli("verify", "--verbose")
    assert a.returncode == 0, a.stdout
    assert a.stdout == b.stdout
    assert "FINDING" in a.stdout


def test_verify_catches_broken_distance(monkeypatch, capsys):
    def off_by_one(width):
        d = channels.distance_table(width)
        return d + (d > 0)

    monkeypatch.setattr(channels, "distance_matrix", off_by_one)
    check = verification.check_reconstruction()
    assert not check.passed
    assert main(["verify"]) == 1
    assert "FAIL" in capsys.readouterr().out
