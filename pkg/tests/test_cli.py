import json
import math
import subprocess
import sys

import pytest

from isoq.cli import parse_csv, render, run


def isoq(*args, env=None, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "isoq", *args], capture_output=True, text=True, env=env, cwd=cwd
    )


def test_mandel_csv_shape(tmp_path):
    out = tmp_path / "q.csv"
    assert run(["mandel", "--alpha0", "3", "--xi-min", "0.05", "--xi-max", "0.95", "--steps", "90", "--out", str(out)]) == 0
    header, rows = parse_csv(out.read_text())
    assert header == ["xi", "mean_n", "mean_n2", "Q"]
    assert len(rows) == 90
    q = [r[3] for r in rows]
    assert min(q) < 0 < max(q)
    assert b"\r\n" not in out.read_bytes()


def test_wigner_grid_csv(tmp_path):
    out = tmp_path / "w.csv"
    rc = run(["wigner", "--R", "0.7", "--phi", "0", "--alpha0", "0.5", "--half-width", "3", "--res", "16", "--out", str(out)])
    assert rc == 0
    header, rows = parse_csv(out.read_text())
    assert header == ["x", "p", "W"] and len(rows) == 256
    assert max(r[2] for r in rows) <= 1.0


def test_json_output_and_nan_as_null(tmp_path):
    out = tmp_path / "a.json"
    assert run(["angular", "--steps", "3", "--half-width", "1.3", "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["columns"] == ["x_plus", "y_plus", "S_Lx", "S_Ly"]
    assert len(doc["rows"]) == 9
    # (1.3, 0) sits on the ring |alpha0_+| = |alpha0_-| where <L_z> = 0
    ring = [r for r in doc["rows"] if r[0] == 1.3 and r[1] == 0.0]
    assert ring and ring[0][2] is None


def test_csv_round_trip():
    rows = [(0.1, 1 / 3, -2.5e-300, 1e300), (math.pi, 0.0, -0.0, 12345678.901234567)]
    text = render(("a", "b", "c", "d"), rows, "csv")
    header, back = parse_csv(text)
    assert header == ["a", "b", "c", "d"]
    assert back == [list(r) for r in rows]


def test_usage_errors_exit_2(capsys):
    assert run([]) == 2
    assert run(["nope"]) == 2
    assert run(["mandel", "--steps", "x"]) == 2
    assert run(["mandel", "--xi-max", "1.5"]) == 2
    assert "--xi-max" in capsys.readouterr().err
    assert run(["wigner", "--res", "4096"]) == 2
    assert run(["validate", "--criteria", "42"]) == 2


def test_help_exits_zero():
    assert run(["--help"]) == 0


def test_config_file_and_override(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "isoq.cfg"
    cfg.write_text("# defaults\nsteps = 3\nxi_min = 0.2\nwigner.res = 4\n")
    monkeypatch.setenv("ISOQ_CONFIG", str(cfg))
    assert run(["mandel"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4 and lines[1].startswith("0.2,")
    assert run(["mandel", "--steps", "5"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 6
    assert run(["wigner"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 17


def test_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert run(["mandel", "--config", str(bad)]) == 2
    bad.write_text("just words\n")
    assert run(["mandel", "--config", str(bad)]) == 2
    assert run(["mandel", "--config", str(tmp_path / "missing.cfg")]) == 2


def test_eigen_output(capsys):
    assert run(["eigen", "--n", "1", "--l", "0", "--points", "5"]) == 0
    header, rows = parse_csv(capsys.readouterr().out)
    assert header == ["r", "V", "Phi", "E"]
    assert all(r[3] == 7.0 for r in rows)


def test_validate_subset_passes(capsys):
    assert run(["validate", "--criteria", "1,4"]) == 0
    text = capsys.readouterr().out
    assert "FAIL" not in text


def test_validate_strict_flags_known_discrepancy(capsys):
    assert run(["validate", "--criteria", "7"]) == 0
    assert "KNOWN-FAIL" in capsys.readouterr().out
    assert run(["validate", "--criteria", "7", "--strict"]) == 1


@pytest.mark.parametrize(
    "args",
    [
        ("mandel", "--steps", "20"),
        ("quadrature", "--amp-steps", "4", "--theta-steps", "5"),
        ("angular", "--steps", "5"),
        ("wigner", "--res", "24", "--method", "series"),
        ("eigen", "--n", "2", "--l", "1"),
        ("validate", "--criteria", "1,3,4"),
    ],
)
def test_subprocess_runs_are_byte_identical(args, tmp_path):
    a = isoq(*args, "--out", str(tmp_path / "a"))
    b = isoq(*args, "--out", str(tmp_path / "b"))
    assert a.returncode == b.returncode == 0, a.stderr
    assert (tmp_path / "a").read_bytes() == (tmp_path / "b").read_bytes()
