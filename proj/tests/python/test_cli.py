import json
import math
import os
import subprocess

import pytest

CLI = os.environ.get("TORUSCT_CLI", "torusct")


def run(*args, expect=0):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)
    assert proc.returncode == expect, proc.stdout + proc.stderr
    return proc


def test_bound_value():
    proc = run("bound", "--alpha", "0.25", "--s", "0.5", "--delta", "0.5",
               "--eps", "0", "--fnorm", "1")
    rep = json.loads(proc.stdout)
    assert rep["metric"] == "strategy_bound"
    assert rep["value"] == pytest.approx(0.25)
    assert '"value": 0.25' in proc.stdout


def test_bound_verify(tmp_path):
    out = tmp_path / "report.json"
    proc = run("bound", "--verify", "--trials", "3", "--r", "0", "--s", "1",
               "--delta", "1", "--t", "0", "--eps", "1e-3", "--seed", "4",
               "--out", out)
    rep = json.loads(proc.stdout)
    assert rep["trials"] == 3
    assert rep["passes"] == 3
    assert rep["worst_margin"] > 0.0
    assert rep["params"]["alpha"] == pytest.approx(math.sqrt(1e-3))
    assert json.loads(out.read_text()) == rep


def test_directions_count_and_listing(tmp_path):
    assert run("directions", "--r", "1", "--count").stdout == "4\n"
    assert run("directions", "--r", "50", "--count").stdout == "3096\n"

    listing = run("directions", "--r", "2").stdout.splitlines()
    assert listing[0] == "a,b"
    assert listing[1] == "1,0"
    assert listing[2] == "0,1"
    assert len(listing) == 9

    angles = tmp_path / "angles.json"
    run("directions", "--r", "2", "--angles", angles)
    rep = json.loads(angles.read_text())
    assert rep["count"] == 8
    first = rep["angles"][0]
    assert (first["a"], first["b"]) == (1, 0)
    assert first["angle_rad"] == pytest.approx(-math.pi / 2)


def test_forward_is_deterministic(tmp_path):
    args = ("forward", "--model", "A1", "--phantom", "flag", "--n", "64",
            "--r", "3", "--n-d", "8", "--sigma", "0.02", "--seed", "5")
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    run(*args, "--out", a)
    run(*args, "--out", b)
    assert a.read_bytes() == b.read_bytes()
    c = tmp_path / "c.csv"
    run(*args[:-1], "7", "--out", c)
    assert a.read_bytes() != c.read_bytes()


def test_forward_analytic_row_count(tmp_path):
    out = tmp_path / "a2.csv"
    run("forward", "--model", "A2", "--phantom", "flag", "--r", "3",
        "--n-d", "16", "--out", out)
    lines = out.read_text().splitlines()
    assert len(lines) == 1 + 16 * 16  # header + |directions(3)| * n_d


def test_forward_at2_requires_sinogram(tmp_path):
    proc = subprocess.run([CLI, "forward", "--model", "AT2", "--r", "2",
                           "--n-d", "8", "--out", str(tmp_path / "x.csv")],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "--sinogram" in proc.stderr


def test_unknown_phantom_fails():
    proc = subprocess.run([CLI, "phantom", "--name", "nonsense", "--n", "16",
                           "--out", "/tmp/never.pgm"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "error:" in proc.stderr


def test_missing_input_is_io_error(tmp_path):
    proc = subprocess.run([CLI, "reconstruct", "--data", str(tmp_path / "no.csv"),
                           "--r", "2", "--out", str(tmp_path / "t.csv")],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert "error:" in proc.stderr


def test_pipeline(tmp_path):
    pgm = tmp_path / "flag.pgm"
    csv = tmp_path / "flag.csv"
    run("phantom", "--name", "flag", "--n", "64", "--out", pgm, "--csv", csv)
    assert pgm.read_bytes().startswith(b"P5\n")
    meta = json.loads((tmp_path / "flag.pgm.json").read_text())
    assert meta["phantom"] == "flag"
    assert meta["n"] == 64
    assert csv.read_text().startswith("x,y,value\n")

    samples = tmp_path / "samples.csv"
    run("forward", "--model", "A1", "--phantom", "flag", "--n", "64",
        "--r", "4", "--n-d", "16", "--out", samples)

    table = tmp_path / "table.csv"
    image = tmp_path / "recon.pgm"
    run("reconstruct", "--data", samples, "--r", "4", "--alpha", "0.01",
        "--s", "0.5", "--out", table, "--image", image, "--n-eval", "64")
    sidecar = json.loads((tmp_path / "table.csv.json").read_text())
    assert sidecar["r"] == 4
    assert sidecar["real_flag"] is True
    assert image.read_bytes().startswith(b"P5\n")

    proc = run("metrics", "--metric", "recon", "--table", table,
               "--reference-name", "flag", "--n", "64", "--p", "2")
    rep = json.loads(proc.stdout)
    assert rep["grid"] == 64
    assert rep["mask"] is False
    assert 0.0 < rep["value"] < 1.5
    assert rep["params"]["alpha"] is None

    proc = run("metrics", "--metric", "cutoff", "--reference-name", "flag",
               "--n", "128", "--r", "10")
    cut = json.loads(proc.stdout)
    assert cut["metric"] == "cutoff_error"
    assert cut["value"] > 0.0

    # Averaging a single unrotated table reproduces the plain evaluation,
    # so both error reports agree.
    avg = tmp_path / "avg.pgm"
    proc = run("rotate-average", "--tables", table, "--thetas-deg", "0",
               "--n", "64", "--out", avg, "--reference-name", "flag", "--p", "2")
    ra = json.loads(proc.stdout)
    assert ra["value"] == pytest.approx(rep["value"], rel=1e-12)
    assert avg.read_bytes().startswith(b"P5\n")


def test_radon(tmp_path):
    out = tmp_path / "sino.csv"
    run("radon", "--phantom", "constant", "--value", "1", "--n", "32",
        "--r", "1", "--M", "65", "--out", out)
    lines = out.read_text().splitlines()
    assert lines[0] == "angle_rad,offset,value"
    assert len(lines) == 1 + 4 * 65
    # The central vertical ray through the unit square of ones has length 1.
    rows = [l.split(",") for l in lines[1:]]
    center = [r for r in rows if float(r[0]) == 0.0 and abs(float(r[1])) < 1e-15]
    assert len(center) == 1
    assert float(center[0][2]) == pytest.approx(1.0, abs=1e-12)


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "name": "flag",
        "n": 32,
        "out": str(tmp_path / "from_config.pgm"),
    }))
    run("phantom", "--config", cfg)
    meta = json.loads((tmp_path / "from_config.pgm.json").read_text())
    assert meta["n"] == 32

    run("phantom", "--config", cfg, "--n", "16",
        "--out", tmp_path / "override.pgm")
    meta = json.loads((tmp_path / "override.pgm.json").read_text())
    assert meta["n"] == 16


def test_forward_aliasing_guard(tmp_path):
    out = tmp_path / "alias.csv"
    proc = subprocess.run([CLI, "forward", "--model", "A1", "--phantom", "flag",
                           "--n", "32", "--r", "4", "--n-d", "8",
                           "--out", str(out)], capture_output=True, text=True)
    assert proc.returncode == 1
    assert "allow-aliasing" in proc.stderr
    run("forward", "--model", "A1", "--phantom", "flag", "--n", "32",
        "--r", "4", "--n-d", "8", "--allow-aliasing", "--out", out)
    assert out.exists()
