import json

import numpy as np
import pytest

from hpfield.cli import CONFIG_KEYS, run
from hpfield.gridio import read_field_csv
from hpfield.report import SCHEMA_VERSION
from hpfield.theories import rod_displacement, rod_spec


def _report(out, name):
    data = json.loads((out / f"{name}.json").read_text())
    assert data["schema_version"] == SCHEMA_VERSION
    assert "timestamp" in data
    return data


def test_verify_algebra(tmp_path, capsys):
    assert run(["verify-algebra", "--samples", "50", "--seed", "3", "--out", str(tmp_path)]) == 0
    data = _report(tmp_path, "verify-algebra")
    assert {c["status"] for c in data["checks"]} == {"pass"}
    assert set(data["checks"][0]) >= {"check", "r", "s", "samples", "max_residual", "status"}
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == len(data["checks"])


def test_verify_algebra_is_reproducible(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run(["verify-algebra", "--samples", "30", "--seed", "9", "--out", str(a)])
    run(["verify-algebra", "--samples", "30", "--seed", "9", "--out", str(b)])
    strip = lambda d: [c["max_residual"] for c in d["checks"]]
    assert strip(_report(a, "verify-algebra")) == strip(_report(b, "verify-algebra"))


@pytest.mark.parametrize("n", [0, 1])
def test_verify_dirac_single_degree(tmp_path, n):
    assert run(["verify-dirac", "--n", str(n), "--samples", "20", "--out", str(tmp_path)]) == 0
    checks = _report(tmp_path, "verify-dirac")["checks"]
    iso = [c for c in checks if c["check"] == f"n{n}_graph_isotropy"]
    assert {(c["r"], c["s"]) for c in iso} == {(r, s) for r in range(1, n + 2) for s in range(1, n + 2) if r + s <= n + 2}


def test_solve_rod_writes_displacement(tmp_path):
    cfg = tmp_path / "rod.cfg"
    cfg.write_text("example=elastostatics\ndim=1\ntau=3\nyoung=2\n")
    out = tmp_path / "out"
    assert run(["solve", "elastostatics", "--config", str(cfg), "--grid", "9", "--out", str(out)]) == 0
    data = _report(out, "solve-elastostatics")
    for key in ("example", "grid", "iterations", "final_residual", "energy_max", "dirac_check_max", "observed_orders"):
        assert key in data
    assert data["max_error"] < 1e-8
    axes, u, name = read_field_csv(out / "u.csv")
    np.testing.assert_allclose(u, rod_displacement(rod_spec(3.0, 2.0), axes[0]), atol=1e-8)


def test_solve_patch(tmp_path):
    cfg = tmp_path / "p.cfg"
    cfg.write_text("dim=2\nlambda=1\nmu=1\n")
    assert run(["solve", "elastostatics", "--config", str(cfg), "--grid", "5x5", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "u0.csv").exists() and (tmp_path / "u1.csv").exists()


@pytest.mark.parametrize("example,grid", [("wave", "32"), ("maxwell", "16x5"), ("nonholonomic", None)])
def test_solve_other_examples(tmp_path, example, grid):
    args = ["solve", example, "--out", str(tmp_path)] + (["--grid", grid] if grid else [])
    assert run(args) == 0
    data = _report(tmp_path, f"solve-{example}")
    assert data["example"] == example


@pytest.mark.parametrize("example", ["wave", "maxwell", "elastostatics", "nonholonomic"])
def test_energy_report(tmp_path, example):
    args = ["energy-report", example, "--out", str(tmp_path)]
    if example == "wave":
        args += ["--grid", "32x32"]
    assert run(args) == 0
    assert _report(tmp_path, f"energy-report-{example}")["energy"]["energy_max"] <= 1e-14


@pytest.mark.parametrize("example", ["wave", "maxwell", "elastostatics"])
def test_residual(tmp_path, example, capsys):
    assert run(["residual", example, "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    if example == "maxwell":
        assert "-F^(mu nu)" in out


def test_wave_potential_from_config(tmp_path):
    cfg = tmp_path / "kg.cfg"
    cfg.write_text("example=wave\nm=1\npotential=-0.5*m^2*phi^2\n")
    assert run(["residual", "--config", str(cfg), "--grid", "32x32", "--out", str(tmp_path)]) == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "heat"],
        ["frobnicate"],
        ["solve", "wave", "--grid", "2"],
        ["verify-dirac", "--n", "-1"],
        ["solve", "elastostatics", "--grid", "7x7"],
    ],
)
def test_usage_errors_exit_2(tmp_path, argv):
    assert run(argv + ["--out", str(tmp_path)]) == 2


def test_unknown_config_key_exit_2(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("gird=64x64\n")
    assert run(["solve", "wave", "--config", str(cfg), "--out", str(tmp_path)]) == 2


def test_config_example_conflict(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("example=maxwell\n")
    assert run(["solve", "wave", "--config", str(cfg), "--out", str(tmp_path)]) == 2


def test_failed_solve_still_writes_report(tmp_path):
    # round-off floor sits far above 1e-300, so Newton must give up
    assert run(["solve", "elastostatics", "--grid", "7", "--tol", "1e-300", "--out", str(tmp_path)]) == 1
    data = _report(tmp_path, "solve-elastostatics")
    assert "error" in data and data["final_residual"] < 1e-12


def test_config_keys_cover_documented_set():
    assert {"example", "potential", "m", "grid", "k", "lambda", "mu", "tau", "seed"} <= CONFIG_KEYS


def test_maxwell_grid_too_small(tmp_path):
    assert run(["solve", "maxwell", "--grid", "16x4", "--out", str(tmp_path)]) == 2
