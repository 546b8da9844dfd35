import json
import os
import subprocess
import sys

import pytest

from nablaab.cli import main
from nablaab.nabla_core import Signal, read_csv, write_csv

import numpy as np


@pytest.fixture
def signal_csv(tmp_path):
    path = tmp_path / "f.csv"
    write_csv(Signal(0, np.array([1.0, 1.0, 1.0])), path)
    return path


def run(*argv, env=None):
    full = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-m", "nablaab.cli", *argv], capture_output=True, text=True, env=full)


def test_iterated_apply(signal_csv, tmp_path, capsys):
    out = tmp_path / "g.csv"
    code = main(["apply", "--op", "iterated", "--alpha", "0.5", "--mu", "1", "--in", str(signal_csv), "--out", str(out)])
    assert code == 0
    g = read_csv(out)
    assert g.values[2] == pytest.approx(1.25, abs=1e-12)
    meta = json.loads((tmp_path / "g.csv.json").read_text())
    assert meta["op"] == "iterated" and meta["mu"] == 1.0


def test_order_zero_is_byte_identical(signal_csv, tmp_path):
    out = tmp_path / "g.csv"
    assert main(["apply", "--op", "iterated", "--alpha", "0.3", "--mu", "0", "--in", str(signal_csv), "--out", str(out)]) == 0
    assert out.read_text() == signal_csv.read_text()


@pytest.mark.parametrize("op", ["frac-sum", "ab-sum", "abc", "abr", "iterated"])
@pytest.mark.parametrize("side", ["left", "right"])
def test_apply_is_deterministic(signal_csv, op, side):
    argv = ["apply", "--op", op, "--side", side, "--alpha", "0.3", "--mu", "0.7", "--in", str(signal_csv)]
    first, second = run(*argv), run(*argv)
    assert first.returncode == 0, first.stderr
    assert first.stdout == second.stdout and first.stdout.startswith("t,value")
    assert json.loads(first.stderr)["op"] == op


def test_stdin_input(signal_csv):
    r = subprocess.run([sys.executable, "-m", "nablaab.cli", "apply", "--op", "ab-sum", "--alpha", "0.3", "--in", "-"],
                       input=signal_csv.read_text(), capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.splitlines()[1] == "0,0.7"


def test_ml_single_value(capsys):
    assert main(["ml", "--alpha", "1", "--lam", "0.5", "--v", "3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert abs(data["value"] - 8.0) <= data["tail_bound"] + 1e-13
    assert data["terms"] >= 1


def test_ml_table(capsys):
    assert main(["ml", "--alpha", "0.5", "--lam", "-0.3", "--v-max", "4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "t,value" and len(lines) == 6


def test_laplace_check(capsys):
    assert main(["laplace-check", "--signal", "monomial", "--mu", "2", "--z", "0.8"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["lhs"] == pytest.approx(1.5625, abs=1e-10)
    assert all(r["pass"] for r in rows)


def test_solve_flags(capsys):
    assert main(["solve", "--alpha", "0.3", "--mu", "1", "-A", "1", "--b", "1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["coefficients"][0] == pytest.approx(0.7 / 1.7)
    assert data["residual"]["pass"] and set(data["residual"]) == {"identity", "params", "max_gap", "tol", "pass"}


def test_solve_config_and_csv(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"alpha": 0.25, "mu": 1.5, "A": 2.0, "b_coeffs": [1.0, 0.5], "n_terms": 30, "t_max": 5}))
    coef = tmp_path / "c.csv"
    assert main(["solve", "--config", str(cfg), "--format", "csv", "--coef-out", str(coef)]) == 0
    cap = capsys.readouterr()
    assert len(cap.out.splitlines()) == 7
    assert json.loads(cap.err)["pass"]
    assert coef.read_text().splitlines()[0] == "s,c"


def test_verify_suite(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--suite", "semigroup", "--alpha", "0.25", "--out", str(out)]) == 0
    reports = json.loads(out.read_text())
    assert reports and all(r["pass"] for r in reports)


@pytest.mark.parametrize("argv, kind", [
    (["solve", "--alpha", "0.3", "--mu", "-1", "-A", "1", "--b", "1"], "DomainError"),
    (["solve", "--alpha", "0.3", "--mu", "1"], "InputError"),
    (["apply", "--op", "frac-sum", "--in", "/nonexistent/x.csv"], None),
    (["ml", "--alpha", "0.5", "--lam", "1.2", "--v", "2"], "DomainError"),
])
def test_errors_exit_two(argv, kind, capsys):
    assert main(argv) == 2
    err = json.loads(capsys.readouterr().err)
    assert set(err) == {"error", "message"}
    if kind:
        assert err["error"] == kind


def test_bad_csv_header(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("x,y\n0,1\n")
    assert main(["apply", "--op", "ab-sum", "--alpha", "0.3", "--in", str(bad)]) == 2


def test_convergence_failure_exits_one(capsys):
    assert main(["ml", "--alpha", "0.5", "--lam", "0.9", "--v", "40", "--k-max", "3"]) == 1
    assert json.loads(capsys.readouterr().err)["error"] == "convergence"


def test_tol_from_environment():
    loose = run("ml", "--alpha", "0.5", "--lam", "-0.4", "--v", "10", env={"NABLAAB_TOL": "1e-3"})
    tight = run("ml", "--alpha", "0.5", "--lam", "-0.4", "--v", "10")
    assert json.loads(loose.stdout)["terms"] < json.loads(tight.stdout)["terms"]


def test_console_script_help():
    r = run("--help")
    assert r.returncode == 0 and "solve" in r.stdout
