import csv
import json
import subprocess
import sys

import pytest

from qhtoeplitz.cli import SCHEMA, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_mellin(capsys):
    code, env = run_json(capsys, "mellin", "--symbol", "3*r^-1 - r^3", "--z", "4")
    assert code == 0 and env["schema"] == SCHEMA
    row = env["outputs"][0]
    assert row["closed_form"] == pytest.approx(6 / 7) and row["quadrature"] == pytest.approx(6 / 7)


@pytest.mark.parametrize("symbol, z, value", [("1", "2", 0.5), ("r^2*log", "3", -0.04)])
def test_mellin_values(capsys, symbol, z, value):
    code, env = run_json(capsys, "mellin", "--symbol", symbol, "--z", z)
    assert code == 0 and env["outputs"][0]["closed_form"] == pytest.approx(value)


def test_parse_error_position(capsys):
    code, _, err = run(capsys, "mellin", "--symbol", "3*r^^2", "--z", "3")
    assert code == 2 and "position 4" in err and "^" in err


def test_rank_harmonic(capsys):
    code, env = run_json(capsys, "rank", "--space", "h", "--k1", "1", "--sym1", "r^-1",
                         "--k2", "-3", "--sym2", "r^3", "--kind", "commutator")
    o = env["outputs"]
    assert code == 0 and o["rank"] == 2
    assert sorted(t["coeff"] for t in o["canonical"]) == pytest.approx([-0.5, 0.5])


def test_rank_bergman(capsys):
    code, env = run_json(capsys, "rank", "--space", "a", "--k1", "1", "--sym1", "r^-1",
                         "--k2", "-3", "--sym2", "r^3")
    assert code == 0 and [(t["index"], t["source"], t["coeff"]) for t in env["outputs"]["canonical"]] == [(0, 2, -1.0)]


def test_rank_gensemi(capsys):
    code, env = run_json(capsys, "rank", "--space", "h", "--k1", "1", "--sym1", "r^-1", "--k2", "-3",
                         "--sym2", "r^3", "--kind", "gensemi", "--psi", "r^2")
    assert code == 0 and sorted(t["coeff"] for t in env["outputs"]["canonical"]) == pytest.approx([1 / 6, 1 / 2])


def test_rank_not_finite_exit_code(capsys):
    code, env = run_json(capsys, "rank", "--k1", "1", "--sym1", "r", "--k2", "-3", "--sym2", "r^3")
    assert code == 1 and not env["outputs"]["finite"] and not env["passed"]


def test_gensemi_needs_psi(capsys):
    code, _, err = run(capsys, "rank", "--k1", "1", "--sym1", "r", "--k2", "1", "--sym2", "r", "--kind", "gensemi")
    assert code == 2 and "--psi" in err


def test_verify_examples(capsys):
    code, env = run_json(capsys, "verify", "--theorem", "examples")
    assert code == 0 and env["outputs"]["examples"]["examples"]["summary"] == "18/18"


def test_verify_grid_csv(capsys, tmp_path):
    path = tmp_path / "cells.csv"
    code, env = run_json(capsys, "verify", "--theorem", "h-commute", "--grid", "k1=-2..2,k2=-2..2,m=0..1",
                         "--csv", str(path))
    rows = list(csv.DictReader(path.open()))
    assert code == 0 and len(rows) == env["outputs"]["h-commute"]["checked"] > 0
    assert {"k1", "k2", "m", "predicted_rank", "computed_rank", "passed"} <= set(rows[0])


def test_verify_cross_space_table(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "cross-space", "--grid", "k1=-2..2,k2=-2..2,m=0")
    assert code == 0 and "rank gap" in out and out.strip().endswith("cross-space: pass")


def test_bad_grid(capsys):
    code, _, err = run(capsys, "verify", "--grid", "q=1")
    assert code == 2 and "grid" in err


def test_deterministic_outputs(capsys):
    args = ("verify", "--theorem", "negative", "--draws", "10", "--seed", "4")
    _, a = run_json(capsys, *args)
    _, b = run_json(capsys, *args)
    a.pop("timestamp"), b.pop("timestamp")
    assert a == b


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "qhtoeplitz", "mellin", "--symbol", "r^3", "--z", "5"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "0.125" in out.stdout
