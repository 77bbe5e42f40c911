import csv
import io
import json
import math
import subprocess
import sys

import pytest

from mehler_heine.cli import main
from mehler_heine.families import Charlier, PolyKind
from mehler_heine.zeros import poly_zeros


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def value(doc, key="value"):
    return complex(doc[key]["re"], doc[key]["im"])


def test_eval_monic(capsys):
    code, out, _ = run(capsys, "eval", "--kind", "monic", "--n", "1", "--x", "-1")
    assert code == 0
    doc = json.loads(out)
    assert value(doc) == pytest.approx(-2.23)
    assert doc["family"] == {"name": "charlier", "a": 1.23}


def test_eval_degree_zero_and_complex_x(capsys):
    for kind in ("standard", "monic"):
        code, out, _ = run(capsys, "eval", "--kind", kind, "--n", "0", "--x", "3.5,-2")
        assert code == 0 and value(json.loads(out)) == 1
    code, out, _ = run(capsys, "eval", "--kind", "associated", "--n", "0", "--x", "0.5")
    assert value(json.loads(out)) == 0


def test_eval_scaled(capsys):
    code, out, _ = run(capsys, "eval", "--kind", "associated", "--n", "28", "--x", "0.5", "--scaled")
    doc = json.loads(out)
    assert code == 0
    assert value(doc, "scaled_value").real == pytest.approx(0.33991069425699425, rel=1e-12)
    assert doc["normalizer"] == "(-1)^n / Gamma(n - x)"


def test_eval_meixner(capsys):
    code, out, _ = run(capsys, "eval", "--family", "meixner", "--kind", "standard", "--n", "1", "--x", "2")
    # M_1(x) = 1 + x (1 - 1/c) / beta
    assert code == 0
    assert value(json.loads(out)).real == pytest.approx(1 + 2 * (1 - 1 / 0.36) / 1.23)


def test_grid_csv(capsys):
    code, out, _ = run(capsys, "grid", "--kind", "monic", "--n", "3", "--x-min", "0", "--x-max", "1", "--steps", "3")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "value"]
    assert [float(r[0]) for r in rows[1:]] == [0.0, 0.5, 1.0]
    assert "\r" not in out


def test_markov(capsys):
    code, out, _ = run(capsys, "markov", "--z=-1", "--n-list", "1,2", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    first = complex(doc["rows"][0]["markov_ratio"]["re"], doc["rows"][0]["markov_ratio"]["im"])
    assert first == pytest.approx(math.exp(1.23) / -2.23)
    s = value(doc, "stieltjes")
    assert s.real == pytest.approx(-(math.exp(1.23) - 1) / 1.23, rel=1e-14)
    assert doc["rows"][1]["abs_err"] < doc["rows"][0]["abs_err"]


def test_markov_on_cut_is_invalid(capsys):
    code, out, err = run(capsys, "markov", "--z", "1", "--n-list", "1")
    assert code == 1 and out == "" and "cut" in err


def test_zeros(capsys):
    code, out, _ = run(capsys, "zeros", "--kind", "monic", "--n", "1", "--format", "json")
    assert code == 0
    assert json.loads(out)["poly_zeros"] == pytest.approx([1.23])
    code, out, _ = run(capsys, "zeros", "--kind", "associated", "--n", "2", "--format", "json")
    doc = json.loads(out)
    assert doc["poly_zeros"] == pytest.approx([2.23])
    assert len(doc["differences"]) == 1


def test_zeros_match_library(capsys):
    code, out, _ = run(capsys, "zeros", "--kind", "associated", "--n", "12", "--format", "json")
    want = poly_zeros(Charlier(1.23), PolyKind.ASSOCIATED, 12).zeros
    assert json.loads(out)["poly_zeros"] == list(want)


@pytest.mark.parametrize("name, rows", [("fig1", 551), ("fig2", 551)])
def test_figure_csv(capsys, name, rows):
    code, out, _ = run(capsys, "figure", name)
    assert code == 0
    table = list(csv.reader(io.StringIO(out)))
    assert table[0] == ["x", "scaled_poly", "limit", "abs_err"]
    assert len(table) - 1 == rows
    assert float(table[1][0]) == -1.0 and float(table[-1][0]) == 10.0
    for r in table[1:]:
        assert float(r[3]) == pytest.approx(abs(float(r[1]) - float(r[2])), rel=1e-12, abs=1e-300)
    # byte-identical on a second run
    assert run(capsys, "figure", name)[1] == out


def test_check(capsys):
    code, out, _ = run(capsys, "check", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "pass"
    assert doc["count"] >= 12 and len(doc["checks"]) == doc["count"]


def test_check_detects_fault(capsys):
    code, out, err = run(capsys, "check", "--inject-fault")
    assert code == 2
    assert json.loads(out)["status"] == "fail"
    assert "FAIL cross_representation" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["grid", "--steps", "1"],
        ["eval", "--family", "meixner", "--c", "1.5"],
        ["eval", "--a", "-1"],
        ["eval", "--x", "1,2,3"],
        ["eval", "--n", "-2"],
        ["zeros", "--window", "3,1"],
        ["frobnicate"],
    ],
)
def test_invalid_input_exit_1(capsys, argv):
    code = None
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    out, _ = capsys.readouterr()
    assert code == 1 and out == ""


def test_numerical_failure_exit_2(capsys):
    code, out, err = run(capsys, "eval", "--kind", "monic", "--n", "200", "--x", "0.5")
    assert code == 2 and out == ""
    assert "scaled" in err
    # the scaled path handles the same input
    assert run(capsys, "eval", "--kind", "monic", "--n", "200", "--x", "0.5", "--scaled")[0] == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mehler_heine", "eval", "--kind", "monic", "--n", "1", "--x", "-1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert value(json.loads(proc.stdout)) == pytest.approx(-2.23)
