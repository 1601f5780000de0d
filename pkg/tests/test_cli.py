import json
import subprocess
import sys
from fractions import Fraction

import pytest

from bifaber.algebra import MPoly
from bifaber.cli import UsageError, main, parse_grid


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_kp_text(capsys):
    assert run(capsys, "kp", "--n", "1", "--p", "-2")[:2] == (0, "-2*a2\n")
    assert run(capsys, "kp", "--n", "0", "--p", "5")[:2] == (0, "1\n")


def test_kp_json(capsys):
    code, out, _ = run(capsys, "kp", "--n", "3", "--p", "-4", "--format", "json")
    a2, a3, a4 = MPoly.var(2), MPoly.var(3), MPoly.var(4)
    assert code == 0
    assert MPoly.from_json(out) == -20 * a2**3 + 20 * a2 * a3 - 4 * a4


def test_bell(capsys):
    assert run(capsys, "bell", "--n", "3", "--m", "2")[1] == "2*a2\n"


def test_invert_generic_and_numeric(capsys, tmp_path):
    code, out, _ = run(capsys, "invert", "--order", "4")
    assert out.splitlines() == ["b1 = 1", "b2 = -a2", "b3 = 2*a2^2 - a3",
                                "b4 = -5*a2^3 + 5*a2*a3 - a4"]
    src = tmp_path / "f.json"
    src.write_text(json.dumps({"order": 4, "coeffs": [1.0, 1.0, 0.0, 0.0]}))
    code, out, _ = run(capsys, "invert", "--input", str(src))
    assert out.splitlines()[1:] == ["b2 = -1.0", "b3 = 2.0", "b4 = -5.0"]
    ident = tmp_path / "id.json"
    ident.write_text(json.dumps({"order": 3, "coeffs": ["1", "0", "0"]}))
    code, out, _ = run(capsys, "invert", "--input", str(ident), "--format", "json")
    data = json.loads(out)
    assert [MPoly.from_dict(c) for c in data["coeffs"]] == [1, 0, 0]


def test_operator(capsys):
    code, out, _ = run(capsys, "operator", "--lambda", "1", "--mu", "1", "--delta", "0",
                       "--order", "3")
    assert out.splitlines() == ["z^0: 1", "z^1: 2*a2", "z^2: 3*a3"]


def test_bounds_examples(capsys):
    code, out, _ = run(capsys, "bounds", "--target", "a2", "--lambda", "1", "--mu", "1",
                       "--delta", "0", "--alpha", "0")
    assert code == 0 and "bound=sqrt:2/3 branch=sqrt" in out
    code, out, _ = run(capsys, "bounds", "--target", "an", "--n", "4", "--lambda", "1",
                       "--mu", "1", "--delta", "0", "--alpha", "0")
    assert "bound=1/2" in out


def test_bounds_alpha_grid_is_monotone(capsys):
    code, out, _ = run(capsys, "bounds", "--target", "fekete", "--alpha", "0:0.9:0.3",
                       "--format", "csv")
    lines = out.strip().splitlines()
    assert len(lines) == 5
    values = [Fraction(line.split(",")[-1]) for line in lines[1:]]
    assert values == sorted(values, reverse=True) and len(set(values)) == 4


def test_bounds_specialize(capsys):
    code, out, _ = run(capsys, "bounds", "--target", "a3", "--lambda", "2", "--mu", "3",
                       "--delta", "5", "--specialize", "caglar", "--format", "json")
    row = json.loads(out)[0]
    assert row["delta"] == "0/1" and row["bound_value"] == "2/7"


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "bounds", "--target", "an", "--n", "3")[0] == 2
    assert run(capsys, "bounds", "--lambda", "x/y")[0] == 2
    assert run(capsys, "bounds", "--lambda", "1/2")[0] == 2
    assert run(capsys, "kp", "--n", "2")[0] == 2
    assert run(capsys, "invert", "--input", "/nonexistent.json")[0] == 2
    assert run(capsys, "kp", "--n", "1", "--p", "1", "--order", "40")[0] == 2


def test_unchecked_allows_small_n(capsys):
    code, out, _ = run(capsys, "bounds", "--target", "an", "--n", "3", "--unchecked")
    assert code == 0 and "bound=2/3" in out


def test_audit_exit_zero(capsys):
    code, out, _ = run(capsys, "audit", "--order", "6")
    assert code == 0
    items = {r["item"] for r in json.loads(out)}
    assert "F2" in items and "inverse-operator:w" in items


def test_sample_summary_and_check(capsys, tmp_path):
    dest = tmp_path / "s.csv"
    code, out, _ = run(capsys, "sample", "--lambda", "1", "--mu", "1", "--delta", "0",
                       "--alpha", "0", "--trials", "10000", "--seed", "42", "--out", str(dest),
                       "--assert")
    assert code == 0 and "violations=0" in out
    assert dest.read_text().startswith("trial,c1_re,c1_im")


def test_sample_boundary_rows(capsys):
    code, out, _ = run(capsys, "sample", "--trials", "10", "--boundary")
    rows = [line.split(",") for line in out.splitlines()[1:]]
    boundary = [r for r in rows if r[0].startswith("b")]
    assert len(boundary) == 8
    margins = [abs(float(r[-2])) for r in boundary[4:]]
    assert max(margins) <= 1e-12


def test_sample_theorem1(capsys):
    code, out, err = run(capsys, "sample", "--theorem", "1", "--n", "5", "--trials", "50",
                         "--boundary", "--delta", "1/2")
    lines = out.splitlines()
    assert lines[0].startswith("trial,c_re") and len(lines) == 1 + 50 + 16
    assert "violations=0" in err


def test_sample_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for dest in (a, b):
        main(["sample", "--trials", "1", "--seed", "17", "--out", str(dest)])
    assert a.read_bytes() == b.read_bytes()
    c = tmp_path / "c.csv"
    main(["sample", "--trials", "9000", "--seed", "3", "--workers", "3", "--out", str(c)])
    main(["sample", "--trials", "9000", "--seed", "3", "--out", str(a)])
    assert a.read_bytes() == c.read_bytes()


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"lambda": "1", "mu": 1, "delta": "0", "target": "a2"}))
    code, out, _ = run(capsys, "bounds", "--config", str(cfg))
    assert "bound=sqrt:2/3" in out
    code, out, _ = run(capsys, "bounds", "--config", str(cfg), "--alpha", "1/2")
    assert "bound=1/2 branch=rational" in out


def test_parse_grid():
    assert parse_grid("0:0.9:0.3") == [0, parse_grid("0.3")[0], parse_grid("0.6")[0],
                                       parse_grid("0.9")[0]]
    assert len(parse_grid("1,3/2,2")) == 3
    with pytest.raises(UsageError):
        parse_grid("0:1:0")


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "bifaber", "kp", "--n", "2", "--p", "-3"],
                         capture_output=True, text=True, check=True).stdout
    assert out == "6*a2^2 - 3*a3\n"
