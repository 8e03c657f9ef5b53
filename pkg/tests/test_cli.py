import json
import subprocess
import sys

import pytest

from harmonic_span.checks import run_suites
from harmonic_span.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decompose_half(capsys):
    code, out, _ = run(["decompose", "1/2"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1
    terms = {t["atom"]: t["coeff"] for t in data["value"]["terms"]}
    assert terms == {"Unit": {"conductor": 1, "coeffs": [[2, 1]]},
                     "Log2": {"conductor": 1, "coeffs": [[-2, 1]]}}
    assert float(data["residual"]) < 1e-90


@pytest.mark.parametrize("argv, code", [
    (["decompose", "1/6"], 2),
    (["decompose", "5/5"], 1),
    (["decompose", "1/ 2"], 1),
    (["decompose", " 1/2"], 1),
    (["decompose", "1/0"], 1),
    (["decompose", "-3/1"], 1),
    (["decompose", "1/15"], 2),
    (["dim", "--primes", "9"], 1),
    (["dim", "--primes", "5,x"], 1),
    (["dim", "--indices", "1/6,1/5"], 2),
    (["dim", "--indices", "1/7", "--conductor-cap", "7"], 2),
    (["decompose", "1/3", "--digits", "5"], 1),
    (["nonsense"], 1),
])
def test_exit_codes(argv, code, capsys):
    got, _, err = run(argv, capsys)
    assert got == code
    assert err


def test_decompose_signed(capsys):
    code, out, _ = run(["decompose", "-1/3"], capsys)
    assert code == 0 and json.loads(out)["index"] == "-1/3"
    code, out, _ = run(["dim", "--indices", "-1/3,2/3", "--digits", "30"], capsys)
    assert code == 0 and json.loads(out)["dim"] == 2


def test_dim_primes(capsys):
    for arg, dim in [("5", 4), ("5,7", 7)]:
        code, out, _ = run(["dim", "--primes", arg], capsys)
        data = json.loads(out)
        assert code == 0
        assert (data["dim"], data["formula"], data["match"]) == (dim, dim, True)
    code, out, _ = run(["dim", "--primes", "2"], capsys)
    data = json.loads(out)
    assert (data["dim"], data["formula"], data["match"]) == (2, "5/2", "n/a")


def test_dim_indices_reports_bound_and_duplicates(capsys):
    code, out, _ = run(["dim", "--indices", "1/4,2/4,3/4,4/4,1/2"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["dim"] == 3 and data["upper_bound"] == 3
    assert data["dropped_duplicates"] == ["1/2"]


def test_deterministic_bytes(capsys):
    outs = {run(["dim", "--primes", "5,7"], capsys)[1] for _ in range(3)}
    assert len(outs) == 1


def test_digits_env_and_flag(monkeypatch, capsys):
    monkeypatch.setenv("HARMONIC_SPAN_DIGITS", "30")
    assert json.loads(run(["decompose", "1/3"], capsys)[1])["digits"] == 30
    assert json.loads(run(["decompose", "1/3", "--digits", "40"], capsys)[1])["digits"] == 40
    monkeypatch.setenv("HARMONIC_SPAN_DIGITS", "many")
    assert run(["decompose", "1/3"], capsys)[0] == 1


def test_out_and_text(tmp_path, capsys):
    path = tmp_path / "r.txt"
    code, out, _ = run(["decompose", "1/3", "--format", "text", "--out", str(path)], capsys)
    assert code == 0 and out == ""
    text = path.read_text()
    assert text.startswith("H_{1/3} =") and "log sin(1pi/3)" in text


@pytest.mark.parametrize("selector", ["3.3", "3.4", "3.7", "3.9"])
def test_check_selectors_pass(selector, capsys):
    code, out, _ = run(["check", selector], capsys)
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert data["cases"]


def test_check_independence(capsys):
    code, out, _ = run(["check", "independence", "--max-coeff", "50"], capsys)
    data = json.loads(out)
    assert code == 0
    units = [c for c in data["cases"] if c["case"].startswith("units")]
    assert [c["case"] for c in units] == ["units q=5", "units q=7", "units q=8", "units q=11"]
    assert all("no-relation-found" in c["detail"] for c in units)


def test_unknown_selector(capsys):
    assert run(["check", "9.9"], capsys)[0] == 1
    with pytest.raises(ValueError):
        run_suites("9.9")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "harmonic_span", "decompose", "1/4", "--digits", "20"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["index"] == "1/4"
