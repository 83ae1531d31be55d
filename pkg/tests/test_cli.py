import csv
import io
import json
import subprocess
import sys

import pytest

from hardy_rellich import cli
from hardy_rellich.errors import NumericalFailure


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(argv, capsys):
    code, out, _ = run(argv + ["--format", "json"], capsys)
    return code, json.loads(out), out


def test_constants_example(capsys):
    code, rep, _ = run_json(["constants", "--dim", "3", "--kmax", "3"], capsys)
    assert code == 0 and rep["status"] == "pass"
    exact = {(r["quantity"], r["k"]): r["exact"] for r in rep["results"]["rows"]}
    assert exact[("C", "")] == "25/36"
    assert exact[("c_k", 1)] == "2"
    assert exact[("g", 1)] == "1/2"
    assert exact[("eps_star", "")] == "14/9"
    assert set(rep) == {"schema_version", "command", "inputs", "results", "margins", "status"}


def test_constants_table(capsys):
    code, out, _ = run(["constants", "--dim", "4"], capsys)
    assert code == 0
    assert "status: pass" in out and "eps_star" in out


def test_sweep_example(capsys):
    code, rep, _ = run_json(["sweep-eps", "--dim", "4", "--eps", "0.04,0.02,0.01"], capsys)
    assert code == 0
    qs = [float(r["quotient"]) for r in rep["results"]["rows"]]
    assert len(qs) == 3 and qs[0] > qs[1] > qs[2] > 3.0
    s = rep["results"]["summary"]
    assert s["strictly_decreasing"] is True
    assert abs(float(s["extrapolate"]) - 3.0) < 0.05


def test_scan_example(capsys):
    code, rep, _ = run_json(["scan-modes", "--dim", "3", "--kmax", "5"], capsys)
    assert code == 0
    assert rep["results"]["summary"]["argmin_mode"] == 1
    assert rep["results"]["summary"]["symbol_argmin_mode"] == 1


def test_quotient_and_oracle(capsys):
    code, rep, _ = run_json(["quotient", "--dim", "5", "--eps", "0.1"], capsys)
    assert code == 0
    assert float(rep["results"]["rows"][0]["quotient"]) == pytest.approx(34.834742797471046, rel=1e-10)
    assert rep["results"]["rows"][0]["asymptotic_exact"] == "149/25"
    code, rep, _ = run_json(["oracle", "--dim", "7", "--kmax", "20"], capsys)
    assert code == 0 and rep["results"]["summary"]["C_exact"] == "49/4"


def test_verify_and_crosscheck(capsys):
    code, rep, _ = run_json(["verify", "--dims", "3,5", "--trials", "5", "--seed", "3"], capsys)
    assert code == 0 and [r["n"] for r in rep["results"]["rows"]] == [3, 5]
    assert rep["inputs"]["generator"] == "bump-v1"
    code, rep, _ = run_json(["crosscheck3d", "--degree", "1", "--trials", "2"], capsys)
    assert code == 0 and float(rep["results"]["summary"]["worst_rel"]) <= 1e-6


@pytest.mark.parametrize("argv", [
    ["constants", "--dim", "5", "--kmax", "4"],
    ["sweep-eps", "--dim", "3", "--eps", "0.04,0.02"],
    ["verify", "--dims", "4", "--trials", "3", "--seed", "9"],
])
def test_deterministic_and_round_trip(argv, capsys):
    _, _, a = run_json(argv, capsys)
    _, _, b = run_json(argv, capsys)
    assert a == b
    assert json.dumps(json.loads(a), sort_keys=True, indent=2) + "\n" == a


def test_float_format(capsys):
    _, rep, _ = run_json(["quotient", "--dim", "3", "--eps", "0.02"], capsys)
    q = rep["results"]["rows"][0]["quotient"]
    mant = q.split("e")[0]
    assert len(mant.replace("-", "").replace(".", "")) == 12


def test_csv(capsys):
    code, out, _ = run(["oracle", "--dim", "3", "--kmax", "10", "--format", "csv"], capsys)
    assert code == 0
    assert "\r" not in out and out.endswith("\n")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["k", "symbol_min", "xi_at_min", "symbol_at_0_exact"]
    assert len(rows) == 12 and rows[2][3] == "25/36"


@pytest.mark.parametrize("argv", [
    [], ["nope"], ["constants"], ["constants", "--dim", "2"], ["constants", "--dim", "3", "--bogus"],
    ["sweep-eps", "--dim", "3", "--eps", "a,b"], ["crosscheck3d", "--degree", "2"],
    ["quotient", "--dim", "3", "--eps", "1.5"], ["sweep-eps", "--dim", "3", "--eps", "0.01,0.02"],
])
def test_usage_errors(argv, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 2 and out == ""


def test_verification_failure_exit(capsys):
    code, rep, _ = run_json(["crosscheck3d", "--degree", "0", "--trials", "1", "--tol", "1e-30"], capsys)
    assert code == 1 and rep["status"] == "fail"


def test_numerical_failure_exit(capsys, monkeypatch, caplog):
    def boom(*a, **k):
        raise NumericalFailure("no convergence", last_values=(1.0, 2.0))

    monkeypatch.setattr(cli, "quotient_ueps", boom)
    code, out, _ = run(["quotient", "--dim", "3", "--eps", "0.1"], capsys)
    assert code == 3 and out == ""
    assert "no convergence" in caplog.text


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "hardy_rellich", "constants", "--dim", "6", "--format", "csv"],
                       capture_output=True, text=True, check=True)
    assert "C,6,,9.00000000000e+00,9" in p.stdout
