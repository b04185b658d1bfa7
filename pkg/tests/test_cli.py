import json

import mpmath
import pytest

from gpfkit.cli import EXIT_OK, EXIT_PRECISION, EXIT_USAGE, EXIT_VERIFY_FAILED, main, tolerance

LAM = "(1,1,4;0,1/4;8/9)"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", LAM)
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["kind"] == "typeA" and data["details"]["m_plus_N"] == 4
    code, out2, _ = run(capsys, "classify", "--lam", LAM)
    assert out2 == out


def test_canon(capsys):
    code, out, _ = run(capsys, "canon", "(w+1)/w")
    data = json.loads(out)
    assert code == EXIT_OK and data["S"] == "w" and data["d"] == "1"
    code, out, _ = run(capsys, "canon", "--R", "4/3*(w+1/2)*(w+3/4)/((w+2/3)*(w+7/12))")
    data = json.loads(out)
    assert data["S"] == "1" and data["d"] == "4/3"


def test_asym(capsys):
    code, out, _ = run(capsys, "asym", LAM)
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["d"] == "4/3" and data["t0_exact"] == "3/4-1/4*sqrt(3)"
    assert float(data["B_minus_d_relative"]) < 1e-100


def test_residues_csv(capsys):
    code, out, _ = run(capsys, "residues", LAM, "--jmax", "3", "--csv")
    lines = out.strip().splitlines()
    assert code == EXIT_OK and lines[0] == "j,w_j,C_j,value"
    assert lines[3].startswith("2,-1/2,7/3888,0.0553069")
    assert lines[2].split(",")[2] == "0"


def test_residues_json(capsys):
    code, out, _ = run(capsys, "residues", LAM, "--jmax", "2")
    assert code == EXIT_OK and json.loads(out)


def test_deficiency(capsys):
    code, out, _ = run(capsys, "deficiency", LAM)
    data = json.loads(out)
    assert code == EXIT_OK and data["N"] == 2 and data["case"] == "IV"


@pytest.mark.parametrize("argv", [
    ("classify", "1,1,4;0,1/4;8/9"),
    ("classify",),
    ("canon", "(w+1/w"),
    ("search",),
    ("frobnicate",),
    ("verify", "--builtin", "bailey", "--j", "2"),
])
def test_usage_errors(capsys, argv):
    # argparse failures exit; parse failures inside a command return
    try:
        code = main(list(argv))
    except SystemExit as stop:
        code = stop.code
    assert code == EXIT_USAGE


def test_verify_builtin_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "table1")
    assert code == EXIT_VERIFY_FAILED
    assert "FAIL T1.2 " in out and "PASS T1.1 " in out and "SKIP T1.3" in out
    assert "PASS T1.2-corrected (informational)" in out
    for name in ("table2", "table3"):
        code, out, _ = run(capsys, "verify", "--builtin", name)
        assert code == EXIT_OK and "FAIL" not in out
    code, out, _ = run(capsys, "verify", "--builtin", "bailey", "--j", "2", "--k", "1", "--c", "1/3")
    assert code == EXIT_OK and "cancellation" in out


def test_precision_setting(capsys, monkeypatch):
    assert abs(tolerance(128) / mpmath.mpf(10) ** -8 - 1) < 1e-12
    monkeypatch.setenv("GPF_PREC", "128")
    code, out, _ = run(capsys, "verify", "--builtin", "table2")
    assert code == EXIT_OK and "e-38" in out
    monkeypatch.setenv("GPF_PREC", "40")
    code, _, err = run(capsys, "verify", "--builtin", "table2")
    assert code == EXIT_USAGE and "GPF_PREC" in err
    monkeypatch.delenv("GPF_PREC")
    code, out, _ = run(capsys, "verify", "--builtin", "table2", "--prec", "8")
    assert code == EXIT_PRECISION and out.startswith("PRECISION T2.1")


def test_search_and_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--rmax", "4")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == EXIT_OK and len(rows) == 3
    assert all(row["pqr"] == ["1", "1", "4"] for row in rows)
    path = tmp_path / "rows.jsonl"
    path.write_text(out)
    code, out, _ = run(capsys, "verify", "--formula", str(path))
    assert code == EXIT_OK and out.count("PASS") == 3


def test_search_jobs_deterministic(capsys):
    _, serial, _ = run(capsys, "search", "--rmax", "6")
    _, parallel, _ = run(capsys, "search", "--rmax", "6", "--jobs", "3")
    assert serial == parallel and len(serial.splitlines()) == 8


def test_search_pretty(capsys):
    code, out, _ = run(capsys, "search", "--rmax", "4", "--pretty")
    assert code == EXIT_OK and "(1,1,4;0,1/2;8/9)" in out and "G(w+3/4)" in out
