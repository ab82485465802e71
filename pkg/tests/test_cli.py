import json
import subprocess
import sys

import pytest

from mwlat.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_reproduce_all_is_deterministic(capsys):
    code1, out1 = run(capsys, "reproduce", "all")
    code2, out2 = run(capsys, "reproduce", "all")
    assert code1 == code2 == 0
    assert out1 == out2
    reports = json.loads(out1)
    assert [r["example"] for r in reports] == ["5.1a", "5.1b", "5.2", "5.3"]
    assert all(r["passed"] for r in reports)


def test_reproduce_table_and_only(capsys):
    code, out = run(capsys, "--format", "table", "reproduce", "5.1b", "--only", "heights")
    assert code == 0
    lines = out.strip().splitlines()
    assert all(l.startswith("PASS") for l in lines[:-1]) and "height" in lines[0]


def test_fibers_json(capsys):
    code, out = run(capsys, "fibers", "5.1b")
    data = json.loads(out)
    assert code == 0 and data["shioda_tate_tally"] == 5 and data["sum_ord_delta"] == 12
    assert [f["type"] for f in data["fibers"]] == ["III", "I2", "I2", "I2", "III"]


def test_mw_gram_and_decompose(capsys):
    code, out = run(capsys, "mw", "5.1a", "--basis", "P0,P1,P2,P3", "--targets", "P4,P1+P2")
    data = json.loads(out)
    assert code == 0
    assert data["gram"][0] == ["2", "1", "1", "1"]
    assert data["decompositions"]["P1+P2"]["coeffs"] == [0, 1, 1, 0]
    code, out = run(capsys, "mw", "5.1a", "--basis", "P0", "--targets", "P1")
    assert code == 1 and "error" in json.loads(out)["decompositions"]["P1"]


def test_conic_command(capsys):
    code, out = run(capsys, "conic", "5.2", "--point", "Q1", "--r", "t/r6 + b", "--b", "1")
    data = json.loads(out)
    assert code == 0 and data["factor_witness"] and data["contact_proof"]["contact_points"] == 4
    code, out = run(capsys, "conic", "5.2", "--point", "Q1", "--r", "t/r6 + b", "--b", "0")
    assert code == 1 and json.loads(out)["error"]["code"] == "degenerate_conic"


def test_verify_command(capsys):
    code, out = run(capsys, "verify", "5.2", "--kind", "2")
    assert code == 0 and json.loads(out)["passed"]
    code, out = run(capsys, "--format", "table", "verify", "5.1a", "--kind", "1a",
                    "--curves", "E,Lo,L1,L2,L3")
    assert code == 0 and out.count("PASS") == 4
    code, out = run(capsys, "verify", "5.1a", "--kind", "3b")
    assert code == 2


@pytest.mark.parametrize("argv", [["reproduce", "9.9"], ["fibers", "/no/such/file.json"],
                                  ["mw", "5.1a", "--basis", "P0,Nope"]])
def test_input_errors_exit_two(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 2 and "error" in json.loads(out)


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "mwlat.cli", "fibers", "5.1a"], capture_output=True,
                          text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["shioda_tate_tally"] == 4
