import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from kfueter.cli import DEFAULT_SEED, run_command

GOLDEN = Path(__file__).parent / "golden"

DOCUMENTED = [
    ("obstruction", ["obstruction", "--h", "1/r2"], 1),
    ("conjugate", ["conjugate", "--h", "x0"], 0),
    ("check", ["check", "--k", "2", "--expr-components", "1,0,0"], 0),
]


def run(argv):
    buf = io.StringIO()
    code, report = run_command(argv, buf)
    return code, buf.getvalue(), report


@pytest.mark.parametrize("name,argv,code", DOCUMENTED)
def test_documented_examples_are_byte_stable(name, argv, code):
    got_code, text, _ = run(argv)
    assert got_code == code
    assert text == (GOLDEN / f"{name}.json").read_text(encoding="utf-8")
    assert run(argv)[1] == text


def test_documented_report_contents():
    _, _, report = run(DOCUMENTED[0][1])
    assert report["status"] == "obstructed" and report["period_pi2"] == [4, 1]
    _, _, report = run(DOCUMENTED[1][1])
    claim = next(c for c in report["certificate"]["claims"] if c["check"] == "quat_D")
    assert claim["status"] == "exact-zero"
    assert set(report["f"]) == {"w", "x", "y", "z"}
    _, _, report = run(DOCUMENTED[2][1])
    assert report["regular"] is True


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kfueter.cli", "obstruction", "--h", "1/r2"], capture_output=True, text=True
    )
    assert proc.returncode == 1
    assert proc.stdout == (GOLDEN / "obstruction.json").read_text(encoding="utf-8")


@pytest.mark.parametrize(
    "argv,code,error",
    [
        (["check", "--expr", "x0/x1"], 2, "NonR2Denominator"),
        (["check", "--expr", "x0 +"], 2, "ParseError"),
        (["conjugate", "--h", "x0^2"], 2, "NotHarmonic"),
        (["conjugate", "--h", "i*x0"], 2, "ValueError"),
        (["decompose", "--h", "1", "--max-denom", "1"], 3, "NoSolutionInAnsatz"),
        (["check", "--k", "3", "--expr-components", "1,0,0"], 2, "InputError"),
    ],
)
def test_error_exit_codes(argv, code, error):
    got, _, report = run(argv)
    assert got == code and report["error"] == error


def test_parse_error_position():
    _, _, report = run(["check", "--expr", "x0 + * x1"])
    assert report["position"] == 5


def test_argparse_errors_map_to_two():
    assert run(["no-such-command"])[0] == 2
    assert run(["basis", "--k", "1"])[0] == 2


def test_check_verdicts():
    assert run(["check", "--k", "1", "--expr-components", "1,i"])[0] == 0
    assert run(["check", "--k", "1", "--expr-components", "x0,0"])[0] == 1
    assert run(["check", "--expr", "1/r2"])[0] == 0
    assert run(["check", "--expr", "x0^2"])[0] == 1
    code, _, report = run(["check", "--expr-components", "1,2,3,4"])
    assert code == 0 and report["k"] == 3


def test_apply_operators():
    code, _, report = run(["apply", "--op", "D", "--expr-components", "x0,x1,x2,x3"])
    assert code == 0 and report["output"]["w"]["terms"] == [[[0, 0, 0, 0], [-2, 1, 0, 1]]]
    code, _, report = run(["apply", "--op", "d", "--p", "0", "--expr", "x0*x1"])
    assert code == 0 and report["output"]["p"] == 1
    code, _, report = run(["apply", "--op", "eta", "--expr-components", "0,0,1"])
    assert code == 0
    code, _, report = run(["apply", "--op", "eta-inv", "--expr-components", "0,1,-i"])
    assert code == 0 and report["output"]["k"] == 2
    assert run(["apply", "--op", "Dk", "--expr-components", "x0,x1"])[0] == 0
    assert run(["apply", "--op", "D1k", "--expr-components", "x0,x1,x2,x3"])[0] == 0
    assert run(["apply", "--op", "star", "--p", "2", "--expr-components", "1,0,0,0,0,0"])[0] == 0
    assert run(["apply", "--op", "D", "--expr", "x0"])[0] == 2


def test_basis_and_decompose():
    code, _, report = run(["basis", "--k", "1", "--deg", "1"])
    assert code == 0 and report["dimension"] == 6
    code, _, report = run(["decompose", "--h", "x0"])
    assert code == 0 and report["certificate"]["ok"]
    assert report["denominator_exponents"] == {"-2": 1}


def test_verify_round_trip(tmp_path):
    for argv in (["conjugate", "--h", "x0*x1"], ["decompose", "--h", "1/r2"], ["obstruction", "--h", "1/r2"]):
        path = tmp_path / "report.json"
        path.write_text(run(argv)[1], encoding="utf-8")
        code, _, report = run(["verify", "--in", str(path)])
        assert code == 0 and all(c["agrees"] for c in report["claims"])
    data = json.loads(run(["conjugate", "--h", "x0"])[1])
    data["certificate"]["claims"][-1]["status"] = "nonzero"
    path.write_text(json.dumps(data), encoding="utf-8")
    assert run(["verify", "--in", str(path)])[0] == 1
    assert run(["verify", "--in", str(tmp_path / "missing.json")])[0] == 2


def test_input_file(tmp_path):
    from kfueter.spinor import kernel_basis

    path = tmp_path / "f.json"
    path.write_text(json.dumps(kernel_basis(2, 1)[0].to_json()), encoding="utf-8")
    code, _, report = run(["check", "--k", "2", "--in", str(path)])
    assert code == 0 and report["regular"]


def test_selftest_is_seeded():
    code, text, report = run(["selftest"])
    assert code == 0 and report["seed"] == DEFAULT_SEED and report["ok"]
    assert run(["selftest"])[1] == text
    assert run(["selftest", "--seed", "7"])[0] == 0
