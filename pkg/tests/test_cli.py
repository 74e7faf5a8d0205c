import json
import subprocess
import sys
from pathlib import Path

import pytest

from braidkit import report
from braidkit.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main

GOLDEN = Path(__file__).parent / "golden"

# golden report name -> command line
GOLDEN_RUNS = {
    "check-adjoint_ar": ["check", "adjoint_ar", "--comodule-algebra", "--coacted", "ar"],
    "check-adjoint_tqr": ["check", "adjoint_tqr", "--comodule-algebra", "--coacted", "br_abcd", "--specialize", "r=q"],
    "check-transmute_eq12": ["check", "transmute_eq12"],
    "check-br_sol2_abcd": ["check", "br_sol2_abcd", "--axioms", "all", "--max-word-len", "3"],
    "check-ar_hopf": ["check", "ar_hopf", "--axioms", "coassociativity,antipode-left,antipode-right"],
}


def run(argv, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main([*argv, "--output", str(out)])
    return code, report.loads(out.read_text())


@pytest.mark.parametrize("kind, expected", [
    (None, ["ar_hopf", "br_sol1_abcd", "tqr_hopf"]),
    ("coaction", ["adjoint_ar", "adjoint_tqr"]),
    ("table", ["transmute_eq12", "transmute_sec4"]),
])
def test_list(capsys, kind, expected):
    assert main(["list"] + (["--kind", kind] if kind else [])) == EXIT_OK
    names = {line.split()[-1] for line in capsys.readouterr().out.splitlines()}
    assert set(expected) <= names


def test_check_structure_holds(tmp_path):
    code, doc = run(["check", "br_sol2_abcd", "--axioms", "all", "--max-word-len", "3"], tmp_path)
    assert code == EXIT_OK
    assert doc["verdict"] == {"holds": True}
    assert len(doc["checks"]) == 18


def test_check_coaction_fails_with_witness(tmp_path, capsys):
    code, doc = run(["check", "adjoint_ar", "--comodule-algebra", "--coacted", "ar"], tmp_path)
    assert code == EXIT_FAIL
    (check,) = doc["checks"]
    assert check["status"] == "fails"
    assert check["witnesses"]
    assert "witness" in capsys.readouterr().out


def test_check_coaction_r_equals_q(tmp_path):
    code, doc = run(["check", "adjoint_tqr", "--comodule-algebra", "--coacted", "br_abcd", "--specialize", "r=q"], tmp_path)
    assert code == EXIT_OK
    assert doc["config"]["specialize"] == {"r": "q"}


def test_check_coaction_symbolic_r_fails(tmp_path):
    code, _ = run(["check", "adjoint_tqr", "--comodule-algebra", "--coacted", "br_abcd"], tmp_path)
    assert code == EXIT_FAIL


def test_numeric_smoke_mode(tmp_path):
    code, _ = run(["check", "adjoint_tqr", "--comodule-algebra", "--coacted", "br_abcd", "--specialize", "q=3", "r=3"], tmp_path)
    assert code == EXIT_OK
    code, _ = run(["check", "adjoint_tqr", "--comodule-algebra", "--coacted", "br_abcd", "--specialize", "q=3", "r=2"], tmp_path)
    assert code == EXIT_FAIL


def test_check_naturality(tmp_path):
    code, _ = run(["check", "adjoint_tqr", "--naturality", "br_sol2_abcd", "--specialize", "r=q"], tmp_path)
    assert code == EXIT_OK


def test_check_presentation(tmp_path):
    code, doc = run(["check", "AR", "--samples", "200"], tmp_path)
    assert code == EXIT_OK
    assert doc["checks"][0]["axiom"] == "confluence"


def test_check_yaml_document(tmp_path):
    from braidkit import files

    path = files.shipped_files()["table"]["transmute_sec4"]
    code, _ = run(["check", str(path)], tmp_path)
    assert code == EXIT_OK


def test_plain_star_reports_tqr(tmp_path):
    code, doc = run(["check", "tqr_hopf", "--axioms", "star-involution", "--plain-star"], tmp_path)
    assert code == EXIT_OK
    assert [c["axiom"] for c in doc["checks"]] == ["star-involution", "star-hopf"]


@pytest.mark.parametrize("argv", [
    ["check", "no_such_thing"],
    ["check", "ar_hopf", "--axioms", "frobenius"],
    ["check", "ar_hopf", "--axioms", "yang-baxter"],
    ["check", "ar_hopf", "--specialize", "q"],
    ["check", "ar_hopf", "--coacted", "ar"],
    ["check", "adjoint_ar", "--naturality", "ar_hopf"],
    ["check", "transmute_eq12", "--specialize", "q=2"],
    ["solve", "--budget", "-1"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["check", "ar_hopf", "--max-word-len", "0"], ["frobnicate"]])
def test_parser_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_USAGE


def test_solve_budget_exhaustion(tmp_path):
    code, doc = run(["solve", "--budget", "10"], tmp_path)
    assert code == EXIT_BUDGET
    assert doc["verdict"]["budget_exhausted"] is True
    assert doc["verdict"]["exhausted_branches"] >= 1
    assert doc["verdict"]["all_solutions_certified"] is False


def test_output_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(report.OUTPUT_DIR_ENV, str(tmp_path))
    assert main(["check", "transmute_eq12"]) == EXIT_OK
    doc = report.loads((tmp_path / "check-transmute_eq12.json").read_text())
    assert doc["format_version"] == report.FORMAT_VERSION
    assert list(doc) == ["format_version", "command", "config", "checks", "branches", "verdict"]


def test_json_flag(capsys):
    assert main(["check", "transmute_eq12", "--json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["verdict"] == {"holds": True}


def test_report_version_checked():
    with pytest.raises(ValueError):
        report.loads('{"format_version": 99}')


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden_reports(tmp_path, name):
    main([*GOLDEN_RUNS[name], "--output", str(tmp_path / "a.json")])
    main([*GOLDEN_RUNS[name], "--output", str(tmp_path / "b.json")])
    first = (tmp_path / "a.json").read_bytes()
    assert first == (tmp_path / "b.json").read_bytes()
    assert first == (GOLDEN / f"{name}.json").read_bytes()


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "braidkit.cli", "list", "--kind", "table"],
                         capture_output=True, text=True, check=True)
    assert "transmute_sec4" in out.stdout


def test_solve_without_star(tmp_path, full_solve):
    _, with_star, _ = full_solve
    code, doc = run(["solve", "--no-star"], tmp_path)
    assert code == EXIT_OK
    assert len(doc["branches"]) >= len(with_star.branches)
    assert doc["config"]["include_star"] is False
