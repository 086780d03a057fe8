import json

import pytest
from click.testing import CliRunner

from mumford_tame.cli import main

runner = CliRunner()


def run(args):
    return runner.invoke(main, args)


def test_construct_two_adic_exit_zero():
    result = run(["construct", "--g", "1", "--p", "2"])
    assert result.exit_code == 0
    body = json.loads(result.output)
    assert body["status"] == "verified"
    assert body["report"]["model"]["N"] == "8"


def test_construct_odd_p_exit_two_with_named_condition():
    result = run(["construct", "--g", "1", "--p", "3", "--n", "1"])
    assert result.exit_code == 2
    body = json.loads(result.output)
    assert body["status"] == "failed:truncation_powers"


def test_construct_usage_error():
    result = run(["construct", "--g", "0", "--p", "3"])
    assert result.exit_code == 2
    assert "genus" in result.output


def test_construct_poly_mode(tmp_path):
    spec_file = tmp_path / "specs.json"
    spec_file.write_text(json.dumps([
        {"prime": 13, "kind": "type", "t": 1, "blocks": [2]},
        {"prime": 3, "kind": "semistable"},
    ]))
    result = run(["construct", "--degree", "4", "--spec-file", str(spec_file)])
    assert result.exit_code == 0
    body = json.loads(result.output)
    assert body["report"]["command"] == "construct-poly"
    assert body["report"]["type_checks"][0]["ok"] is True


def test_goldbach_cli():
    result = run(["goldbach", "--n", "16"])
    assert result.exit_code == 0
    assert json.loads(result.output)["report"]["triples"] == [["5", "11", "13"]]


def test_goldbach_double_cli():
    result = run(["goldbach", "--n", "14", "--double", "--format", "text"])
    assert result.exit_code == 0
    assert "double triples" in result.output


def test_excluded_cli():
    result = run(["excluded", "--g-max", "3", "--format", "text"])
    assert result.exit_code == 0
    assert "g=3: ['7']" in result.output


def test_type_check_cli():
    result = run([
        "type-check", "--f", "x^3-25", "--p", "5", "--t", "2", "--blocks", "3",
    ])
    assert result.exit_code == 0
    assert json.loads(result.output)["report"]["ok"] is True


def test_type_check_cli_failure_exit_two():
    result = run([
        "type-check", "--f", "x^2-169", "--p", "13", "--t", "1", "--blocks", "2",
    ])
    assert result.exit_code == 2


def test_frobenius_cli():
    result = run([
        "frobenius", "--f", "1,1,3,1,0,0,0,1", "--ell", "3", "--genus", "3",
        "--p", "7",
    ])
    assert result.exit_code == 0
    body = json.loads(result.output)
    assert body["report"]["mod_p"]["irreducible"] is True


def test_table_check_cli_selected_rows():
    result = run(["table-check", "--rows", "g3-p7", "--format", "text"])
    assert result.exit_code == 0
    assert "[pass] g3-p7" in result.output


def test_out_file(tmp_path):
    out = tmp_path / "report.json"
    result = run(["goldbach", "--n", "8", "--out", str(out)])
    assert result.exit_code == 0
    assert json.loads(out.read_text())["report"]["triples"] == [["3", "5", "7"]]


def test_igp_cli_premise_only_semantics():
    # igp for a passing route would exit 3 (premise-only); with the known
    # torsion defect it exits 2 and names the condition
    result = run(["igp", "--g", "4", "--p", "3", "--n", "1"])
    assert result.exit_code == 2
    body = json.loads(result.output)
    assert body["status"] == "failed:local_torsion_field"


def test_budget_error_is_clean():
    result = run(["table-check", "--rows", "g13-p11"])
    assert result.exit_code == 1
    assert "budget" in result.output and "Traceback" not in result.output


def test_igp_excluded_prime_cli():
    result = run(["igp", "--g", "3", "--p", "7"])
    assert result.exit_code == 1
    assert "excluded" in result.output
    assert "table-check" in result.output
