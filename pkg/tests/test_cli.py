import json

import pytest

from linsets.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_field(capsys):
    code, out, _ = run(capsys, "field", "--field", "3^1^6", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["order"] == 729 and obj["modulus"] == [1, 0, 0, 0, 1, 1, 1]


def test_field_flags_and_modulus(capsys):
    code, out, _ = run(capsys, "field", "--p", "2", "--n", "4", "--modulus", "1,1,0,0,1", "--json")
    assert code == 0 and json.loads(out)["modulus"] == [1, 1, 0, 0, 1]


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "--field", "3^1^6", "x^q", "g", "--json")
    assert code == 0 and json.loads(out)["value_dlog"] == 3


def test_scattered(capsys):
    code, out, _ = run(capsys, "scattered", "--field", "3^1^6", "x^q^2", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["scattered"] is False and obj["weight_spectrum"] == {"2": 91}


def test_linset(capsys):
    code, out, _ = run(capsys, "linset", "--field", "3^1^6", "x^q", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["card"] == 364 and obj["infinity"] is False


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "--field", "3^1^6", "x^q + g*x^q^4", "--vs", "x^q^5 + g^9*x^q^2",
                       "--d", "1,91", "--json")
    obj = json.loads(out)
    assert code == 0 and set(obj["profile"]) == {"1", "91"}
    assert obj["coefficient_identities"]["hold"] is True


def test_equiv_pgl_and_gammal(capsys):
    code, out, _ = run(capsys, "equiv", "--field", "3^1^6", "x^q", "x^q^5", "--json")
    assert code == 0 and json.loads(out)["equivalent"] is True
    code, out, _ = run(capsys, "equiv", "--field", "3^1^6", "--mode", "gammal", "x^q+g*x^q^4", "x^q+g^3*x^q^4",
                       "--json")
    obj = json.loads(out)
    assert code == 0 and obj["equivalent"] is True and obj["witness"]["rho"] == 1


def test_equiv_budget_exit_code(capsys):
    code, out, _ = run(capsys, "equiv", "--field", "3^1^6", "--budget", "10", "x^q+g*x^q^4", "x^q+g^3*x^q^4",
                       "--json")
    assert code == 3 and json.loads(out)["equivalent"] == "unknown"


def test_autgroup_predict(capsys):
    code, out, _ = run(capsys, "autgroup", "--field", "3^1^6", "--predict", "cmmz", "--theta", "g^455", "--json")
    assert code == 0 and json.loads(out)["order"] == 24


def test_autgroup_needs_input(capsys):
    code, _, err = run(capsys, "autgroup", "--field", "3^1^6")
    assert code == 2 and "autgroup" in err


def test_family(capsys):
    code, out, _ = run(capsys, "family", "roots", "--field", "3^1^6")
    assert code == 0 and json.loads(out)["roots_dlog"] == [455, 637]
    code, out, _ = run(capsys, "family", "invert", "--field", "3^1^6", "--theta", "g")
    assert code == 0 and json.loads(out)["inverse"] is not None
    code, out, _ = run(capsys, "family", "witness", "--kind", "cmmz", "--field", "3^1^6", "--theta", "g^455",
                       "--delta", "g^637")
    assert code == 0 and all(json.loads(out)["steps"].values())
    code, out, _ = run(capsys, "family", "witness", "--field", "3^1^6", "--theta", "g", "--delta", "g^3",
                       "--rho", "1")
    assert code == 0 and json.loads(out)["witness"]["rho"] == 1


def test_family_reports_no_solution(capsys):
    code, _, err = run(capsys, "family", "witness", "--field", "3^1^6", "--theta", "g", "--delta", "g^2")
    assert code == 2 and "norm condition" in err


def test_verify_pass_and_json(capsys):
    code, out, _ = run(capsys, "verify", "lemma31", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["passed"] is True and "timings" not in obj


def test_verify_failure_exit_code(capsys):
    # the norm-one binomial stabilizer at q = 3 is larger than the closed-form set
    code, out, _ = run(capsys, "verify", "aut43", "--thetas", "0")
    assert code == 1 and "FAIL" in out


@pytest.mark.parametrize("argv", [
    [],
    ["nosuch"],
    ["eval", "--field", "3^1^6", "x^q^9", "1"],
    ["eval", "x", "1"],
    ["eval", "--field", "4^1^2", "x", "1"],
    ["verify", "nosuch"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
