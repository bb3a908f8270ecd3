"""Command-line interface: parsing, output formats, exit-status contract."""

import json

import pytest

from carlitzbases import FieldConfig, Poly, bracket, parse_poly
from carlitzbases.algebra import random_poly, values_match
from carlitzbases.cli import RunConfig, main, parse_func


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# RunConfig and the function grammar
# ---------------------------------------------------------------------------

def test_runconfig_roundtrip():
    run = RunConfig(p=3, e=1, prec=16, budget=128, seed=7, format="csv")
    assert RunConfig.from_text(run.to_text()) == run


def test_parse_func_simple(f2):
    f = parse_func(f2, "D:1")
    from carlitzbases import hasse_derivative
    t3 = Poly.monomial(f2, 3)
    assert f(t3) == hasse_derivative(f2, 1, t3)


def test_parse_func_combination(f2, rng):
    f = parse_func(f2, "T*E:1+D:2")
    from carlitzbases import eval_E, hasse_derivative
    for _ in range(5):
        x = random_poly(f2, rng, 4)
        expected = Poly.T(f2) * eval_E(f2, 1, x) + hasse_derivative(f2, 2, x)
        assert values_match(f(x), expected)
    assert f.linear


def test_parse_func_unknown_name(f2):
    from carlitzbases import DomainError
    with pytest.raises(DomainError):
        parse_func(f2, "mystery:3")


# ---------------------------------------------------------------------------
# expand
# ---------------------------------------------------------------------------

def test_expand_delta_sequence(capsys):
    code, out, _ = run_cli(capsys, "--q", "2", "expand", "--f", "D:1",
                           "--basis", "linear-D", "--terms", "5")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "carlitzbases/v1"
    assert doc["entries"] == ["0", "1", "0", "0", "0"]


def test_expand_frobenius_bracket_powers(capsys):
    code, out, _ = run_cli(capsys, "--q", "2", "expand", "--f", "frobenius:1",
                           "--basis", "linear-D", "--terms", "4")
    assert code == 0
    doc = json.loads(out)
    f2 = FieldConfig(2)
    br = bracket(f2, 1)
    assert [parse_poly(f2, t) for t in doc["entries"]] == [br ** i for i in range(4)]


def test_expand_G3_in_D_basis(capsys):
    code, out, _ = run_cli(capsys, "--q", "2", "expand", "--f", "G:3",
                           "--basis", "D", "--level", "2", "--terms", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["basis"] == "D" and len(doc["entries"]) == 4


def test_expand_nonlinear_in_linear_basis_fails(capsys):
    code, _, err = run_cli(capsys, "--q", "2", "expand", "--f", "G:3",
                           "--basis", "linear-D", "--terms", "4")
    assert code == 2
    assert "linear" in err


# ---------------------------------------------------------------------------
# matrix
# ---------------------------------------------------------------------------

def test_matrix_inverse_unit_diagonal(capsys):
    code, out, _ = run_cli(capsys, "--q", "2", "matrix", "--which", "inverse",
                           "--size", "4")
    assert code == 0
    doc = json.loads(out)
    for n in range(4):
        assert doc["entries"][n][n] == "1"


def test_matrix_voloch_column(capsys):
    code, out, _ = run_cli(capsys, "--q", "2", "matrix", "--which", "voloch",
                           "--size", "4", "--prec", "12")
    assert code == 0
    doc = json.loads(out)
    f2 = FieldConfig(2)
    from carlitzbases import carlitz_L
    for n in range(1, 4):
        entry = doc["entries"][n][1]
        expected = str(carlitz_L(f2, n - 1).to_series(12))
        assert entry == expected


def test_matrix_size_one(capsys):
    code, out, _ = run_cli(capsys, "--q", "3", "matrix", "--which", "voloch",
                           "--size", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["entries"] == [["1+O(T^24)"]]


def test_matrix_csv_format(capsys):
    code, out, _ = run_cli(capsys, "--q", "2", "--format", "csv",
                           "matrix", "--which", "inverse", "--size", "3")
    assert code == 0
    assert out.splitlines()[0] == "row,col,entry"


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_ortho_exit_zero(capsys):
    code, out, _ = run_cli(capsys, "--q", "2", "verify", "--suite", "ortho",
                           "--n", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["falsified"] == 0
    assert doc["summary"]["budget_exhausted"] == 0


def test_verify_all_q3(capsys):
    code, out, _ = run_cli(capsys, "--q", "3", "verify", "--suite", "all",
                           "--n", "2")
    assert code == 0


def test_verify_budget_exhausted_exit_two(capsys):
    code, out, _ = run_cli(capsys, "--q", "2", "--budget", "256",
                           "verify", "--suite", "ortho", "--n", "9")
    assert code == 2
    doc = json.loads(out)
    assert doc["summary"]["budget_exhausted"] > 0


def test_verify_unknown_suite(capsys):
    code, _, err = run_cli(capsys, "--q", "2", "verify", "--suite", "bogus")
    assert code == 2 and "unknown suite" in err


# ---------------------------------------------------------------------------
# info, determinism, files
# ---------------------------------------------------------------------------

def test_info(capsys):
    code, out, _ = run_cli(capsys, "--q", "4", "info")
    assert code == 0
    doc = json.loads(out)
    assert doc["q"] == 4 and doc["p"] == 2 and doc["e"] == 2
    assert doc["modulus"] is not None


def test_q_shorthand_rejects_non_prime_power(capsys):
    code, _, err = run_cli(capsys, "--q", "6", "info")
    assert code == 2


def test_determinism_byte_identical(capsys):
    args = ("--q", "2", "--seed", "5", "verify", "--suite", "distance", "--n", "2")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "matrix.json"
    code, out, _ = run_cli(capsys, "--q", "2", "--out", str(target),
                           "matrix", "--which", "inverse", "--size", "3")
    assert code == 0
    assert out == ""
    doc = json.loads(target.read_text())
    assert doc["kind"] == "matrix-inverse"
