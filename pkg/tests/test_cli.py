import json

import pytest
from click.testing import CliRunner
from hypothesis import given

from magnus.chains import chain_from_json, lift
from magnus.cli import main
from magnus.freegroup import FreeWord, boundary_word, commutator
from magnus.groupring import from_json
from magnus.magnusrep import matrix_from_json, twist_matrix
from magnus.parsing import ParseError, parse_multitwist_expr, parse_twist_expr, parse_word_expr

from conftest import words


@pytest.fixture
def run(tmp_path):
    runner = CliRunner()

    def go(*args):
        return runner.invoke(main, list(args), env={"MAGNUS_TABLE_DIR": str(tmp_path)})

    return go


def test_parse_examples():
    a1, b1 = FreeWord.A(2, 1), FreeWord.B(2, 1)
    assert parse_word_expr("[A1,B1]", 2) == commutator(a1, b1)
    assert parse_word_expr("A1^-1", 2) == a1.inverse()
    assert parse_word_expr("[A1,B1][A2,B2]", 2) == boundary_word(2)
    assert parse_word_expr("(A1 B1)^2 * B1^-1", 2) == a1 * b1 * a1
    assert parse_word_expr("A1 A1^-1", 2).is_identity()
    assert parse_word_expr("1", 2).is_identity()


@pytest.mark.parametrize(
    "src,pos",
    [("A3", 0), ("[A1,B1", 6), ("A1 ^", 4), ("A1 % B1", 3), ("A1 2", 3), ("", 0), ("B0", 0)],
)
def test_parse_errors_carry_position(src, pos):
    with pytest.raises(ParseError) as info:
        parse_word_expr(src, 2)
    assert info.value.pos == pos


@given(words(2))
def test_word_text_round_trip(w):
    assert parse_word_expr(str(w), 2) == w


def test_twist_expressions():
    d1, e2 = boundary_word(2, 1), parse_word_expr("[A2,B2]", 2)
    assert parse_twist_expr("T[[A1,B1]] T[[A2,B2]]^2", 2) == [("T", [(d1, 1)]), ("T", [(e2, 2)])]
    assert parse_multitwist_expr("M[[A1,B1]^3, [A2,B2]]", 2) == [(d1, 3), (e2, 1)]
    assert parse_multitwist_expr("M[[A1,B1]]^2", 2) == [(d1, 2)]
    assert parse_multitwist_expr("T[[A1,B1]]^2", 2) == [(d1, 2)]
    with pytest.raises(ParseError):
        parse_twist_expr("[A1,B1]", 2)
    with pytest.raises(ParseError):
        parse_multitwist_expr("T[[A1,B1]] T[[A2,B2]]", 2)


def test_documented_invocations(run):
    r = run("trace", "--genus", "2", "T[[A1,B1]] T[[A2,B2]]")
    assert r.exit_code == 0 and r.output == "0\n"
    r = run("commutator", "--genus", "2", "[A1,B1]", "[A2,B2]")
    assert r.exit_code == 0 and r.output == "in-kernel: true\n"
    r = run("lift", "--genus", "1", "[A1,B1]")
    assert r.exit_code == 0 and r.output == "alpha1: 1 - b1 ; beta1: a1 - 1\n"


def test_exit_codes(run):
    assert run("lift", "--genus", "1", "A2").exit_code == 2
    assert run("lift", "--genus", "1", "[A1,").exit_code == 2
    assert run("lift", "[A1,B1]").exit_code == 2
    assert run("trace", "--genus", "1", "T[A1]").exit_code == 1
    assert run("pair", "--genus", "1", "A1", "B1").exit_code == 1
    assert run("classify", "--genus", "2", "M[[A1,B1], [A1,B2 B1]]", "T[[A2,B2]]").exit_code == 1
    assert run("norelation", "--genus", "2", "T[[A1,B1]]", "T[[A2,B2]]").exit_code == 1
    assert run("trace", "--genus", "2", "T[[A1,B2]] T[[A1,B1]]").exit_code == 1


def test_bad_table_is_config_error(run, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert run("pair", "--genus", "1", "--table", str(bad), "A1", "B1", "--sigma", "+").exit_code == 2
    assert run("lift", "--genus", "1", "--table", str(tmp_path / "missing.json"), "A1").exit_code == 0
    r = run("derive-table", "--genus", "1", "--table", str(tmp_path / "t1.json"))
    assert r.exit_code == 0
    assert run("pair", "--genus", "2", "--table", str(tmp_path / "t1.json"), "A1", "B1").exit_code == 2
    r = run("pair", "--genus", "1", "--table", str(tmp_path / "t1.json"), "A1", "B1", "--sigma", "+")
    assert r.exit_code == 0 and r.output == "a1*b1^-1\n"


def test_json_outputs_round_trip(run):
    r = run("lift", "--genus", "2", "--format", "json", "[A1,B2 B1]")
    data = json.loads(r.output)
    assert chain_from_json(data["chain"]) == lift(parse_word_expr("[A1,B2 B1]", 2))
    assert data["curve"] is True

    r = run("rep", "--genus", "2", "--format", "json", "T[[A1,B2 B1]]^2")
    data = json.loads(r.output)
    assert matrix_from_json(data["matrix"], 2) == twist_matrix(parse_word_expr("[A1,B2 B1]", 2), 2)

    r = run("pair", "--genus", "2", "--format", "json", "[A1,B1]", "[A1,B2 B1]")
    x = from_json(json.loads(r.output)["pairing"], 2)
    assert str(x) == run("pair", "--genus", "2", "[A1,B1]", "[A1,B2 B1]").output.strip()


def test_classify_and_norelation(run):
    r = run("classify", "--genus", "2", "--format", "json", "M[[A1,B1], [A2,B2]^2]", "T[[A1,B2 B1]]")
    data = json.loads(r.output)
    assert data["kind"] == "free_in_image" and data["witness"]["i"] == 1
    assert data["trace_identity_checked"] is True
    r = run("classify", "--genus", "2", "T[[A1,B1]]", "T[[A1,B1][A2,B2]]^2")
    assert r.output == "commute_in_image\n"
    r = run("norelation", "--genus", "2", "-L", "3", "T[[A1,B1]]", "T[[A1,B2 B1]]")
    assert r.exit_code == 0
    assert "words checked: 52" in r.output and "relation: none" in r.output


def test_deterministic(run):
    args = ("rep", "--genus", "2", "T[[A1,B1]] M[[A2 A1,B1]^2]")
    assert run(*args).output == run(*args).output


def test_selftest(run):
    r = run("selftest", "--genus", "2")
    assert r.exit_code == 0
    assert "FAIL" not in r.output
