import pytest
from hypothesis import given

from teamlogic.parser import ParseError, format_formula, parse_formula, parse_term
from teamlogic.syntax import Const, Dep, Exists, Func, Inc, Indep, Or, Rel, Var

from conftest import F, formulas


def test_atoms():
    assert F("indep(x;y;)") == Indep((Var("x"),), (Var("y"),), ())
    assert F("indep(x,y;;z)") == Indep((Var("x"), Var("y")), (), (Var("z"),))
    assert F("dep(x,y)") == Dep((Var("x"), Var("y")))
    assert F("inc(x,c;y,y)") == Inc((Var("x"), Const("c")), (Var("y"), Var("y")))


def test_constants_and_numerals():
    assert parse_term("c", constants=["c"]) == Const("c")
    assert parse_term("c") == Var("c")
    assert parse_term("1") == Const("1")
    assert parse_term("f(x,0)") == Func("f", (Var("x"), Const("0")))


def test_precedence():
    assert F("P(x) | P(y) & P(z)") == Or(Rel("P", (Var("x"),)),
                                         F("P(y) & P(z)"))
    # quantifiers extend as far right as possible
    assert F("exists x P(x) | P(y)") == Exists("x", F("P(x) | P(y)"))


@pytest.mark.parametrize("text", ["P(x", "indep(x;y)", "dep()", "x", "forall P(x)", "P(x) &", "_vx = x"])
def test_errors(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_error_position():
    with pytest.raises(ParseError) as info:
        parse_formula("P(x) & & P(y)")
    assert info.value.column == 8


def test_reserved_prefix_only_when_allowed():
    assert parse_formula("_vx = x", allow_reserved=True) is not None


@given(formulas())
def test_round_trip(f):
    assert parse_formula(format_formula(f), constants=["c"]) == f
