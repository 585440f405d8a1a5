import pytest
from hypothesis import given, strategies as st

from teamlogic.model import (
    EmptyValue, FileFormatError, Model, Team, UnknownVariable, duplicate, format_model,
    format_team, parse_model, parse_team, restrict, supplement,
)

M2 = Model([0, 1])


def team(domain, *rows):
    return Team(tuple(domain), frozenset(rows))


def test_duplicate():
    X = team("x", (0,))
    assert duplicate(X, M2, "y") == team("xy", (0, 0), (0, 1))
    # duplicating an existing variable overwrites its column
    assert duplicate(team("x", (0,)), M2, "x") == team("x", (0,), (1,))


def test_duplicate_of_empty_team_is_empty():
    assert len(duplicate(team("x"), M2, "y")) == 0


def test_supplement():
    X = team("x", (0,), (1,))
    Y = supplement(X, lambda s: {s["x"]}, "y")
    assert Y == team("xy", (0, 0), (1, 1))
    Y = supplement(X, {(0,): {0, 1}, (1,): {1}}, "y")
    assert Y == team("xy", (0, 0), (0, 1), (1, 1))
    with pytest.raises(EmptyValue):
        supplement(X, lambda s: set(), "y")


def test_restrict():
    X = team("xy", (0, 0), (0, 1))
    assert restrict(X, {"x"}) == team("x", (0,))
    with pytest.raises(UnknownVariable):
        restrict(X, {"z"})


def test_singleton_empty():
    X = Team.singleton_empty()
    assert len(X) == 1 and X.domain == ()


def test_model_file_round_trip():
    text = "universe: 0 1 2\nrelation R/2: (0,1) (2,2)\nfunction f/1: 0->1 1->2 2->0\nconstant c: 2\n"
    M = parse_model(text)
    assert M.relations["R"] == {(0, 1), (2, 2)}
    assert M.functions["f"][(2,)] == 0
    assert parse_model(format_model(M)) == M


def test_model_file_errors():
    with pytest.raises(FileFormatError):
        parse_model("relation R/1: (0)\n")
    with pytest.raises((FileFormatError, ValueError)):
        parse_model("universe: 0\nrelation R/1: (3)\n")


def test_team_file():
    X = parse_team("vars: x y\nrow: 0 1\nrow: 1 1\n", M2)
    assert X == team("xy", (0, 1), (1, 1))
    assert parse_team(format_team(X), M2) == X
    with pytest.raises((FileFormatError, ValueError)):
        parse_team("vars: x\nrow: 5\n", M2)


@given(st.sets(st.tuples(st.integers(0, 2), st.integers(0, 2)), max_size=9))
def test_team_format_round_trip(rows):
    X = Team(("a", "b"), frozenset(rows))
    assert parse_team(format_team(X), Model([0, 1, 2])) == X
