import pytest

from teamlogic.oracle import BudgetExceeded, entails, enumerate_models, enumerate_teams, semantically_equivalent
from teamlogic.syntax import Signature

from conftest import F


def test_model_enumeration_counts():
    sig = Signature({"P": 1, "R": 2}, {}, {"c"})
    # 2^2 * 2^4 relation choices times 2 constant values
    assert sum(1 for _ in enumerate_models(sig, 2)) == 4 * 16 * 2
    assert sum(1 for _ in enumerate_models(Signature({}, {"f": 1}, set()), 2)) == 4


def test_team_enumeration_counts():
    teams = list(enumerate_teams((0, 1), ("x",), 2))
    # empty, two singletons, one pair
    assert len(teams) == 4


def test_dep_encoding_equivalent():
    assert semantically_equivalent(F("dep(x,y)"), F("indep(y;y;x)"), 2, 3)


def test_indep_not_dep():
    v = semantically_equivalent(F("indep(x;y;)"), F("dep(x,y)"), 2, 4)
    assert not v
    assert v.left and not v.right


def test_budget():
    with pytest.raises(BudgetExceeded) as info:
        semantically_equivalent(F("indep(x;y;)"), F("indep(x;y;)"), 2, 4, budget=5)
    assert info.value.progress.evaluations == 5


def test_entails():
    assert entails([F("P(x) & indep(x;x;)")], F("dep(x)")) is None
    assert entails([F("indep(x;y;)")], F("dep(x,y)")) is not None
