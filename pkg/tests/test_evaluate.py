import random

import pytest
from hypothesis import given, settings, strategies as st

from teamlogic.evaluate import eval_team, explain
from teamlogic.generators import FormulaGen, random_model, random_team
from teamlogic.model import DomainError, Model, Team
from teamlogic.syntax import free_variables
from teamlogic.tarski import eval_direct, eval_grounded, eval_tarski

from conftest import F, SIG

M2 = Model([0, 1])
SQUARE = Team(("x", "y"), frozenset({(0, 0), (0, 1), (1, 0), (1, 1)}))
THREE = Team(("x", "y"), frozenset({(0, 0), (0, 1), (1, 0)}))


def test_independence_examples():
    assert eval_team(M2, SQUARE, F("indep(x;y;)"))
    assert not eval_team(M2, THREE, F("indep(x;y;)"))
    assert eval_team(M2, THREE, F("forall x indep(x;y;)"))


def test_conditional_independence():
    X = Team(("x", "y", "z"), frozenset({(0, 0, 0), (1, 1, 1)}))
    assert eval_team(M2, X, F("indep(x;y;z)"))
    assert not eval_team(M2, X, F("indep(x;y;)"))


def test_dependence_inclusion_exclusion():
    X = Team(("x", "y"), frozenset({(0, 1), (1, 0)}))
    assert eval_team(M2, X, F("dep(x,y)"))
    assert not eval_team(M2, X, F("dep(y)"))
    assert eval_team(M2, X, F("inc(x;y)"))
    assert not eval_team(M2, X, F("exc(x;y)"))
    Y = Team(("x", "y"), frozenset({(0, 1)}))
    assert eval_team(M2, Y, F("exc(x;y)"))


def test_empty_tuple_atoms():
    # u ⊥ v with v empty holds trivially; dep of a single term means constancy
    assert eval_team(M2, THREE, F("indep(x;;)"))
    assert not eval_team(M2, THREE, F("dep(x)"))


def test_lax_existential():
    X = Team(("x",), frozenset({(0,), (1,)}))
    assert eval_team(M2, X, F("exists y (indep(x;y;) & x = y | true)"))
    assert eval_team(M2, X, F("exists y indep(x;y;)"))


def test_domain_error():
    with pytest.raises(DomainError):
        eval_team(M2, Team(("x",), frozenset({(0,)})), F("indep(x;y;)"))


def test_explain_reports_witnesses():
    verdict, lines = explain(M2, SQUARE, F("exists z (indep(x;z;) | y = z)"))
    assert verdict
    assert any(line.startswith("exists z") for line in lines)
    assert explain(M2, THREE, F("indep(x;y;)")) == (False, [])


def test_fo_formula_is_flat(rng):
    gen = FormulaGen(rng, SIG)
    for _ in range(100):
        f = gen.fo(3, ("x", "y"))
        M = random_model(rng, SIG, rng.randint(1, 2))
        X = random_team(rng, M.universe, ("x", "y"), 4)
        rows = all(eval_tarski(M, s, f) for s in X.assignments())
        assert eval_team(M, X, f) == rows


def test_downward_closure_of_dependence(rng):
    gen = FormulaGen(rng, SIG)
    checked = 0
    for _ in range(200):
        f = gen.formula(3, ("x", "y"))
        if "Indep" in repr(f) or "Inc" in repr(f) or "Exc" in repr(f):
            continue
        M = random_model(rng, SIG, 2)
        X = random_team(rng, M.universe, ("x", "y"), 4)
        if eval_team(M, X, f):
            for r in X.rows:
                assert eval_team(M, Team(X.domain, X.rows - {r}), f)
            checked += 1
    assert checked > 20


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_engines_agree(seed):
    rng = random.Random(seed)
    f = FormulaGen(rng, SIG).formula(rng.randint(0, 3), tuple(rng.sample("xyz", 2)))
    M = random_model(rng, SIG, rng.randint(1, 2))
    X = random_team(rng, M.universe, sorted(free_variables(f)), 3)
    assert eval_team(M, X, f, engine="sat") == eval_team(M, X, f, engine="enum")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_tarski_grounding_agrees_with_recursion(seed):
    rng = random.Random(seed)
    f = FormulaGen(rng, SIG).fo(rng.randint(1, 4), ("x",))
    M = random_model(rng, SIG, rng.randint(1, 3))
    for a in M.universe:
        assert eval_direct(M, {"x": a}, f) == eval_grounded(M, {"x": a}, f)
