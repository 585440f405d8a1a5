import pytest
from hypothesis import given

from teamlogic.syntax import (
    And, CaptureError, Dep, Eq, Func, Inc, Indep, NonInjectiveError, Not,
    Or, Rel, Signature, Var, alpha_equal, check_well_formed, conj, conj_spine,
    free_variables, is_first_order, rename_apart, rename_free, substitute, well_formed,
)

from conftest import F, formulas

x, y, z = Var("x"), Var("y"), Var("z")


def test_first_order_detection():
    assert is_first_order(F("forall x (R(x,y) | !x = y)"))
    assert not is_first_order(F("exists x (P(x) & indep(x;y;))"))
    for atom in ("dep(x)", "inc(x;y)", "exc(x;y)"):
        assert not is_first_order(F(atom))


def test_free_variables():
    assert free_variables(F("exists x R(x,y)")) == {"y"}
    assert free_variables(F("indep(x;f(y);z)")) == {"x", "y", "z"}
    assert free_variables(F("forall x exists y R(x,y)")) == set()
    # empty tuples contribute nothing
    assert free_variables(Indep((), (x,), ())) == {"x"}


def test_substitute_replaces_free_occurrences_only():
    f = F("R(x,y) & exists x P(x)")
    assert substitute(f, Func("f", (z,)), "x") == F("R(f(z),y) & exists x P(x)")


def test_substitute_rejects_capture():
    with pytest.raises(CaptureError):
        substitute(F("exists y R(x,y)"), y, "x")


def test_rename_free_must_be_injective():
    with pytest.raises(NonInjectiveError):
        rename_free(F("R(x,y)"), {"x": "y"})
    assert rename_free(F("R(x,y)"), {"x": "y", "y": "x"}) == F("R(y,x)")


def test_well_formed_rejects_negated_team_atom():
    assert not well_formed(Not(Indep((x,), (y,), ())))
    assert not well_formed(Not(And(Rel("P", (x,)), Dep((x,)))))
    assert well_formed(Not(Or(Rel("P", (x,)), Eq(x, y))))


def test_well_formed_checks_lengths_and_arity():
    assert check_well_formed(Inc((x, y), (x,))) is not None
    sig = Signature({"R": 2}, {}, set())
    assert check_well_formed(Rel("R", (x,)), sig) is not None
    assert check_well_formed(Rel("R", (x, y)), sig) is None
    assert check_well_formed(Rel("Q", (x,)), sig) is not None


def test_signature_names_unique():
    with pytest.raises(ValueError):
        Signature({"f": 1}, {"f": 1}, set())
    with pytest.raises(ValueError):
        Signature({"R": 0}, {}, set())


def test_conj_spine_inverts_conj():
    items = [Rel("P", (x,)), Or(Eq(x, y), Rel("P", (y,))), And(Eq(x, x), Eq(y, y))]
    assert conj_spine(conj(items)) == items


def test_alpha_equal():
    assert alpha_equal(F("exists x R(x,y)"), F("exists z R(z,y)"))
    assert not alpha_equal(F("exists x R(x,y)"), F("exists y R(y,y)"))


@given(formulas())
def test_rename_apart_is_alpha_equivalent(f):
    g = rename_apart(f)
    assert alpha_equal(f, g)
    assert free_variables(g) == free_variables(f)


@given(formulas())
def test_rename_apart_binds_each_variable_once(f):
    from teamlogic.syntax import bound_variables

    g = rename_apart(f)
    bound = bound_variables(g)
    assert len(bound) == len(set(bound))
    assert not set(bound) & free_variables(g)


@given(formulas())
def test_identity_substitution(f):
    for v in free_variables(f):
        assert substitute(f, Var(v), v) == f
