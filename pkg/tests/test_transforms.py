import random

import pytest
from hypothesis import given, settings, strategies as st

from teamlogic.generators import FormulaGen, rule6_disjunct
from teamlogic.oracle import semantically_equivalent
from teamlogic.parser import parse_formula
from teamlogic.syntax import (
    Const, Dep, Forall, Func, Inc, Indep, Or, Signature, Var, alpha_equal,
    is_first_order, is_quantifier_free, split_prefix, well_formed,
)
from teamlogic.transforms import (
    NotASentence, ShapeMismatch, as_normal_form, distribute, hoist_atoms, normal_form, prenex,
    translate_dep, translate_exc, translate_inc,
)
from teamlogic.transforms.prenex import is_prenex

from conftest import F

x, y, c = Var("x"), Var("y"), Const("c")


def P(text):
    return parse_formula(text, constants=["c"], allow_reserved=True)


# -- atom encodings ----------------------------------------------------------------


def test_translate_dep():
    assert translate_dep(Dep((x, y))) == F("indep(y;y;x)")
    assert translate_dep(Dep((x,))) == F("indep(x;x;)")
    assert translate_dep(Dep((Func("f", (x,)), c, y))) == F("indep(y;y;f(x),c)")


def test_translate_inc_shape():
    f = translate_inc(Inc((x,), (y,)))
    assert f == P("forall _vv1 forall _vv2 forall _vz3 ((!_vz3 = x & !_vz3 = y) | (!_vv1 = _vv2 & !_vz3 = y)"
                  " | ((_vv1 = _vv2 | _vz3 = y) & indep(_vz3;_vv1,_vv2;)))")


def test_translate_inc_pairs_use_two_z():
    f = translate_inc(Inc((x, y), (Var("u"), Var("w"))))
    prefix, _ = split_prefix(f)
    assert len(prefix) == 4 and all(q is Forall for q, _ in prefix)


@pytest.mark.parametrize("atom", ["inc(x;y)", "inc(x,y;y,x)", "inc(x;c)", "exc(x;y)", "exc(x,y;y,c)"])
def test_translations_equivalent(atom):
    a = F(atom)
    enc = translate_inc(a) if isinstance(a, Inc) else translate_exc(a)
    assert semantically_equivalent(a, enc, 2, 3)


# -- prenex ------------------------------------------------------------------------


def test_prenex_exists_right():
    assert prenex(P("R(c) | exists x S(x)")) == P("exists x (R(c) | S(x))")


def test_prenex_forall_right_inserts_guard():
    assert prenex(P("R(c) | forall x S(x)")) == P("forall x ((S(x) & indep(x;;)) | R(c))")


def test_prenex_forall_left_guard_lists_free_variables():
    got = prenex(P("forall x exists y ((forall z R(z,y)) | P(x))"))
    assert got == P("forall x exists y forall z ((R(z,y) & indep(z;x,y;)) | P(x))")


def test_prenex_already_prenex():
    f = P("forall x exists y (R(x,y) & indep(x;y;))")
    assert alpha_equal(prenex(f), f)


def test_prenex_needs_sentence():
    with pytest.raises(NotASentence):
        prenex(P("P(x)"))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_prenex_equivalent(seed):
    rng = random.Random(seed)
    gen = FormulaGen(rng, Signature({"P": 1}, {}, set()), variables=("x", "y"))
    f = gen.formula(3, ())
    g = prenex(f)
    assert is_prenex(g) and well_formed(g)
    assert semantically_equivalent(f, g, 2, 1)


# -- hoisting ----------------------------------------------------------------------


def test_hoist_atom_terms():
    assert hoist_atoms(P("indep(f(x);c;)")) == P("exists _vy1 exists _vy2 (indep(_vy1;_vy2;) & (_vy1 = f(x) & _vy2 = c))")


def test_hoist_first_order_unchanged():
    f = P("R(x,y) | !P(x)")
    assert hoist_atoms(f) == f


def test_hoist_rejects_quantifiers():
    with pytest.raises(ValueError):
        hoist_atoms(P("exists x P(x)"))


@pytest.mark.parametrize("text", ["indep(x;y;) | P(x)", "(indep(x;x;) & R(x,y)) | indep(y;x;)",
                                  "indep(f(x);y;x) & !x = y"])
def test_hoist_equivalent(text):
    f = P(text)
    g = hoist_atoms(f)
    _, body = split_prefix(g)
    assert semantically_equivalent(f, g, 2, 3)


# -- distribution ------------------------------------------------------------------


def test_distribute_without_atoms():
    e = distribute(P("R(c)"), P("S(c)"))
    want = P("forall _va1 forall _vb2 exists _vz3 exists _vz4 exists _vr5 (dep(_vz3) & dep(_vz4)"
             " & (!_vz3 = _vz4 | _va1 = _vb2) & ((R(c) & _vr5 = _vz3) | (S(c) & _vr5 = _vz4)))")
    assert alpha_equal(e, want)


def test_distribute_appends_r_to_conditions():
    e = distribute(P("exists u (indep(u;u;) & P(u))"), P("exists v (indep(v;v;) & !P(v))"))
    prefix, body = split_prefix(e)
    r = prefix[-1][1]
    atoms = [g for g in _spine(body) if isinstance(g, Indep)]
    assert [a.w for a in atoms] == [(Var(r),), (Var(r),)]


def _spine(f):
    from teamlogic.syntax import conj_spine
    return conj_spine(f)


def test_distribute_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        distribute(P("exists u indep(u;u;)"), P("P(c)"))
    with pytest.raises(ShapeMismatch):
        distribute(P("exists u (indep(x;u;) & P(u))"), P("P(c)"))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_distribute_equivalent(seed):
    rng = random.Random(seed)
    gen = FormulaGen(rng, Signature({"P": 1}, {}, set()), variables=("x",))
    a, b = rule6_disjunct(gen, "u", ("x",)), rule6_disjunct(gen, "v", ("x",))
    assert semantically_equivalent(Or(a, b), distribute(a, b), 2, 3, min_universe=1)


# -- normal form -------------------------------------------------------------------


def test_normal_form_swap():
    nf = normal_form(P("exists y forall x R(x,y)"))
    assert nf.formula() == P("forall x exists y exists _ve1 (indep(y;_ve1;) & (R(x,y) & _ve1 = x))")
    assert nf.problems() == []


def test_normal_form_fast_path():
    f = P("forall x exists y exists z (indep(y;z;) & R(x,y))")
    assert as_normal_form(f) is not None
    assert alpha_equal(normal_form(f).formula(), f)


def test_normal_form_needs_sentence():
    with pytest.raises(NotASentence):
        normal_form(P("exists y R(x,y)"))


def test_normal_form_shape_invariants():
    nf = normal_form(P("(forall x P(x) | exists y Q(y)) & exists z dep(z)"))
    assert nf.problems() == []
    assert is_first_order(nf.matrix) and is_quantifier_free(nf.matrix)
    ex = set(nf.existentials)
    for a in nf.atoms:
        assert {t.name for t in a.u + a.v + a.w} <= ex


@pytest.mark.parametrize("text", ["exists x dep(x)", "forall x (P(x) | indep(x;x;))",
                                  "exists x exists y forall z forall w (R(x,z) | R(y,w))"])
def test_normal_form_equivalent(text):
    f = P(text)
    assert semantically_equivalent(f, normal_form(f).formula(), 2, 1)
