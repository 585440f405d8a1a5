"""Independence-logic encodings of dependence, inclusion and exclusion atoms."""

from __future__ import annotations

from ..syntax import (
    And, Dep, Eq, Exc, Exists, FreshNames, Forall, Inc, Indep, Not, Or, Var, all_variables,
    conj, disj, exists_block, forall_block, terms_vars, tuple_eq, tuple_neq,
)


def translate_dep(atom: Dep) -> Indep:
    """dep(t1..tn) as tn ⊥_{t1..tn-1} tn."""
    *cond, last = atom.args
    return Indep((last,), (last,), tuple(cond))


def translate_inc(atom: Inc, fresh: FreshNames | None = None):
    """Inclusion atom as a universally quantified independence formula.

    ∀v1∀v2∀z((¬z=t1 ∧ ¬z=t2) ∨ (¬v1=v2 ∧ ¬z=t2) ∨ ((v1=v2 ∨ z=t2) ∧ z ⊥ v1v2))
    with z a fresh tuple of the atom's length.
    """
    t1, t2 = atom.left, atom.right
    if fresh is None:
        fresh = FreshNames(terms_vars(t1 + t2))
    else:
        fresh.avoid(terms_vars(t1 + t2))
    v1, v2 = fresh("v"), fresh("v")
    zs = fresh.many(len(t1), "z")
    z = tuple(Var(n) for n in zs)
    V1, V2 = Var(v1), Var(v2)
    body = disj([
        And(tuple_neq(z, t1), tuple_neq(z, t2)),
        And(Not(Eq(V1, V2)), tuple_neq(z, t2)),
        And(Or(Eq(V1, V2), tuple_eq(z, t2)), Indep(z, (V1, V2), ())),
    ])
    return forall_block((v1, v2) + zs, body)


def translate_exc(atom: Exc, fresh: FreshNames | None = None):
    """Exclusion atom via two z-determined switches.

    ∀z∃w1∃w2(w1 ⊥_z w1 ∧ w2 ⊥_z w2 ∧ ((w1=w2 ∧ ¬z=t1) ∨ (¬w1=w2 ∧ ¬z=t2)))

    For each value c of z the switch w1=w2 is fixed, so all rows with z=c
    must avoid t1 or all must avoid t2; this holds for every c exactly when
    no t1-value is a t2-value.
    """
    t1, t2 = atom.left, atom.right
    if fresh is None:
        fresh = FreshNames(terms_vars(t1 + t2))
    else:
        fresh.avoid(terms_vars(t1 + t2))
    zs = fresh.many(len(t1), "z")
    w1, w2 = fresh("w"), fresh("w")
    z = tuple(Var(n) for n in zs)
    W1, W2 = Var(w1), Var(w2)
    body = conj([
        Indep((W1,), (W1,), z),
        Indep((W2,), (W2,), z),
        Or(And(Eq(W1, W2), tuple_neq(z, t1)), And(Not(Eq(W1, W2)), tuple_neq(z, t2))),
    ])
    return forall_block(zs, exists_block((w1, w2), body))


def expand_atoms(f, fresh: FreshNames | None = None, keep_dep: bool = False):
    """Replace dependence, inclusion and exclusion atoms by their encodings."""
    if fresh is None:
        fresh = FreshNames(all_variables(f))
    return _expand(f, fresh, keep_dep)


def _expand(f, fresh, keep_dep):
    if isinstance(f, Dep):
        return f if keep_dep else translate_dep(f)
    if isinstance(f, Inc):
        return translate_inc(f, fresh)
    if isinstance(f, Exc):
        return translate_exc(f, fresh)
    if isinstance(f, (And, Or)):
        return type(f)(_expand(f.left, fresh, keep_dep), _expand(f.right, fresh, keep_dep))
    if isinstance(f, (Exists, Forall)):
        return type(f)(f.var, _expand(f.body, fresh, keep_dep))
    return f
