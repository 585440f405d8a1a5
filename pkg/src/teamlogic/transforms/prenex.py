"""Prenex form for independence-logic sentences.

Quantifiers are pulled out one at a time.  Pulling a universal quantifier
out of a disjunct adds the guard ``x ⊥ y`` (y the remaining free variables)
to that disjunct; everything else is the classical rewriting, valid because
the input is first renamed apart.
"""

from __future__ import annotations

from ..syntax import (
    And, Exists, Forall, Indep, Not, Or, Var, attach_prefix, free_variables, is_quantifier_free,
    is_sentence, rename_apart, split_prefix,
)
from ..tarski import nnf


class NotASentence(ValueError):
    pass


def guard_atom(x: str, others) -> Indep:
    return Indep((Var(x),), tuple(Var(v) for v in sorted(others)), ())


def push_negations(f):
    """Put every first-order negated subformula into negation normal form."""
    if isinstance(f, Not):
        return nnf(f)
    if isinstance(f, (And, Or)):
        return type(f)(push_negations(f.left), push_negations(f.right))
    if isinstance(f, (Exists, Forall)):
        return type(f)(f.var, push_negations(f.body))
    return f


def prenex(f, fresh=None):
    if not is_sentence(f):
        raise NotASentence(f"free variables: {sorted(free_variables(f))}")
    f = rename_apart(push_negations(f), fresh)
    prefix, matrix = _prenex(f)
    return attach_prefix(prefix, matrix)


def _prenex(f):
    """Return ``(prefix, matrix)`` for a renamed-apart formula in which
    negation only applies to atoms."""
    if isinstance(f, (Exists, Forall)):
        prefix, matrix = _prenex(f.body)
        return [(type(f), f.var)] + prefix, matrix
    if isinstance(f, And):
        pa, ma = _prenex(f.left)
        pb, mb = _prenex(f.right)
        return pa + pb, And(ma, mb)
    if isinstance(f, Or):
        return _pull_or(*_prenex(f.left), *_prenex(f.right))
    return [], f


def _push_into(prefix, matrix, extra):
    # (Q̄ M) ∧ g  ==  Q̄(M ∧ g) when g mentions none of the Q̄ variables
    return prefix, And(matrix, extra)


def _pull_or(pl, ml, pr, mr):
    out = []
    while pl or pr:
        if pl:
            (q, x), rest = pl[0], pl[1:]
            if q is Exists:
                out.append((q, x))
                pl = rest
                continue
            others = (free_variables(attach_prefix(rest, ml)) | free_variables(attach_prefix(pr, mr))) - {x}
            out.append((q, x))
            pl, ml = _push_into(rest, ml, guard_atom(x, others))
            continue
        (q, x), rest = pr[0], pr[1:]
        if q is Exists:
            out.append((q, x))
            pr = rest
            continue
        # commute, then pull from the (new) left disjunct
        others = (free_variables(attach_prefix(rest, mr)) | free_variables(ml)) - {x}
        out.append((q, x))
        rest, mr = _push_into(rest, mr, guard_atom(x, others))
        pl, ml, pr, mr = rest, mr, [], ml
    return out, Or(ml, mr)


def is_prenex(f) -> bool:
    _, matrix = split_prefix(f)
    return is_quantifier_free(matrix)
