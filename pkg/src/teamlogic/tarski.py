"""Classical satisfaction for the first-order fragment.

Small formulas are evaluated by direct recursion.  Formulas with many
quantifiers are grounded over the finite universe into CNF: universal
quantifiers are expanded, existential ones become one-hot value choices.
"""

from __future__ import annotations

import itertools
from typing import Mapping

from .cnf import CNF
from .model import DomainError, Model, SignatureError
from .syntax import (
    And, Bot, Eq, Exists, Forall, Not, Or, Rel, Top, atom_terms, check_well_formed,
    free_variables, is_first_order, subformulas, term_vars,
)

GROUNDING_THRESHOLD = 8


class NotFirstOrder(ValueError):
    pass


def eval_tarski(M: Model, s: Mapping[str, int], f) -> bool:
    if not is_first_order(f):
        raise NotFirstOrder("Tarski evaluation needs a first-order formula")
    missing = free_variables(f) - set(s)
    if missing:
        raise DomainError(f"free variables not in assignment: {sorted(missing)}")
    problem = check_well_formed(f, M.signature)
    if problem:
        raise SignatureError(str(problem))
    return eval_fo(M, {k: s[k] for k in free_variables(f)}, f)


def eval_fo(M: Model, s, f) -> bool:
    """Unchecked classical evaluation (callers guarantee the preconditions)."""
    if count_quantifiers(f) >= GROUNDING_THRESHOLD:
        return eval_grounded(M, s, f)
    return eval_direct(M, s, f)


def count_quantifiers(f) -> int:
    return sum(1 for g in subformulas(f) if isinstance(g, (Exists, Forall)))


def eval_atom(M: Model, s, f) -> bool:
    if isinstance(f, Eq):
        return M.term_value(f.left, s) == M.term_value(f.right, s)
    if isinstance(f, Rel):
        return tuple(M.term_value(t, s) for t in f.args) in M.relations[f.name]
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    raise NotFirstOrder(f"not a first-order atom: {f!r}")


def eval_direct(M: Model, s, f) -> bool:
    if isinstance(f, Not):
        return not eval_direct(M, s, f.body)
    if isinstance(f, And):
        return eval_direct(M, s, f.left) and eval_direct(M, s, f.right)
    if isinstance(f, Or):
        return eval_direct(M, s, f.left) or eval_direct(M, s, f.right)
    if isinstance(f, Exists):
        return any(eval_direct(M, {**s, f.var: a}, f.body) for a in M.universe)
    if isinstance(f, Forall):
        return all(eval_direct(M, {**s, f.var: a}, f.body) for a in M.universe)
    return eval_atom(M, s, f)


def nnf(f, negate: bool = False):
    """Negation normal form of a first-order formula."""
    if isinstance(f, Not):
        return nnf(f.body, not negate)
    if isinstance(f, And):
        cls = Or if negate else And
        return cls(nnf(f.left, negate), nnf(f.right, negate))
    if isinstance(f, Or):
        cls = And if negate else Or
        return cls(nnf(f.left, negate), nnf(f.right, negate))
    if isinstance(f, Exists):
        return (Forall if negate else Exists)(f.var, nnf(f.body, negate))
    if isinstance(f, Forall):
        return (Exists if negate else Forall)(f.var, nnf(f.body, negate))
    if isinstance(f, Top):
        return Bot() if negate else Top()
    if isinstance(f, Bot):
        return Top() if negate else Bot()
    return Not(f) if negate else f


class _Grounder:
    def __init__(self, M: Model):
        self.M = M
        self.cnf = CNF()

    def atom(self, f, env) -> int:
        names = sorted({v for t in atom_terms(f) for v in term_vars(t)})
        fixed = {v: env[v] for v in names if isinstance(env[v], int)}
        open_ = [v for v in names if not isinstance(env[v], int)]
        if not open_:
            return CNF.TRUE if eval_atom(self.M, fixed, f) else CNF.FALSE
        results = {}
        for combo in itertools.product(range(self.M.size), repeat=len(open_)):
            s = dict(fixed)
            s.update({v: self.M.universe[i] for v, i in zip(open_, combo)})
            results[combo] = eval_atom(self.M, s, f)
        if all(results.values()):
            return CNF.TRUE
        if not any(results.values()):
            return CNF.FALSE
        a = self.cnf.new()
        for combo, val in results.items():
            guard = [-env[v][i] for v, i in zip(open_, combo)]
            self.cnf.add(guard + [a if val else -a])
        return a

    def compile(self, f, env) -> int:
        if isinstance(f, Not):
            return -self.atom(f.body, env)
        if isinstance(f, And):
            left = self.compile(f.left, env)
            if left == CNF.FALSE:
                return left
            return self.cnf.implies_and([left, self.compile(f.right, env)])
        if isinstance(f, Or):
            left = self.compile(f.left, env)
            if left == CNF.TRUE:
                return left
            return self.cnf.implies_or([left, self.compile(f.right, env)])
        if isinstance(f, Forall):
            lits = []
            for a in self.M.universe:
                lit = self.compile(f.body, {**env, f.var: a})
                if lit == CNF.FALSE:
                    return lit
                lits.append(lit)
            return self.cnf.implies_and(lits)
        if isinstance(f, Exists):
            if self.M.size == 1:
                return self.compile(f.body, {**env, f.var: self.M.universe[0]})
            group = [self.cnf.new() for _ in self.M.universe]
            self.cnf.exactly_one(group)
            return self.compile(f.body, {**env, f.var: group})
        return self.atom(f, env)


def eval_grounded(M: Model, s, f) -> bool:
    g = _Grounder(M)
    root = g.compile(nnf(f), dict(s))
    if root in (CNF.TRUE, CNF.FALSE):
        return root == CNF.TRUE
    g.cnf.add([root])
    return g.cnf.satisfiable()
