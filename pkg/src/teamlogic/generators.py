"""Random formulas, models and teams for property tests and fuzzing."""

from __future__ import annotations

import itertools
import random

from .model import Model, Team
from .syntax import (
    And, Bot, Const, Dep, Eq, Exc, Exists, Forall, Func, Inc, Indep, Not, Or, Rel, Signature,
    Top, Var, conj,
)

DEFAULT_SIGNATURE = Signature({"P": 1, "R": 2}, {}, {})


class FormulaGen:
    """Random well-formed formulas over a fixed signature.

    Negation is only ever applied to first-order subformulas.
    """

    def __init__(self, rng: random.Random, signature: Signature = DEFAULT_SIGNATURE,
                 variables=("x", "y", "z"), max_tuple: int = 2):
        self.rng = rng
        self.sig = signature
        self.variables = tuple(variables)
        self.max_tuple = max_tuple

    def term(self, names, depth: int = 1):
        rng = self.rng
        choices = [("var", n) for n in names]
        choices += [("const", c) for c in self.sig.constants]
        if depth > 0:
            choices += [("func", f) for f in self.sig.functions]
        if not choices:
            raise ValueError("no terms available")
        kind, name = rng.choice(choices)
        if kind == "var":
            return Var(name)
        if kind == "const":
            return Const(name)
        arity = self.sig.functions[name]
        return Func(name, tuple(self.term(names, depth - 1) for _ in range(arity)))

    def terms(self, names, k):
        return tuple(self.term(names) for _ in range(k))

    def fo_atom(self, names):
        rng = self.rng
        if not names and not self.sig.constants:
            return rng.choice([Top(), Bot()])
        if self.sig.relations and rng.random() < 0.7:
            rel, arity = rng.choice(sorted(self.sig.relations.items()))
            return Rel(rel, self.terms(names, arity))
        return Eq(self.term(names), self.term(names))

    def team_atom(self, names):
        rng = self.rng
        kind = rng.choice(["indep", "indep", "dep", "inc", "exc"])
        k = lambda low=0: rng.randint(low, self.max_tuple)
        if kind == "indep":
            return Indep(self.terms(names, k(1)), self.terms(names, k(1)), self.terms(names, k()))
        if kind == "dep":
            return Dep(self.terms(names, k(1)))
        n = k(1)
        cls = Inc if kind == "inc" else Exc
        return cls(self.terms(names, n), self.terms(names, n))

    def fo(self, depth: int, names, quantifiers: bool = True):
        return self._gen(depth, tuple(names), quantifiers, atoms=False)

    def formula(self, depth: int, names, quantifiers: bool = True, atoms: bool = True):
        return self._gen(depth, tuple(names), quantifiers, atoms)

    def _gen(self, depth, names, quantifiers, atoms):
        rng = self.rng
        if depth <= 0 or rng.random() < 0.25:
            if atoms and names and rng.random() < 0.4:
                return self.team_atom(names)
            g = self.fo_atom(names)
            return Not(g) if rng.random() < 0.3 else g
        ops = ["and", "or", "not"]
        if quantifiers:
            ops += ["exists", "forall"]
        op = rng.choice(ops)
        if op == "not":
            return Not(self._gen(depth - 1, names, quantifiers, False))
        if op in ("and", "or"):
            cls = And if op == "and" else Or
            return cls(self._gen(depth - 1, names, quantifiers, atoms),
                       self._gen(depth - 1, names, quantifiers, atoms))
        var = rng.choice(self.variables)
        cls = Exists if op == "exists" else Forall
        inner = names if var in names else names + (var,)
        return cls(var, self._gen(depth - 1, inner, quantifiers, atoms))


def rule6_disjunct(fg: FormulaGen, stem: str, free=("x", "y")):
    """A random ``∃x̄(u_1 ⊥_{w_1} v_1 ∧ … ∧ C)`` whose atoms use only the bound
    variables ``{stem}0``, ``{stem}1``, ... and whose C may mention one
    variable from ``free``."""
    rng = fg.rng
    xs = [f"{stem}{i}" for i in range(rng.randint(0, 2))]
    atoms = []
    if xs:
        for _ in range(rng.randint(0, 2)):
            pick = lambda k: tuple(Var(rng.choice(xs)) for _ in range(k))
            atoms.append(Indep(pick(rng.randint(1, 2)), pick(rng.randint(1, 2)), pick(rng.randint(0, 1))))
    outside = tuple(rng.sample(list(free), min(len(free), rng.randint(0, 1))))
    c = fg.fo(rng.randint(0, 2), tuple(xs) + outside, quantifiers=rng.random() < 0.3)
    body = conj(atoms + [c])
    for v in reversed(xs):
        body = Exists(v, body)
    return body


def random_model(rng: random.Random, sig: Signature, size: int) -> Model:
    universe = tuple(range(size))
    rels = {}
    for name, arity in sig.relations.items():
        rels[name] = frozenset(t for t in itertools.product(universe, repeat=arity)
                               if rng.random() < 0.5)
    funs = {name: {args: rng.choice(universe) for args in itertools.product(universe, repeat=arity)}
            for name, arity in sig.functions.items()}
    consts = {name: rng.choice(universe) for name in sig.constants}
    return Model(universe, rels, funs, consts, sig)


def random_team(rng: random.Random, universe, domain, max_size: int) -> Team:
    domain = tuple(domain)
    rows = list(itertools.product(universe, repeat=len(domain)))
    k = rng.randint(0, min(max_size, len(rows)))
    return Team(domain, frozenset(rng.sample(rows, k)))
