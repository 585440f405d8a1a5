"""Randomised soundness audit of the rule catalog.

For a rule, :func:`fuzz_soundness` builds random derivations whose last step
is that rule, makes sure the checker accepts them and then evaluates the open
premises and the conclusion on random finite models and teams.  A model and
team satisfying every open premise but not the conclusion is a counterexample.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..evaluate import eval_team
from ..generators import FormulaGen, random_model, random_team, rule6_disjunct
from ..syntax import (
    And, CaptureError, Eq, Exists, Forall, FreshNames, Indep, Not, Or, Signature,
    Var, all_variables, free_variables, substitute, subst_term,
)
from ..transforms.hoist import distribute
from .checker import check
from .derivation import Assume, Node, open_premises
from .rule8 import Rule8Instance
from .rules import CATALOG

FUZZ_SIGNATURE = Signature({"P": 1, "R": 2}, {"f": 1}, {"c"})


@dataclass(frozen=True)
class FuzzBounds:
    max_universe: int = 2
    max_team: int = 3
    depth: int = 2
    samples: int = 3  # (M, X) pairs per generated derivation


@dataclass
class FuzzReport:
    rule: str
    trials: int
    evaluations: int = 0
    premises_held: int = 0
    counterexamples: list = field(default_factory=list)
    rejected: list = field(default_factory=list)  # generated instances the checker refused

    @property
    def ok(self) -> bool:
        return not self.counterexamples and not self.rejected

    def summary(self) -> str:
        return (f"{self.rule}: {self.trials} trials, {self.evaluations} evaluations "
                f"({self.premises_held} with premises true), "
                f"{len(self.counterexamples)} counterexamples, {len(self.rejected)} rejected")


class _Gen:
    def __init__(self, rng: random.Random, depth: int):
        self.rng = rng
        self.depth = depth
        self.fg = FormulaGen(rng, FUZZ_SIGNATURE, variables=("x", "y", "z"))
        self._labels = 0

    def hyp(self, formula):
        self._labels += 1
        return Assume(f"h{self._labels}", formula)

    def names(self, k=None):
        pool = ["x", "y", "z"]
        k = self.rng.randint(0, 2) if k is None else k
        return tuple(self.rng.sample(pool, k))

    def any(self, names=None, quantifiers=True):
        names = self.names() if names is None else names
        return self.fg.formula(self.rng.randint(0, self.depth), names, quantifiers)

    def fo(self, names=None, quantifiers=True):
        names = self.names() if names is None else names
        return self.fg.fo(self.rng.randint(0, self.depth), names, quantifiers)

    def term(self, names):
        return self.fg.term(tuple(names) or ("x",))

    def weaken(self, leaf, avoid=()):
        """A small sound derivation continuing from ``leaf``: the leaf itself,
        or one or-intro / and-elim step."""
        f = leaf.conclusion
        roll = self.rng.random()
        if isinstance(f, And) and roll < 0.4:
            side = self.rng.choice(["left", "right"])
            return Node(f"and-elim-{side}", getattr(f, side), (leaf,))
        if roll < 0.7:
            other = self.any(tuple(n for n in ("x", "y", "z") if n not in avoid)[:2])
            if self.rng.random() < 0.5:
                return Node("or-intro-left", Or(f, other), (leaf,))
            return Node("or-intro-right", Or(other, f), (leaf,))
        return leaf


def _instance(g: _Gen, rule: str):
    rng = g.rng
    if rule == "and-intro":
        a, b = g.hyp(g.any()), g.hyp(g.any())
        return Node(rule, And(a.formula, b.formula), (a, b))
    if rule in ("and-elim-left", "and-elim-right"):
        h = g.hyp(And(g.any(), g.any()))
        return Node(rule, getattr(h.formula, rule.rsplit("-", 1)[1]), (h,))
    if rule in ("or-intro-left", "or-intro-right"):
        a, b = g.any(), g.any()
        h = g.hyp(a if rule.endswith("left") else b)
        return Node(rule, Or(a, b), (h,))
    if rule == "or-elim":
        c = g.fo()
        a = And(c, g.any()) if rng.random() < 0.7 else c
        b = And(c, g.any()) if rng.random() < 0.7 else c
        major = g.hyp(Or(a, b))
        ha, hb = g.hyp(a), g.hyp(b)
        left = Node("and-elim-left", c, (ha,)) if a != c else ha
        right = Node("and-elim-left", c, (hb,)) if b != c else hb
        return Node(rule, c, (major, left, right), (ha.label, hb.label))
    if rule == "neg-intro":
        a = g.fo()
        if rng.random() < 0.5:
            ha, hn = g.hyp(a), g.hyp(Not(a))
            return Node(rule, Not(a), (Node("and-intro", And(a, Not(a)), (ha, hn)),), (ha.label,))
        b = g.fo()
        ha, hb = g.hyp(a), g.hyp(And(b, Not(b)))
        return Node(rule, Not(a), (hb,), (ha.label,))
    if rule == "neg-elim":
        a = g.fo()
        return Node(rule, a, (g.hyp(Not(Not(a))),))
    if rule == "forall-intro":
        x = rng.choice(["x", "y", "z"])
        rest = tuple(n for n in ("x", "y", "z") if n != x)
        kind = rng.random()
        if kind < 0.3:
            return Node(rule, Forall(x, Eq(Var(x), Var(x))), (Node("identity-axiom", Eq(Var(x), Var(x))),))
        if kind < 0.65:
            a = g.fo(rest[:1] + (x,))
            h = g.hyp(Forall(x, a))
            return Node(rule, Forall(x, a), (Node("forall-elim", a, (h,)),))
        h = g.hyp(g.any(rest[:rng.randint(0, 2)]))
        b = g.any((x,) + rest[:1])
        return Node(rule, Forall(x, Or(h.formula, b)), (Node("or-intro-left", Or(h.formula, b), (h,)),))
    if rule == "forall-elim":
        while True:
            x = rng.choice(["x", "y", "z"])
            a = g.fo((x,) + g.names(1))
            t = g.term(g.names(rng.randint(1, 2)))
            try:
                inst = substitute(a, t, x)
            except CaptureError:
                continue
            return Node(rule, inst, (g.hyp(Forall(x, a)),))
    if rule == "exists-intro":
        while True:
            x = rng.choice(["x", "y", "z"])
            a = g.any((x,) + g.names(1))
            t = g.term(g.names(rng.randint(1, 2)))
            try:
                inst = substitute(a, t, x)
            except CaptureError:
                continue
            return Node(rule, Exists(x, a), (g.hyp(inst),))
    if rule == "exists-elim":
        x = rng.choice(["x", "y", "z"])
        rest = tuple(n for n in ("x", "y", "z") if n != x)
        h = g.any(rest[:rng.randint(0, 2)])
        a = And(h, g.any((x,) + rest[:1]))
        major, ha = g.hyp(Exists(x, a)), g.hyp(a)
        minor = Node("and-elim-left", h, (ha,))
        if rng.random() < 0.5:
            other = g.any(rest[:1])
            minor = Node("or-intro-left", Or(h, other), (minor,))
        return Node(rule, minor.conclusion, (major, minor), (ha.label,))
    if rule == "disj-subst":
        a, b = g.any(), g.any()
        major, hb = g.hyp(Or(a, b)), g.hyp(b)
        minor = g.weaken(hb)
        return Node(rule, Or(a, minor.conclusion), (major, minor), (hb.label,))
    if rule == "disj-comm":
        a, b = g.any(), g.any()
        return Node(rule, Or(b, a), (g.hyp(Or(a, b)),))
    if rule == "disj-assoc":
        a, b, c = g.any(), g.any(), g.any()
        return Node(rule, Or(a, Or(b, c)), (g.hyp(Or(Or(a, b), c)),))
    if rule == "scope-forall":
        x = rng.choice(["x", "y", "z"])
        rest = tuple(n for n in ("x", "y", "z") if n != x)
        a = g.any((x,) + rest[:rng.randint(0, 2)])
        b = g.any(rest[:rng.randint(0, 2)])
        others = sorted(free_variables(Or(a, b)) - {x})
        rng.shuffle(others)
        guard = Indep((Var(x),), tuple(Var(n) for n in others), ())
        if rng.random() < 0.5:
            guard = Indep(guard.v, guard.u, ())
        return Node(rule, Forall(x, Or(And(a, guard), b)), (g.hyp(Or(Forall(x, a), b)),))
    if rule == "scope-exists":
        x = rng.choice(["x", "y", "z"])
        rest = tuple(n for n in ("x", "y", "z") if n != x)
        a = g.any((x,) + rest[:1])
        b = g.any(rest[:rng.randint(0, 2)])
        return Node(rule, Exists(x, Or(a, b)), (g.hyp(Or(Exists(x, a), b)),))
    if rule == "univ-subst":
        while True:
            x, y = rng.sample(["x", "y", "z"], 2)
            a = g.any((x,) + g.names(1))
            if y in free_variables(Forall(x, a)):
                continue
            try:
                inst = substitute(a, Var(y), x)
            except CaptureError:
                continue
            break
        major, hy = g.hyp(Forall(x, a)), g.hyp(inst)
        minor = g.weaken(hy, avoid=(y,))
        return Node(rule, Forall(y, minor.conclusion), (major, minor), (hy.label,))
    if rule == "indep-distribution":
        a, b = rule6_disjunct(g.fg, "u"), rule6_disjunct(g.fg, "v")
        e = distribute(a, b, FreshNames(all_variables(Or(a, b))))
        return Node(rule, e, (g.hyp(Or(a, b)),))
    if rule == "indep-introduction":
        nx, ny = rng.randint(1, 2), rng.randint(1, 2)
        pool = ["x1", "x2", "y1", "y2"]
        xs, ys = pool[:nx], pool[2:2 + ny]
        zs = g.names(rng.randint(0, 1))
        body = g.any(tuple(xs + ys) + zs, quantifiers=False)
        prem = body
        for v in reversed(ys):
            prem = Forall(v, prem)
        for v in reversed(xs):
            prem = Exists(v, prem)
        z = sorted(free_variables(body) - set(xs) - set(ys))
        rng.shuffle(z)
        X, Y = tuple(map(Var, xs)), tuple(map(Var, ys))
        atom = Indep(X, Y, tuple(map(Var, z))) if rng.random() < 0.5 else Indep(Y, X, tuple(map(Var, z)))
        concl = And(body, atom)
        for v in reversed(xs):
            concl = Exists(v, concl)
        for v in reversed(ys):
            concl = Forall(v, concl)
        return Node(rule, concl, (g.hyp(prem),))
    if rule == "indep-transmission":
        inst = _rule8_instance(g)
        x1, y1 = inst.level1_names()
        return Node(rule, inst.conclusion(x1, y1), (g.hyp(inst.premise()),))
    if rule == "identity-axiom":
        x = rng.choice(["x", "y", "z"])
        return Node(rule, Eq(Var(x), Var(x)))
    if rule == "identity-symmetry":
        x, y = rng.choice(["x", "y", "z"]), rng.choice(["x", "y", "z"])
        return Node(rule, Eq(Var(y), Var(x)), (g.hyp(Eq(Var(x), Var(y))),))
    if rule == "identity-term":
        x, y = rng.choice(["x", "y", "z"]), rng.choice(["x", "y", "z"])
        t = g.term((y,) + g.names(1))
        return Node(rule, Eq(subst_term(t, {y: Var(x)}), t), (g.hyp(Eq(Var(x), Var(y))),))
    if rule == "identity-formula":
        while True:
            x, y = rng.choice(["x", "y", "z"]), rng.choice(["x", "y", "z"])
            a = g.any((y,) + g.names(1))
            try:
                concl = substitute(a, Var(x), y)
            except CaptureError:
                continue
            return Node(rule, concl, (g.hyp(And(a, Eq(Var(x), Var(y)))),))
    raise ValueError(f"unknown rule {rule!r}")


def _rule8_instance(g: _Gen) -> Rule8Instance:
    rng = g.rng
    x0, y0 = ("a",), ("b",)
    atom = Indep((Var("b"),), (Var("b"),), ()) if rng.random() < 0.5 else \
        Indep((Var("b"),), (Var("b"),), (Var("b"),))
    c = g.fo(("a", "b"), quantifiers=False)
    d = g.fo(g.names(rng.randint(0, 1)), quantifiers=False)
    return Rule8Instance((x0,), (y0,), (atom,), c, d)


def random_instance(rule: str, rng: random.Random, depth: int = 2):
    """A random derivation whose root applies ``rule``."""
    if rule not in CATALOG:
        raise ValueError(f"unknown rule {rule!r}")
    return _instance(_Gen(rng, depth), rule)


def fuzz_soundness(rule: str, trials: int = 200, bounds: FuzzBounds | None = None,
                   seed: int = 0) -> FuzzReport:
    bounds = bounds or FuzzBounds()
    rng = random.Random(f"{seed}:{rule}")
    report = FuzzReport(rule, trials)
    for trial in range(trials):
        d = random_instance(rule, rng, bounds.depth)
        verdict = check(d)
        if not verdict:
            report.rejected.append((trial, d, verdict))
            continue
        prems = open_premises(d)
        domain = set(free_variables(d.conclusion))
        for p in prems:
            domain |= free_variables(p)
        domain = tuple(sorted(domain))
        for k in range(bounds.samples):
            # every third trial uses a one-element model
            size = 1 if (trial + k) % 3 == 0 else rng.randint(1, bounds.max_universe)
            M = random_model(rng, FUZZ_SIGNATURE, size)
            X = random_team(rng, M.universe, domain, bounds.max_team)
            report.evaluations += 1
            if not all(eval_team(M, X, p) for p in prems):
                continue
            report.premises_held += 1
            if not eval_team(M, X, d.conclusion):
                report.counterexamples.append((trial, d, M, X))
    return report
