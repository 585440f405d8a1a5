"""Exhaustive equivalence checking over small models and teams."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .evaluate import eval_team
from .model import Model, Team
from .syntax import Const, Signature, atom_terms, free_variables, signature_of, subformulas


class BudgetExceeded(RuntimeError):
    def __init__(self, progress: "Progress"):
        self.progress = progress
        super().__init__(f"enumeration budget exhausted after {progress.evaluations} "
                         f"evaluations ({progress.models} models)")


@dataclass
class Progress:
    models: int = 0
    teams: int = 0
    evaluations: int = 0
    largest_universe: int = 0


@dataclass(frozen=True)
class Equivalent:
    progress: Progress = field(compare=False)
    max_universe: int = 0
    max_team: int = 0

    def __bool__(self):
        return True

    def describe(self) -> str:
        p = self.progress
        return (f"equivalent within bounds (universe <= {self.max_universe}, "
                f"team <= {self.max_team}; {p.models} models, {p.teams} teams)")


@dataclass(frozen=True)
class Counterexample:
    model: Model
    team: Team
    left: bool
    right: bool

    def __bool__(self):
        return False

    def describe(self) -> str:
        return f"counterexample: left is {self.left}, right is {self.right}"


def max_numeral(*formulas) -> int:
    best = -1

    def visit(t):
        nonlocal best
        if isinstance(t, Const) and t.is_numeral:
            best = max(best, int(t.name))
        for a in getattr(t, "args", ()):
            visit(a)

    for f in formulas:
        for g in subformulas(f):
            for t in atom_terms(g):
                visit(t)
    return best


def enumerate_models(sig: Signature, size: int):
    """Every structure over ``sig`` with universe {0..size-1}."""
    universe = tuple(range(size))
    rel_choices = []
    for name, arity in sorted(sig.relations.items()):
        tuples = list(itertools.product(universe, repeat=arity))
        rel_choices.append([(name, frozenset(t for t, bit in zip(tuples, bits) if bit))
                            for bits in itertools.product((0, 1), repeat=len(tuples))])
    fun_choices = []
    for name, arity in sorted(sig.functions.items()):
        args = list(itertools.product(universe, repeat=arity))
        fun_choices.append([(name, dict(zip(args, vals)))
                            for vals in itertools.product(universe, repeat=len(args))])
    const_choices = [[(name, a) for a in universe] for name in sorted(sig.constants)]
    for rels in itertools.product(*rel_choices):
        for funs in itertools.product(*fun_choices):
            for consts in itertools.product(*const_choices):
                yield Model(universe, dict(rels), dict(funs), dict(consts), sig)


def enumerate_teams(universe, domain, max_size: int):
    """Every team over ``domain`` with at most ``max_size`` rows, including the empty team."""
    domain = tuple(domain)
    rows = list(itertools.product(universe, repeat=len(domain)))
    for k in range(0, min(max_size, len(rows)) + 1):
        for chosen in itertools.combinations(rows, k):
            yield Team(domain, frozenset(chosen))


def model_sizes(max_universe: int, *formulas, min_size: int = 1):
    low = max(min_size, max_numeral(*formulas) + 1)
    return range(low, max_universe + 1)


def semantically_equivalent(f, g, max_universe: int = 2, max_team: int = 4,
                            signature: Signature | None = None, budget: int | None = None,
                            min_universe: int = 1, engine: str = "sat"):
    """Compare ``f`` and ``g`` on every model up to ``max_universe`` elements
    and every team over their free variables with at most ``max_team`` rows.

    Models too small to interpret a numeral occurring in the formulas are
    skipped.
    """
    sig = signature_of(f, g) if signature is None else signature.merge(signature_of(f, g))
    domain = tuple(sorted(free_variables(f) | free_variables(g)))
    progress = Progress()
    for size in model_sizes(max_universe, f, g, min_size=min_universe):
        progress.largest_universe = size
        for M in enumerate_models(sig, size):
            progress.models += 1
            for X in enumerate_teams(M.universe, domain, max_team):
                if budget is not None and progress.evaluations >= budget:
                    raise BudgetExceeded(progress)
                progress.teams += 1
                progress.evaluations += 1
                a = eval_team(M, X, f, engine)
                b = eval_team(M, X, g, engine)
                if a != b:
                    return Counterexample(M, X, a, b)
    return Equivalent(progress, max_universe, max_team)


def entails(premises, conclusion, max_universe: int = 2, max_team: int = 4,
            signature: Signature | None = None):
    """Search for (M, X) satisfying all premises but not the conclusion."""
    premises = list(premises)
    sig = signature_of(*premises, conclusion)
    if signature is not None:
        sig = signature.merge(sig)
    domain = set(free_variables(conclusion))
    for p in premises:
        domain |= free_variables(p)
    domain = tuple(sorted(domain))
    for size in model_sizes(max_universe, conclusion, *premises):
        for M in enumerate_models(sig, size):
            for X in enumerate_teams(M.universe, domain, max_team):
                if all(eval_team(M, X, p) for p in premises) and not eval_team(M, X, conclusion):
                    return M, X
    return None
