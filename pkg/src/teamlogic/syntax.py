"""Terms, formulas and signatures of independence logic.

Formulas are immutable trees of frozen dataclasses.  Dependence, inclusion
and exclusion atoms are primitive nodes; their independence-logic encodings
live in :mod:`teamlogic.transforms.atoms`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

RESERVED_PREFIX = "_v"


class CaptureError(ValueError):
    """A substitution would bind a variable of the substituted term."""


class NonInjectiveError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    """A constant symbol, or a numeral naming a universe element."""

    name: str

    @property
    def is_numeral(self) -> bool:
        return self.name.isdigit()


@dataclass(frozen=True)
class Func:
    name: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


Term = Union[Var, Const, Func]


def term_vars(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Const):
        return frozenset()
    return frozenset().union(*(term_vars(a) for a in t.args))


def terms_vars(ts: Iterable[Term]) -> frozenset:
    return frozenset().union(*(term_vars(t) for t in ts))


def subst_term(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Const):
        return t
    return Func(t.name, tuple(subst_term(a, mapping) for a in t.args))


def variables(names: Iterable[str]) -> tuple:
    """Shorthand: ``variables("xy")`` or ``variables(["x", "y"])`` -> tuple of Var."""
    return tuple(Var(n) for n in names)


# ---------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True)
class Rel:
    name: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Indep:
    """``u ⊥_w v``: any two rows agreeing on ``w`` are combined by a third row."""

    u: tuple
    v: tuple
    w: tuple = ()

    def __post_init__(self):
        for name in ("u", "v", "w"):
            object.__setattr__(self, name, tuple(getattr(self, name)))


@dataclass(frozen=True)
class Dep:
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Inc:
    left: tuple
    right: tuple

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))


@dataclass(frozen=True)
class Exc:
    left: tuple
    right: tuple

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))


Formula = Union[Rel, Eq, Top, Bot, Not, And, Or, Exists, Forall, Indep, Dep, Inc, Exc]

TEAM_ATOMS = (Indep, Dep, Inc, Exc)
ATOMIC = (Rel, Eq, Top, Bot, Indep, Dep, Inc, Exc)
QUANTIFIERS = (Exists, Forall)


def atom_terms(f) -> tuple:
    """All terms occurring in an atomic formula, in order."""
    if isinstance(f, Rel):
        return f.args
    if isinstance(f, Eq):
        return (f.left, f.right)
    if isinstance(f, Indep):
        return f.u + f.v + f.w
    if isinstance(f, Dep):
        return f.args
    if isinstance(f, (Inc, Exc)):
        return f.left + f.right
    return ()


def map_atom_terms(f, fn):
    if isinstance(f, Rel):
        return Rel(f.name, tuple(fn(t) for t in f.args))
    if isinstance(f, Eq):
        return Eq(fn(f.left), fn(f.right))
    if isinstance(f, Indep):
        return Indep(tuple(map(fn, f.u)), tuple(map(fn, f.v)), tuple(map(fn, f.w)))
    if isinstance(f, Dep):
        return Dep(tuple(map(fn, f.args)))
    if isinstance(f, Inc):
        return Inc(tuple(map(fn, f.left)), tuple(map(fn, f.right)))
    if isinstance(f, Exc):
        return Exc(tuple(map(fn, f.left)), tuple(map(fn, f.right)))
    return f


def is_first_order(f) -> bool:
    if isinstance(f, TEAM_ATOMS):
        return False
    if isinstance(f, (Rel, Eq, Top, Bot)):
        return True
    if isinstance(f, Not):
        return is_first_order(f.body)
    if isinstance(f, (And, Or)):
        return is_first_order(f.left) and is_first_order(f.right)
    return is_first_order(f.body)


def is_quantifier_free(f) -> bool:
    if isinstance(f, QUANTIFIERS):
        return False
    if isinstance(f, Not):
        return is_quantifier_free(f.body)
    if isinstance(f, (And, Or)):
        return is_quantifier_free(f.left) and is_quantifier_free(f.right)
    return True


def free_variables(f) -> frozenset:
    if isinstance(f, ATOMIC):
        return terms_vars(atom_terms(f))
    if isinstance(f, Not):
        return free_variables(f.body)
    if isinstance(f, (And, Or)):
        return free_variables(f.left) | free_variables(f.right)
    return free_variables(f.body) - {f.var}


def is_sentence(f) -> bool:
    return not free_variables(f)


def all_variables(f) -> frozenset:
    """Every variable name occurring in ``f``, free or bound."""
    if isinstance(f, ATOMIC):
        return terms_vars(atom_terms(f))
    if isinstance(f, Not):
        return all_variables(f.body)
    if isinstance(f, (And, Or)):
        return all_variables(f.left) | all_variables(f.right)
    return all_variables(f.body) | {f.var}


def bound_variables(f) -> list:
    """Quantified variables in pre-order, with repetitions."""
    if isinstance(f, QUANTIFIERS):
        return [f.var] + bound_variables(f.body)
    if isinstance(f, Not):
        return bound_variables(f.body)
    if isinstance(f, (And, Or)):
        return bound_variables(f.left) + bound_variables(f.right)
    return []


def subformulas(f):
    yield f
    if isinstance(f, Not) or isinstance(f, QUANTIFIERS):
        yield from subformulas(f.body)
    elif isinstance(f, (And, Or)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def formula_size(f) -> int:
    return sum(1 for _ in subformulas(f))


# ---------------------------------------------------------------------------
# Substitution and renaming


def substitute_many(f, mapping: Mapping[str, Term]):
    """Simultaneous capture-checked substitution of free variables.

    Raises CaptureError rather than renaming bound variables.
    """
    mapping = {k: v for k, v in mapping.items() if v != Var(k)}
    if not mapping:
        return f
    return _subst(f, mapping, frozenset())


def _subst(f, mapping, bound):
    if isinstance(f, ATOMIC):
        def fn(t):
            hit = term_vars(t) & mapping.keys()
            for name in hit:
                if name in bound:
                    continue
                clash = term_vars(mapping[name]) & bound
                if clash:
                    raise CaptureError(
                        f"substituting for {name} would capture {sorted(clash)}")
            active = {k: v for k, v in mapping.items() if k not in bound}
            return subst_term(t, active)
        return map_atom_terms(f, fn)
    if isinstance(f, Not):
        return Not(_subst(f.body, mapping, bound))
    if isinstance(f, (And, Or)):
        return type(f)(_subst(f.left, mapping, bound), _subst(f.right, mapping, bound))
    return type(f)(f.var, _subst(f.body, mapping, bound | {f.var}))


def substitute(f, t: Term, x: str):
    """``f(t/x)``: replace free occurrences of ``x`` by ``t``."""
    return substitute_many(f, {x: t})


def rename_free(f, mapping: Mapping[str, str]):
    """Simultaneously rename free variables of ``f``.

    The renaming (extended by the identity outside ``mapping``) must be
    injective on the free variables.
    """
    fv = free_variables(f)
    images = {}
    for x in fv:
        y = mapping.get(x, x)
        if y in images and images[y] != x:
            raise NonInjectiveError(f"{images[y]} and {x} both map to {y}")
        images[y] = x
    return substitute_many(f, {x: Var(y) for x, y in mapping.items() if x in fv})


# ---------------------------------------------------------------------------
# Alpha equivalence and renaming apart


def alpha_equal(f, g) -> bool:
    return _alpha(f, g, {}, {}, 0)


def _alpha_term(s, t, env_f, env_g) -> bool:
    if isinstance(s, Var) and isinstance(t, Var):
        bf, bg = env_f.get(s.name), env_g.get(t.name)
        if bf is None and bg is None:
            return s.name == t.name
        return bf == bg
    if type(s) is not type(t):
        return False
    if isinstance(s, Const):
        return s.name == t.name
    return (s.name == t.name and len(s.args) == len(t.args)
            and all(_alpha_term(a, b, env_f, env_g) for a, b in zip(s.args, t.args)))


def _alpha_terms(ss, ts, env_f, env_g) -> bool:
    return len(ss) == len(ts) and all(_alpha_term(a, b, env_f, env_g) for a, b in zip(ss, ts))


def _alpha(f, g, env_f, env_g, depth) -> bool:
    if type(f) is not type(g):
        return False
    if isinstance(f, (Top, Bot)):
        return True
    if isinstance(f, Rel):
        return f.name == g.name and _alpha_terms(f.args, g.args, env_f, env_g)
    if isinstance(f, Eq):
        return _alpha_terms((f.left, f.right), (g.left, g.right), env_f, env_g)
    if isinstance(f, Indep):
        return (_alpha_terms(f.u, g.u, env_f, env_g) and _alpha_terms(f.v, g.v, env_f, env_g)
                and _alpha_terms(f.w, g.w, env_f, env_g))
    if isinstance(f, Dep):
        return _alpha_terms(f.args, g.args, env_f, env_g)
    if isinstance(f, (Inc, Exc)):
        return (_alpha_terms(f.left, g.left, env_f, env_g)
                and _alpha_terms(f.right, g.right, env_f, env_g))
    if isinstance(f, Not):
        return _alpha(f.body, g.body, env_f, env_g, depth)
    if isinstance(f, (And, Or)):
        return (_alpha(f.left, g.left, env_f, env_g, depth)
                and _alpha(f.right, g.right, env_f, env_g, depth))
    return _alpha(f.body, g.body, {**env_f, f.var: depth}, {**env_g, g.var: depth}, depth + 1)


class FreshNames:
    """Generator of variable names outside a given set.

    Names carry the reserved prefix, so they cannot clash with parsed user
    input; the avoid-set additionally guards against previously generated
    names that were fed back in.
    """

    def __init__(self, avoid: Iterable[str] = ()):
        self.used = set(avoid)
        self._counter = itertools.count(1)

    def avoid(self, names: Iterable[str]) -> None:
        self.used.update(names)

    def __call__(self, hint: str = "") -> str:
        while True:
            name = f"{RESERVED_PREFIX}{hint}{next(self._counter)}"
            if name not in self.used:
                self.used.add(name)
                return name

    def many(self, k: int, hint: str = "") -> tuple:
        return tuple(self(hint) for _ in range(k))


def rename_apart(f, fresh: FreshNames | None = None, avoid: Iterable[str] = ()):
    """Alpha-rename so that each variable is quantified once and no
    variable occurs both free and bound (or is bound and in ``avoid``).
    Variables that already satisfy this keep their names."""
    avoid = set(avoid)
    if fresh is None:
        fresh = FreshNames(all_variables(f) | avoid)
    else:
        fresh.avoid(avoid | all_variables(f))
    taken = set(free_variables(f)) | avoid
    return _rename_apart(f, {}, taken, fresh)


def _rename_apart(f, env, taken, fresh):
    if isinstance(f, ATOMIC):
        return map_atom_terms(f, lambda t: subst_term(t, env)) if env else f
    if isinstance(f, Not):
        return Not(_rename_apart(f.body, env, taken, fresh))
    if isinstance(f, (And, Or)):
        left = _rename_apart(f.left, env, taken, fresh)
        right = _rename_apart(f.right, env, taken, fresh)
        return type(f)(left, right)
    var = f.var
    if var in taken:
        var = fresh()
    taken.add(var)
    inner = {**env, f.var: Var(var)} if var != f.var else {k: v for k, v in env.items() if k != f.var}
    return type(f)(var, _rename_apart(f.body, inner, taken, fresh))


# ---------------------------------------------------------------------------
# Builders


def conj(items: Sequence) -> Formula:
    """Left-folded conjunction; the empty conjunction is ``Top``."""
    items = list(items)
    if not items:
        return Top()
    out = items[0]
    for it in items[1:]:
        out = And(out, it)
    return out


def disj(items: Sequence) -> Formula:
    items = list(items)
    if not items:
        return Bot()
    out = items[0]
    for it in items[1:]:
        out = Or(out, it)
    return out


def conj_spine(f) -> list:
    """Inverse of :func:`conj` when the first conjunct is not itself a conjunction."""
    out = []
    while isinstance(f, And):
        out.append(f.right)
        f = f.left
    out.append(f)
    return out[::-1]


def tuple_eq(a: Sequence[Term], b: Sequence[Term]) -> Formula:
    if len(a) != len(b):
        raise ValueError("tuple equality needs equal lengths")
    return conj([Eq(s, t) for s, t in zip(a, b)])


def tuple_neq(a: Sequence[Term], b: Sequence[Term]) -> Formula:
    if len(a) != len(b):
        raise ValueError("tuple equality needs equal lengths")
    return disj([Not(Eq(s, t)) for s, t in zip(a, b)])


def forall_block(names: Sequence[str], body) -> Formula:
    for n in reversed(list(names)):
        body = Forall(n, body)
    return body


def exists_block(names: Sequence[str], body) -> Formula:
    for n in reversed(list(names)):
        body = Exists(n, body)
    return body


def split_prefix(f) -> tuple:
    """Return ``([(quantifier class, var), ...], matrix)``."""
    prefix = []
    while isinstance(f, QUANTIFIERS):
        prefix.append((type(f), f.var))
        f = f.body
    return prefix, f


def attach_prefix(prefix, body) -> Formula:
    for q, v in reversed(prefix):
        body = q(v, body)
    return body


# ---------------------------------------------------------------------------
# Signatures and well-formedness


@dataclass(frozen=True)
class Signature:
    relations: Mapping[str, int] = field(default_factory=dict)
    functions: Mapping[str, int] = field(default_factory=dict)
    constants: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "relations", dict(self.relations))
        object.__setattr__(self, "functions", dict(self.functions))
        object.__setattr__(self, "constants", frozenset(self.constants))
        names = list(self.relations) + list(self.functions) + list(self.constants)
        dupes = {n for n in names if names.count(n) > 1}
        if dupes:
            raise ValueError(f"symbol names used for several kinds: {sorted(dupes)}")
        for kind, table in (("relation", self.relations), ("function", self.functions)):
            for name, arity in table.items():
                if arity < 1:
                    raise ValueError(f"{kind} {name} needs arity >= 1, got {arity}")

    def __hash__(self):
        return hash((tuple(sorted(self.relations.items())),
                     tuple(sorted(self.functions.items())), self.constants))

    def merge(self, other: "Signature") -> "Signature":
        return Signature({**self.relations, **other.relations},
                         {**self.functions, **other.functions},
                         self.constants | other.constants)


def signature_of(*formulas) -> Signature:
    """The smallest signature containing every symbol used in ``formulas``."""
    rels, funcs, consts = {}, {}, set()

    def visit_term(t):
        if isinstance(t, Const) and not t.is_numeral:
            consts.add(t.name)
        elif isinstance(t, Func):
            funcs[t.name] = len(t.args)
            for a in t.args:
                visit_term(a)

    for f in formulas:
        for g in subformulas(f):
            if isinstance(g, Rel):
                rels[g.name] = len(g.args)
            for t in atom_terms(g):
                visit_term(t)
    return Signature(rels, funcs, consts)


@dataclass(frozen=True)
class Diagnostic:
    message: str
    path: tuple = ()

    def __str__(self):
        where = ".".join(map(str, self.path)) or "root"
        return f"{self.message} (at {where})"


def check_well_formed(f, sig: Signature | None = None) -> Diagnostic | None:
    """First well-formedness violation in ``f``, or None."""
    return _wf(f, sig, ())


def well_formed(f, sig: Signature | None = None) -> bool:
    return check_well_formed(f, sig) is None


def _wf_term(t, sig, path):
    if isinstance(t, Var):
        return None
    if isinstance(t, Const):
        if sig is not None and not t.is_numeral and t.name not in sig.constants:
            return Diagnostic(f"unknown constant {t.name}", path)
        return None
    if sig is not None:
        if t.name not in sig.functions:
            return Diagnostic(f"unknown function symbol {t.name}", path)
        if sig.functions[t.name] != len(t.args):
            return Diagnostic(
                f"arity mismatch for {t.name}: expected {sig.functions[t.name]}, got {len(t.args)}",
                path)
    for a in t.args:
        d = _wf_term(a, sig, path)
        if d:
            return d
    return None


def _wf(f, sig, path):
    if isinstance(f, ATOMIC):
        if isinstance(f, Rel) and sig is not None:
            if f.name not in sig.relations:
                return Diagnostic(f"unknown relation symbol {f.name}", path)
            if sig.relations[f.name] != len(f.args):
                return Diagnostic(
                    f"arity mismatch for {f.name}: expected {sig.relations[f.name]}, got {len(f.args)}",
                    path)
        if isinstance(f, (Inc, Exc)) and len(f.left) != len(f.right):
            return Diagnostic("unequal tuple lengths", path)
        if isinstance(f, Dep) and not f.args:
            return Diagnostic("dependence atom needs at least one term", path)
        for t in atom_terms(f):
            d = _wf_term(t, sig, path)
            if d:
                return d
        return None
    if isinstance(f, Not):
        if not is_first_order(f.body):
            return Diagnostic("negation of non-first-order body", path)
        return _wf(f.body, sig, path + (0,))
    if isinstance(f, (And, Or)):
        return _wf(f.left, sig, path + (0,)) or _wf(f.right, sig, path + (1,))
    return _wf(f.body, sig, path + (0,))
