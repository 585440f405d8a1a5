"""Moving independence atoms out of a quantifier-free matrix.

The result of :func:`hoist_atoms` has the shape
``∀U ∃E (a_1 ∧ … ∧ a_m ∧ θ*)`` where every ``a_i`` is an independence atom
over variables of ``E`` and ``θ*`` is first-order and quantifier-free.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..syntax import (
    And, Dep, Eq, Exists, FreshNames, Indep, Not, Or, Var, all_variables, conj, conj_spine,
    exists_block, forall_block, free_variables, is_first_order, is_quantifier_free,
    split_prefix, terms_vars, tuple_eq,
)
from .prenex import guard_atom


class ShapeMismatch(ValueError):
    pass


@dataclass
class Block:
    universals: list = field(default_factory=list)
    existentials: list = field(default_factory=list)
    atoms: list = field(default_factory=list)
    matrix: object = None

    def free(self) -> frozenset:
        names = set(terms_vars(t for a in self.atoms for t in a.u + a.v + a.w))
        names |= free_variables(self.matrix)
        return frozenset(names - set(self.universals) - set(self.existentials))

    def core(self):
        """``∃E(atoms ∧ θ)`` without the universal prefix."""
        return exists_block(self.existentials, conj(self.atoms + [self.matrix]))

    def formula(self):
        return forall_block(self.universals, self.core())


def _rehouse(atom: Indep, fresh: FreshNames, hint: str = "y"):
    """``∃ȳ(atom[ȳ/terms] ∧ ȳ = terms)``, one fresh variable per position."""
    terms = atom.u + atom.v + atom.w
    names = fresh.many(len(terms), hint)
    ys = tuple(Var(n) for n in names)
    a, b = len(atom.u), len(atom.u) + len(atom.v)
    new_atom = Indep(ys[:a], ys[a:b], ys[b:])
    return Block([], list(names), [new_atom], tuple_eq(ys, terms))


def hoist_block(theta, fresh: FreshNames | None = None) -> Block:
    if not is_quantifier_free(theta):
        raise ValueError("hoist_atoms needs a quantifier-free formula")
    if fresh is None:
        fresh = FreshNames(all_variables(theta))
    return _hoist(theta, fresh)


def hoist_atoms(theta, fresh: FreshNames | None = None):
    return hoist_block(theta, fresh).formula()


def _hoist(f, fresh) -> Block:
    if is_first_order(f):
        return Block([], [], [], f)
    if isinstance(f, Dep):
        f = Indep((f.args[-1],), (f.args[-1],), f.args[:-1])
    if isinstance(f, Indep):
        return _rehouse(f, fresh)
    if isinstance(f, And):
        a, b = _hoist(f.left, fresh), _hoist(f.right, fresh)
        return Block(a.universals + b.universals, a.existentials + b.existentials,
                     a.atoms + b.atoms, And(a.matrix, b.matrix))
    if isinstance(f, Or):
        return _hoist_or(_hoist(f.left, fresh), _hoist(f.right, fresh), fresh)
    raise ValueError(f"unsupported formula in matrix: {type(f).__name__}")


def _guard_into(block: Block, x: str, others, fresh) -> Block:
    # x ⊥ ȳ conjoined to the core, re-housed as ∃a∃b̄(a ⊥ b̄ ∧ a b̄ = x ȳ)
    g = _rehouse(guard_atom(x, others), fresh)
    return Block(block.universals, block.existentials + g.existentials,
                 block.atoms + g.atoms, And(block.matrix, g.matrix))


def _hoist_or(a: Block, b: Block, fresh) -> Block:
    pulled = []
    while a.universals:
        x = a.universals[0]
        rest = Block(a.universals[1:], a.existentials, a.atoms, a.matrix)
        others = (rest.free() | b.free()) - {x}
        pulled.append(x)
        a = _guard_into(rest, x, others, fresh)
    while b.universals:
        x = b.universals[0]
        rest = Block(b.universals[1:], b.existentials, b.atoms, b.matrix)
        others = (rest.free() | a.free()) - {x}
        pulled.append(x)
        b = _guard_into(rest, x, others, fresh)
    e = rule6_parts(a.existentials, a.atoms, a.matrix, b.existentials, b.atoms, b.matrix, fresh)
    atoms = [x if isinstance(x, Indep) else Indep(x.args, x.args, ()) for x in e.atoms]
    return Block(pulled + e.universals, e.existentials, atoms, e.matrix)


# ---------------------------------------------------------------------------
# The distribution construction


def rule6_parts(x0, atoms0, c, x1, atoms1, d, fresh: FreshNames) -> Block:
    """Components of the formula E built from the disjuncts
    ``∃x0(atoms0 ∧ C)`` and ``∃x1(atoms1 ∧ D)``.

    The two ``dep(z_i)`` atoms are returned as :class:`Dep` nodes.
    """
    alpha, beta = fresh("a"), fresh("b")
    z0, z1, r = fresh("z"), fresh("z"), fresh("r")
    R, Z0, Z1 = Var(r), Var(z0), Var(z1)
    atoms = [Indep(a.u, a.v, a.w + (R,)) for a in list(atoms0) + list(atoms1)]
    atoms += [Dep((Z0,)), Dep((Z1,))]
    matrix = And(Or(Not(Eq(Z0, Z1)), Eq(Var(alpha), Var(beta))),
                 Or(And(c, Eq(R, Z0)), And(d, Eq(R, Z1))))
    return Block([alpha, beta], list(x0) + list(x1) + [z0, z1, r], atoms, matrix)


def disjunct_shapes(f):
    """All readings of ``f`` as ``∃x̄(u_1 ⊥_{w_1} v_1 ∧ … ∧ u_m ⊥_{w_m} v_m ∧ C)``.

    Each reading is ``(x̄, atoms, C)``.  Readings are produced from the longest
    existential prefix to the shortest; the first deviation is raised as
    :class:`ShapeMismatch` when no reading exists.
    """
    prefix, _ = split_prefix(f)
    n = 0
    while n < len(prefix) and prefix[n][0] is Exists:
        n += 1
    readings, first_error = [], None
    for k in range(n, -1, -1):
        body = f
        for _ in range(k):
            body = body.body
        xs = tuple(v for _, v in prefix[:k])
        try:
            readings.append((xs,) + _split_body(body, xs))
        except ShapeMismatch as exc:
            first_error = first_error or exc
    if not readings:
        raise first_error
    return readings


def _split_body(body, xs):
    if is_first_order(body):
        return [], body
    items = conj_spine(body)
    k = 0
    while k < len(items) and isinstance(items[k], Indep):
        k += 1
    atoms, rest = items[:k], items[k:]
    if not rest:
        raise ShapeMismatch("body has no first-order conjunct after the atoms")
    for i, g in enumerate(rest):
        if not is_first_order(g):
            kind = "independence atom" if isinstance(g, Indep) else "non-first-order formula"
            raise ShapeMismatch(f"conjunct {k + i} is a {kind} after the first-order part")
    for i, a in enumerate(atoms):
        for t in a.u + a.v + a.w:
            if not (isinstance(t, Var) and t.name in xs):
                raise ShapeMismatch(f"atom {i} uses a term outside the quantified tuple")
    return list(atoms), conj(rest)


def match_disjuncts(a, b):
    """First pair of readings of ``a`` and ``b`` satisfying the variable
    side conditions (x0 absent from B, x1 absent from A)."""
    ra, rb = disjunct_shapes(a), disjunct_shapes(b)
    problem = None
    for x0, atoms0, c in ra:
        for x1, atoms1, d in rb:
            if set(x0) & set(x1):
                problem = problem or ShapeMismatch("quantified tuples of A and B overlap")
                continue
            clash = set(x0) & all_variables(b)
            if clash:
                problem = problem or ShapeMismatch(f"variable {sorted(clash)[0]} of x0 occurs in B")
                continue
            clash = set(x1) & all_variables(a)
            if clash:
                problem = problem or ShapeMismatch(f"variable {sorted(clash)[0]} of x1 occurs in A")
                continue
            return (x0, atoms0, c), (x1, atoms1, d)
    raise problem


def distribute(a, b, fresh: FreshNames | None = None):
    """Rewrite ``A ∨ B`` into the single-block formula E."""
    (x0, atoms0, c), (x1, atoms1, d) = match_disjuncts(a, b)
    if fresh is None:
        fresh = FreshNames(all_variables(Or(a, b)))
    parts = rule6_parts(x0, atoms0, c, x1, atoms1, d, fresh)
    return build_distribution(parts)


def build_distribution(parts: Block):
    """``∀α∀β∃x0∃x1∃z0∃z1∃r[atoms ∧ dep(z0) ∧ dep(z1) ∧ guard ∧ choice]``."""
    guard, choice = parts.matrix.left, parts.matrix.right
    body = conj(parts.atoms + [guard, choice])
    return forall_block(parts.universals, exists_block(parts.existentials, body))
