"""Normal form ``∀x̄ ∃ȳ (⋀ u_i ⊥_{w_i} v_i ∧ θ)`` for sentences."""

from __future__ import annotations

from dataclasses import dataclass

from ..syntax import (
    And, Eq, Exists, Forall, FreshNames, Indep, Var, all_variables, conj, conj_spine,
    exists_block, forall_block, free_variables, is_first_order, is_quantifier_free,
    is_sentence, rename_apart, split_prefix, terms_vars,
)
from .atoms import expand_atoms
from .hoist import hoist_block
from .prenex import NotASentence, _prenex, push_negations


@dataclass(frozen=True)
class NormalForm:
    universals: tuple
    existentials: tuple
    atoms: tuple  # Indep nodes over existential variables
    matrix: object

    @property
    def m(self) -> int:
        return len(self.atoms)

    @property
    def r(self) -> int:
        return len(self.universals)

    @property
    def r_prime(self) -> int:
        return len(self.existentials)

    def formula(self):
        body = conj(list(self.atoms) + [self.matrix]) if self.atoms else self.matrix
        return forall_block(self.universals, exists_block(self.existentials, body))

    def problems(self) -> list:
        """Violated invariants, as human-readable strings (empty when valid)."""
        out = []
        names = list(self.universals) + list(self.existentials)
        if len(set(names)) != len(names):
            out.append("a variable is quantified twice")
        ex = set(self.existentials)
        for i, a in enumerate(self.atoms):
            if not isinstance(a, Indep):
                out.append(f"atom {i} is not an independence atom")
                continue
            for t in a.u + a.v + a.w:
                if not (isinstance(t, Var) and t.name in ex):
                    out.append(f"atom {i} mentions a term that is not an existential variable")
                    break
        if not (is_first_order(self.matrix) and is_quantifier_free(self.matrix)):
            out.append("matrix is not quantifier-free first-order")
        if free_variables(self.formula()):
            out.append("normal form is not a sentence")
        return out


def as_normal_form(f) -> NormalForm | None:
    """Read ``f`` as a normal form if it already has that shape."""
    prefix, body = split_prefix(f)
    k = 0
    while k < len(prefix) and prefix[k][0] is Forall:
        k += 1
    if any(q is not Exists for q, _ in prefix[k:]):
        return None
    names = [v for _, v in prefix]
    if len(set(names)) != len(names):
        return None
    ex = {v for _, v in prefix[k:]}
    if is_first_order(body):
        atoms, rest = [], [body]
    else:
        items = conj_spine(body)
        j = 0
        while j < len(items) and isinstance(items[j], Indep):
            j += 1
        atoms, rest = items[:j], items[j:]
        if not rest:
            return None
    for a in atoms:
        if not all(isinstance(t, Var) and t.name in ex for t in a.u + a.v + a.w):
            return None
    if not all(is_first_order(g) and is_quantifier_free(g) for g in rest):
        return None
    nf = NormalForm(tuple(names[:k]), tuple(names[k:]), tuple(atoms), conj(rest))
    return nf if is_sentence(f) else None


def normal_form(f) -> NormalForm:
    if not is_sentence(f):
        raise NotASentence(f"free variables: {sorted(free_variables(f))}")
    ready = as_normal_form(f)
    if ready is not None:
        return ready
    fresh = FreshNames(all_variables(f))
    # Step 0: atom encodings, negations inward, every variable bound once
    g = expand_atoms(f, fresh)
    g = rename_apart(push_negations(g), fresh)
    # Step 1
    prefix, matrix = _prenex(g)
    # Step 2
    block = hoist_block(matrix, fresh)
    # Step 3
    prefix = list(prefix) + [(Forall, v) for v in block.universals] + [(Exists, v) for v in block.existentials]
    atoms = list(block.atoms)
    theta = block.matrix
    # Step 4
    prefix, new_atoms = _swap_blocks(prefix, atoms, theta)
    universals = tuple(v for q, v in prefix if q is Forall)
    existentials = [v for q, v in prefix if q is Exists]
    eqs = []
    uset = set(universals)
    for a in new_atoms:
        mapping = {}
        for name in sorted(terms_vars(a.u + a.v + a.w) & uset):
            mapping[name] = Var(fresh("e"))
            existentials.append(mapping[name].name)
            eqs.append(Eq(mapping[name], Var(name)))
        sub = lambda ts: tuple(mapping.get(t.name, t) for t in ts)
        atoms.append(Indep(sub(a.u), sub(a.v), sub(a.w)))
    if eqs:
        theta = And(theta, conj(eqs))
    return NormalForm(universals, tuple(existentials), tuple(atoms), theta)


def _swap_blocks(prefix, atoms, theta):
    """Move universal blocks in front of existential ones.

    ``∃Ȳ∀X̄ A`` becomes ``∀X̄∃Ȳ(A ∧ Ȳ ⊥_z̄ X̄)`` with z̄ the remaining free
    variables of A.  Returns the new prefix and the added atoms.
    """
    prefix = list(prefix)
    added = []
    while True:
        i = next((i for i in range(len(prefix) - 1)
                  if prefix[i][0] is Exists and prefix[i + 1][0] is Forall), None)
        if i is None:
            return prefix, added
        j = i
        while j > 0 and prefix[j - 1][0] is Exists:
            j -= 1
        k = i + 1
        while k + 1 < len(prefix) and prefix[k + 1][0] is Forall:
            k += 1
        ys = [v for _, v in prefix[j:i + 1]]
        xs = [v for _, v in prefix[i + 1:k + 1]]
        inner = {v for _, v in prefix[k + 1:]}
        used = set(free_variables(theta))
        for a in atoms + added:
            used |= terms_vars(a.u + a.v + a.w)
        zs = sorted(used - inner - set(xs) - set(ys))
        added.append(Indep(tuple(map(Var, ys)), tuple(map(Var, xs)), tuple(map(Var, zs))))
        prefix = prefix[:j] + prefix[i + 1:k + 1] + prefix[j:i + 1] + prefix[k + 1:]
