"""The independence-transmission schema: building and reading its premise
and conclusion.

Level-0 slots are ``x_{0,i} y_{0,i}`` for ``0 <= i <= p``; level-1 slots are
``x_{1,i} y_{1,i}`` for ``-1 <= i <= p'`` with ``p' = p + m(p+2)^2``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..syntax import (
    Bot, Exists, Forall, Inc, Indep, Var, conj, conj_spine, disj, exists_block, forall_block,
    free_variables, is_first_order, is_quantifier_free, rename_free, split_prefix, tuple_eq,
    tuple_neq, variables,
)


def p_prime(p: int, m: int) -> int:
    return p + m * (p + 2) ** 2


@dataclass(frozen=True)
class Rule8Instance:
    x0: tuple      # per level-0 slot i = 0..p: tuple of x names
    y0: tuple      # per level-0 slot: tuple of y names
    atoms: tuple   # Indep over names of y0[0]
    c: object      # quantifier-free FO over x0[0] + y0[0]
    d: object

    @property
    def p(self) -> int:
        return len(self.x0) - 1

    @property
    def m(self) -> int:
        return len(self.atoms)

    def c_at(self, xs, ys):
        return rename_free(self.c, dict(zip(self.x0[0] + self.y0[0], xs + ys)))

    def atom_part(self, tup, ys):
        pos = {n: k for k, n in enumerate(self.y0[0])}
        return tuple(Var(ys[pos[t.name]]) for t in tup)

    def premise(self):
        x0, y0, p = self.x0, self.y0, self.p
        items = list(self.atoms)
        items += [Inc(variables(x0[i] + y0[i]), variables(x0[0] + y0[0])) for i in range(1, p + 1)]
        items += [self.c_at(x0[i], y0[i]) for i in range(p + 1)]
        items.append(self.d)
        return self._outer(conj(items))

    def _outer(self, body):
        ex = list(self.y0[0])
        for i in range(1, self.p + 1):
            ex += list(self.x0[i]) + list(self.y0[i])
        return forall_block(self.x0[0], exists_block(ex, body))

    def inner_items(self, x1, y1):
        """Conjuncts of the level-1 body; ``x1``/``y1`` map slot index
        (-1..p') to name tuples."""
        p, pp = self.p, p_prime(self.p, self.m)
        xy = lambda i: variables(x1[i] + y1[i])
        atoms = [Indep(self.atom_part(a.u, y1[-1]), self.atom_part(a.v, y1[-1]),
                       self.atom_part(a.w, y1[-1])) for a in self.atoms]
        incs = [Inc(xy(i), xy(-1)) for i in range(0, pp + 1)]
        cs = [self.c_at(x1[i], y1[i]) for i in range(-1, pp + 1)]
        eqs = [tuple_eq(xy(i), variables(self.x0[i] + self.y0[i])) for i in range(0, p + 1)]
        triples = []
        for a in self.atoms:
            for j in range(-1, p + 1):
                for k in range(-1, p + 1):
                    e = tuple_neq(self.atom_part(a.w, y1[j]), self.atom_part(a.w, y1[k])) if a.w else Bot()
                    left = self.atom_part(a.u, y1[j]) + self.atom_part(a.v, y1[k]) + self.atom_part(a.w, y1[j])
                    wits = [tuple_eq(left, self.atom_part(a.u, y1[l]) + self.atom_part(a.v, y1[l])
                                     + self.atom_part(a.w, y1[l])) for l in range(p + 1, pp + 1)]
                    triples.append(disj([e] + wits))
        return {"atoms": atoms, "inclusions": incs, "copies": cs, "equalities": eqs, "triples": triples}

    def inner(self, x1, y1):
        items = self.inner_items(x1, y1)
        body = conj(items["atoms"] + items["inclusions"] + items["copies"] + items["equalities"]
                    + items["triples"])
        pp = p_prime(self.p, self.m)
        ex = list(y1[-1])
        for i in range(0, pp + 1):
            ex += list(x1[i]) + list(y1[i])
        return forall_block(x1[-1], exists_block(ex, body))

    def conclusion(self, x1, y1):
        cs = [self.c_at(self.x0[i], self.y0[i]) for i in range(self.p + 1)]
        return self._outer(conj(cs + [self.d, self.inner(x1, y1)]))

    def level1_names(self, prefix: str = "_vt"):
        r, rp = len(self.x0[0]), len(self.y0[0])
        pp = p_prime(self.p, self.m)
        x1 = {i: tuple(f"{prefix}x{i + 1}_{c}" for c in range(r)) for i in range(-1, pp + 1)}
        y1 = {i: tuple(f"{prefix}y{i + 1}_{c}" for c in range(rp)) for i in range(-1, pp + 1)}
        return x1, y1


class Rule8Mismatch(ValueError):
    def __init__(self, field, message):
        self.field = field
        super().__init__(message)


def read_premise(f) -> Rule8Instance:
    """Infer r, r', p, m and the pieces of a premise of shape A."""
    prefix, body = split_prefix(f)
    r = 0
    while r < len(prefix) and prefix[r][0] is Forall:
        r += 1
    if r == 0:
        raise Rule8Mismatch("prefix", "premise must start with a universal block")
    rest = prefix[r:]
    if any(q is not Exists for q, _ in rest):
        raise Rule8Mismatch("prefix", "premise prefix must be universal then existential")
    items = conj_spine(body)
    m = 0
    while m < len(items) and isinstance(items[m], Indep):
        m += 1
    if m == 0:
        raise Rule8Mismatch("atoms", "premise needs at least one independence atom")
    p = 0
    while m + p < len(items) and isinstance(items[m + p], Inc):
        p += 1
    n_ex = len(rest)
    if p:
        width = len(items[m].left)
        rp = width - r
    else:
        rp = n_ex
    if rp < 0 or n_ex != rp + p * (r + rp):
        raise Rule8Mismatch("prefix", "existential block does not match the inclusion conjuncts")
    names = [v for _, v in prefix]
    x0 = [tuple(names[:r])]
    y0 = [tuple(names[r:r + rp])]
    pos = r + rp
    for _ in range(p):
        x0.append(tuple(names[pos:pos + r]))
        y0.append(tuple(names[pos + r:pos + r + rp]))
        pos += r + rp
    tail = items[m + p:]
    if len(tail) != p + 2:
        raise Rule8Mismatch("copies", f"expected {p + 1} matrix copies and D, found {len(tail)} conjuncts")
    c, d = tail[0], tail[-1]
    inst = Rule8Instance(tuple(x0), tuple(y0), tuple(items[:m]), c, d)
    if len(set(names)) != len(names):
        raise Rule8Mismatch("prefix", "a variable is quantified twice")
    if not (is_first_order(c) and is_quantifier_free(c)):
        raise Rule8Mismatch("matrix", "C must be quantifier-free first-order")
    if not free_variables(c) <= set(x0[0] + y0[0]):
        raise Rule8Mismatch("matrix", "C may only use variables of the first slot")
    for k, a in enumerate(inst.atoms):
        if not all(isinstance(t, Var) and t.name in y0[0] for t in a.u + a.v + a.w):
            raise Rule8Mismatch("atoms", f"atom {k} must use variables of the first y-slot only")
    for i in range(1, p + 1):
        want = Inc(variables(x0[i] + y0[i]), variables(x0[0] + y0[0]))
        if items[m + i - 1] != want:
            raise Rule8Mismatch("inclusions", f"inclusion {i} does not match its slot")
    for i in range(p + 1):
        if tail[i] != inst.c_at(x0[i], y0[i]):
            raise Rule8Mismatch("copies", f"copy {i} of C does not match its slot")
    if free_variables(d) & set(names):
        raise Rule8Mismatch("D", "slot variables occur free in D")
    return inst


def read_level1_names(inst: Rule8Instance, inner):
    """Slot names of the level-1 block from the conclusion's inner prefix."""
    r, rp = len(inst.x0[0]), len(inst.y0[0])
    pp = p_prime(inst.p, inst.m)
    prefix, _ = split_prefix(inner)
    expected = r + rp + (pp + 1) * (r + rp)
    kinds = [q for q, _ in prefix]
    if len(prefix) != expected or kinds[:r] != [Forall] * r or any(q is not Exists for q in kinds[r:expected]):
        raise Rule8Mismatch("inner prefix", f"expected ∀ block of {r} and ∃ block of {expected - r} variables")
    names = [v for _, v in prefix]
    x1 = {-1: tuple(names[:r])}
    y1 = {-1: tuple(names[r:r + rp])}
    pos = r + rp
    for i in range(0, pp + 1):
        x1[i] = tuple(names[pos:pos + r])
        y1[i] = tuple(names[pos + r:pos + r + rp])
        pos += r + rp
    return x1, y1


def check_conclusion(inst: Rule8Instance, concl):
    """Raise :class:`Rule8Mismatch` naming the first differing field."""
    prefix, body = split_prefix(concl)
    want_prefix, _ = split_prefix(inst.premise())
    if prefix[:len(want_prefix)] != want_prefix:
        raise Rule8Mismatch("outer prefix", "conclusion must repeat the premise's quantifier prefix")
    body = concl
    for _ in want_prefix:
        body = body.body
    if not hasattr(body, "right"):
        raise Rule8Mismatch("outer conjuncts", "conclusion body is not a conjunction")
    inner = body.right
    x1, y1 = read_level1_names(inst, inner)
    outer_names = set(v for _, v in want_prefix)
    level1 = [v for t in list(x1.values()) + list(y1.values()) for v in t]
    if len(set(level1)) != len(level1) or set(level1) & (outer_names | free_variables(inst.d)):
        raise Rule8Mismatch("freshness", "level-1 variables must be new and quantified once")
    cs = [inst.c_at(inst.x0[i], inst.y0[i]) for i in range(inst.p + 1)]
    if body != conj(cs + [inst.d, inner]):
        raise Rule8Mismatch("outer conjuncts", "outer body must be the copies of C, then D, then the level-1 block")
    _, inner_body = split_prefix(inner)
    got = conj_spine(inner_body)
    want = inst.inner_items(x1, y1)
    pos = 0
    for fieldname in ("atoms", "inclusions", "copies", "equalities", "triples"):
        seg = want[fieldname]
        if got[pos:pos + len(seg)] != seg:
            raise Rule8Mismatch(fieldname, f"level-1 {fieldname} do not match the schema")
        pos += len(seg)
    if pos != len(got):
        raise Rule8Mismatch("triples", "extra conjuncts after the triples")
