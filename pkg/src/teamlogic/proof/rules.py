"""The rule catalog and the per-rule schema and side-condition checks.

Each check receives the node, the conclusions of its premises and a context
giving access to the open assumptions of each premise subtree.  A failed
check raises :class:`Rejection`.
"""

from __future__ import annotations

from ..syntax import (
    And, CaptureError, Eq, Exists, Forall, Indep, Not, Or, Var, all_variables,
    alpha_equal, free_variables, is_first_order, split_prefix, subst_term, substitute,
    )
from ..transforms.hoist import ShapeMismatch, build_distribution, disjunct_shapes, rule6_parts
from . import rule8

FIGURE_RULES = (
    "and-intro", "and-elim-left", "and-elim-right", "or-intro-left", "or-intro-right",
    "or-elim", "neg-intro", "neg-elim", "forall-intro", "forall-elim", "exists-intro",
    "exists-elim",
)
EXTRA_RULES = (
    "disj-subst", "disj-comm", "disj-assoc", "scope-forall", "scope-exists", "univ-subst",
    "indep-distribution", "indep-introduction", "indep-transmission", "identity-axiom",
    "identity-symmetry", "identity-term", "identity-formula",
)
CATALOG = FIGURE_RULES + EXTRA_RULES

# premise index receiving each discharged hypothesis, in discharge order
_DISCHARGES = {
    "or-elim": (1, 2),
    "neg-intro": (0,),
    "exists-elim": (1,),
    "disj-subst": (1,),
    "univ-subst": (1,),
}

_ARITY = {
    "and-intro": 2, "or-elim": 3, "exists-elim": 2, "disj-subst": 2, "univ-subst": 2,
    "identity-axiom": 0,
}


def discharge_slots(rule: str) -> tuple:
    return _DISCHARGES.get(rule, ())


def arity(rule: str) -> int:
    return _ARITY.get(rule, 1)


class Rejection(Exception):
    def __init__(self, code: str, message: str, rule: str | None = None, field: str | None = None):
        self.code = code
        self.rule = rule
        self.field = field
        super().__init__(message)

    @property
    def label(self) -> str:
        if self.code == "SHAPE_MISMATCH":
            return f"SHAPE_MISMATCH({self.rule}, {self.field})"
        return self.code


def _shape(rule, field, message):
    return Rejection("SHAPE_MISMATCH", message, rule, field)


def _expect(cond, rule, field, message):
    if not cond:
        raise _shape(rule, field, message)


def _fo(rule, *formulas):
    for f in formulas:
        if not is_first_order(f):
            raise Rejection("COND2_VIOLATION", f"{rule} needs first-order formulas", rule)


def match_instance(pattern, x: str, instance):
    """Find a term t with ``pattern(t/x) == instance``; ``None`` if there is
    none.  Returns ``Var(x)`` when x does not occur free in ``pattern``."""
    found = {}

    def term(p, t):
        if p == Var(x):
            if "t" in found:
                return found["t"] == t
            found["t"] = t
            return True
        if type(p) is not type(t):
            return False
        if hasattr(p, "args"):
            return p.name == t.name and len(p.args) == len(t.args) and \
                all(term(a, b) for a, b in zip(p.args, t.args))
        return p == t

    def terms(ps, ts):
        return len(ps) == len(ts) and all(term(a, b) for a, b in zip(ps, ts))

    def walk(p, f, bound):
        if type(p) is not type(f):
            return False
        if isinstance(p, (Exists, Forall)):
            if p.var != f.var:
                return False
            if p.var == x:
                return p == f
            return walk(p.body, f.body, bound | {p.var})
        if isinstance(p, Not):
            return walk(p.body, f.body, bound)
        if isinstance(p, (And, Or)):
            return walk(p.left, f.left, bound) and walk(p.right, f.right, bound)
        if isinstance(p, Eq):
            return term(p.left, f.left) and term(p.right, f.right)
        if isinstance(p, Indep):
            return terms(p.u, f.u) and terms(p.v, f.v) and terms(p.w, f.w)
        if hasattr(p, "left") and isinstance(p.left, tuple):
            return terms(p.left, f.left) and terms(p.right, f.right)
        if hasattr(p, "args"):
            return getattr(p, "name", None) == getattr(f, "name", None) and terms(p.args, f.args)
        return p == f

    if not walk(pattern, instance, frozenset()):
        return None
    t = found.get("t", Var(x))
    try:
        if substitute(pattern, t, x) != instance:
            return None
    except CaptureError:
        return None
    return t


class Context:
    """Open assumptions per premise, as (label, formula) pairs."""

    def __init__(self, open_by_premise):
        self.open_by_premise = open_by_premise

    def open_formulas(self, i, except_labels=()):
        return [a.formula for a in self.open_by_premise[i] if a.label not in except_labels]


def check_node(node, prem, ctx: Context, hyp_formula):
    """``prem`` are the premise conclusions; ``hyp_formula(label, slot)``
    returns the formulas of the label's leaves in that premise subtree."""
    rule = node.rule
    c = node.conclusion
    if rule not in CATALOG:
        raise Rejection("UNKNOWN_RULE", f"unknown rule {rule!r}", rule)
    if len(prem) != arity(rule):
        raise _shape(rule, "premises", f"{rule} takes {arity(rule)} premise(s), got {len(prem)}")
    slots = discharge_slots(rule)
    if len(node.discharges) != len(slots):
        raise Rejection("DISCHARGE_MISMATCH",
                        f"{rule} discharges {len(slots)} hypothesis(es), node lists {len(node.discharges)}", rule)
    _CHECKS[rule](node, c, prem, ctx, hyp_formula)


def _discharged(node, k, want, hyp_formula, rule):
    label = node.discharges[k]
    slot = discharge_slots(rule)[k]
    for f in hyp_formula(label, slot):
        if f != want:
            raise Rejection("DISCHARGE_MISMATCH",
                            f"hypothesis #{label} is not the formula required by {rule}", rule)
    return label


# --- Figure rules -------------------------------------------------------------


def _and_intro(node, c, prem, ctx, hyp):
    _expect(c == And(prem[0], prem[1]), "and-intro", "conclusion", "conclusion must be A ∧ B")


def _and_elim(side):
    def check(node, c, prem, ctx, hyp):
        rule = f"and-elim-{side}"
        _expect(isinstance(prem[0], And), rule, "premise", "premise must be a conjunction")
        _expect(c == getattr(prem[0], side), rule, "conclusion", f"conclusion must be the {side} conjunct")
    return check


def _or_intro(side):
    def check(node, c, prem, ctx, hyp):
        rule = f"or-intro-{side}"
        _expect(isinstance(c, Or), rule, "conclusion", "conclusion must be a disjunction")
        _expect(getattr(c, side) == prem[0], rule, "conclusion", f"premise must be the {side} disjunct")
    return check


def _or_elim(node, c, prem, ctx, hyp):
    rule = "or-elim"
    _expect(isinstance(prem[0], Or), rule, "major premise", "first premise must be a disjunction")
    _expect(prem[1] == c and prem[2] == c, rule, "minor premises", "both cases must conclude C")
    _discharged(node, 0, prem[0].left, hyp, rule)
    _discharged(node, 1, prem[0].right, hyp, rule)
    if not is_first_order(c):
        raise Rejection("COND1_VIOLATION", "C must be first-order", rule)


def _neg_intro(node, c, prem, ctx, hyp):
    rule = "neg-intro"
    _expect(isinstance(c, Not), rule, "conclusion", "conclusion must be a negation")
    body = prem[0]
    _expect(isinstance(body, And) and body.right == Not(body.left), rule, "premise",
            "premise must be B ∧ ¬B")
    _discharged(node, 0, c.body, hyp, rule)
    _fo(rule, c.body, body.left)


def _neg_elim(node, c, prem, ctx, hyp):
    rule = "neg-elim"
    _expect(prem[0] == Not(Not(c)), rule, "premise", "premise must be ¬¬A")
    _fo(rule, c)


def _forall_intro(node, c, prem, ctx, hyp):
    rule = "forall-intro"
    _expect(isinstance(c, Forall) and c.body == prem[0], rule, "conclusion", "conclusion must be ∀x A")
    for f in ctx.open_formulas(0):
        if c.var in free_variables(f):
            raise Rejection("EIGENVAR_FREE", f"{c.var} is free in an open assumption", rule)


def _forall_elim(node, c, prem, ctx, hyp):
    rule = "forall-elim"
    _expect(isinstance(prem[0], Forall), rule, "premise", "premise must be ∀x A")
    _fo(rule, prem[0], c)
    if match_instance(prem[0].body, prem[0].var, c) is None:
        raise _shape(rule, "conclusion", "conclusion is not an instance A(t/x)")


def _exists_intro(node, c, prem, ctx, hyp):
    rule = "exists-intro"
    _expect(isinstance(c, Exists), rule, "conclusion", "conclusion must be ∃x A")
    if match_instance(c.body, c.var, prem[0]) is None:
        raise _shape(rule, "premise", "premise is not an instance A(t/x)")


def _exists_elim(node, c, prem, ctx, hyp):
    rule = "exists-elim"
    _expect(isinstance(prem[0], Exists), rule, "major premise", "first premise must be ∃x A")
    _expect(prem[1] == c, rule, "minor premise", "second premise must conclude B")
    label = _discharged(node, 0, prem[0].body, hyp, rule)
    x = prem[0].var
    if x in free_variables(c):
        raise Rejection("EIGENVAR_FREE", f"{x} is free in the conclusion", rule)
    for f in ctx.open_formulas(1, except_labels={label}):
        if x in free_variables(f):
            raise Rejection("EIGENVAR_FREE", f"{x} is free in an open assumption", rule)


# --- further rules ----------------------------------------------------------------


def _disj_subst(node, c, prem, ctx, hyp):
    rule = "disj-subst"
    _expect(isinstance(prem[0], Or), rule, "major premise", "first premise must be A ∨ B")
    _expect(c == Or(prem[0].left, prem[1]), rule, "conclusion", "conclusion must be A ∨ C")
    _discharged(node, 0, prem[0].right, hyp, rule)


def _disj_comm(node, c, prem, ctx, hyp):
    p = prem[0]
    _expect(isinstance(p, Or) and c == Or(p.right, p.left), "disj-comm", "conclusion",
            "conclusion must swap the disjuncts")


def _disj_assoc(node, c, prem, ctx, hyp):
    p = prem[0]
    _expect(isinstance(p, Or) and isinstance(p.left, Or), "disj-assoc", "premise",
            "premise must be (A ∨ B) ∨ C")
    _expect(c == Or(p.left.left, Or(p.left.right, p.right)), "disj-assoc", "conclusion",
            "conclusion must be A ∨ (B ∨ C)")


def _is_guard(atom, x, others) -> bool:
    if not isinstance(atom, Indep) or atom.w:
        return False
    for one, many in ((atom.u, atom.v), (atom.v, atom.u)):
        if one == (Var(x),) and all(isinstance(t, Var) for t in many) \
                and sorted(t.name for t in many) == sorted(others):
            return True
    return False


def _scope_forall(node, c, prem, ctx, hyp):
    rule = "scope-forall"
    p = prem[0]
    _expect(isinstance(p, Or) and isinstance(p.left, Forall), rule, "premise", "premise must be ∀x A ∨ B")
    x, a, b = p.left.var, p.left.body, p.right
    if x in free_variables(b):
        raise Rejection("FREE_VAR_VIOLATION", f"{x} is free in B", rule)
    _expect(isinstance(c, Forall) and c.var == x and isinstance(c.body, Or)
            and isinstance(c.body.left, And) and c.body.left.left == a and c.body.right == b,
            rule, "conclusion", "conclusion must be ∀x((A ∧ x ⊥ y) ∨ B)")
    others = free_variables(Or(a, b)) - {x}
    _expect(_is_guard(c.body.left.right, x, others), rule, "guard",
            "guard must be x ⊥ y with y listing Fr(A ∨ B) - {x}")


def _scope_exists(node, c, prem, ctx, hyp):
    rule = "scope-exists"
    p = prem[0]
    _expect(isinstance(p, Or) and isinstance(p.left, Exists), rule, "premise", "premise must be ∃x A ∨ B")
    x = p.left.var
    if x in free_variables(p.right):
        raise Rejection("FREE_VAR_VIOLATION", f"{x} is free in B", rule)
    _expect(c == Exists(x, Or(p.left.body, p.right)), rule, "conclusion", "conclusion must be ∃x(A ∨ B)")


def _univ_subst(node, c, prem, ctx, hyp):
    rule = "univ-subst"
    _expect(isinstance(prem[0], Forall), rule, "major premise", "first premise must be ∀x A")
    _expect(isinstance(c, Forall) and c.body == prem[1], rule, "conclusion", "conclusion must be ∀y B")
    x, a, y = prem[0].var, prem[0].body, c.var
    try:
        inst = substitute(a, Var(y), x)
    except CaptureError:
        raise Rejection("CAPTURE_VIOLATION", f"{y} would be captured in A({y}/{x})", rule)
    label = _discharged(node, 0, inst, hyp, rule)
    if y in free_variables(prem[0]):
        raise Rejection("EIGENVAR_FREE", f"{y} is free in ∀{x} A", rule)
    for f in ctx.open_formulas(1, except_labels={label}):
        if y in free_variables(f):
            raise Rejection("EIGENVAR_FREE", f"{y} is free in an open assumption", rule)


def _indep_distribution(node, c, prem, ctx, hyp):
    rule = "indep-distribution"
    p = prem[0]
    _expect(isinstance(p, Or), rule, "premise", "premise must be A ∨ B")
    try:
        ra, rb = disjunct_shapes(p.left), disjunct_shapes(p.right)
    except ShapeMismatch as exc:
        raise _shape(rule, "disjunct", str(exc))
    prefix, _ = split_prefix(c)
    names = [v for _, v in prefix]
    used = all_variables(p)
    problem = _shape(rule, "conclusion", "conclusion is not the distributed formula E")
    for x0, atoms0, cc in ra:
        for x1, atoms1, d in rb:
            if set(x0) & all_variables(p.right) or set(x1) & all_variables(p.left):
                problem = _shape(rule, "bound tuples", "x0 occurs in B or x1 occurs in A")
                continue
            k = 2 + len(x0) + len(x1) + 3
            if len(names) < k:
                continue
            alpha, beta = names[0], names[1]
            z0, z1, r = names[k - 3:k]
            fresh = [alpha, beta, z0, z1, r]
            parts = rule6_parts(x0, atoms0, cc, x1, atoms1, d, _Fixed(fresh))
            if not alpha_equal(build_distribution(parts), c):
                continue
            if len(set(fresh)) != 5 or set(fresh) & used:
                raise Rejection("FRESHNESS_VIOLATION",
                                "α, β, z0, z1 and r must be distinct and new to A ∨ B", rule)
            return
    raise problem


class _Fixed:
    """Name supply replaying a fixed list (used to rebuild E with the
    conclusion's own choice of fresh variables)."""

    def __init__(self, names):
        self.names = list(names)

    def __call__(self, hint=""):
        return self.names.pop(0)


def _indep_introduction(node, c, prem, ctx, hyp):
    rule = "indep-introduction"
    p = prem[0]
    pre, _ = split_prefix(p)
    nx = 0
    while nx < len(pre) and pre[nx][0] is Exists:
        nx += 1
    ny = 0
    while nx + ny < len(pre) and pre[nx + ny][0] is Forall:
        ny += 1
    _expect(nx > 0 and ny > 0, rule, "premise", "premise must be ∃x ∀y A")
    xs = tuple(v for _, v in pre[:nx])
    for k in range(1, ny + 1):
        ys = tuple(v for _, v in pre[nx:nx + k])
        a = p
        for _ in range(nx + k):
            a = a.body
        got = c
        ok = True
        for y in ys:
            ok = ok and isinstance(got, Forall) and got.var == y
            got = got.body if ok else got
        for x in xs:
            ok = ok and isinstance(got, Exists) and got.var == x
            got = got.body if ok else got
        if not (ok and isinstance(got, And) and got.left == a):
            continue
        atom = got.right
        zs = free_variables(a) - set(xs) - set(ys)
        X, Y = tuple(map(Var, xs)), tuple(map(Var, ys))
        if isinstance(atom, Indep) and {atom.u, atom.v} == {X, Y} and \
                all(isinstance(t, Var) for t in atom.w) and sorted(t.name for t in atom.w) == sorted(zs) \
                and len(atom.w) == len(zs):
            return
        raise _shape(rule, "atom", "atom must be x ⊥_z y with z listing Fr(A) - {x, y}")
    raise _shape(rule, "conclusion", "conclusion must be ∀y ∃x(A ∧ x ⊥_z y)")


def _indep_transmission(node, c, prem, ctx, hyp):
    rule = "indep-transmission"
    try:
        inst = rule8.read_premise(prem[0])
        rule8.check_conclusion(inst, c)
    except rule8.Rule8Mismatch as exc:
        if exc.field == "freshness":
            raise Rejection("FRESHNESS_VIOLATION", str(exc), rule)
        raise _shape("rule8", exc.field, str(exc))


def _identity_axiom(node, c, prem, ctx, hyp):
    _expect(isinstance(c, Eq) and isinstance(c.left, Var) and c.left == c.right,
            "identity-axiom", "conclusion", "axiom must be x = x for a variable x")


def _var_eq(f):
    return isinstance(f, Eq) and isinstance(f.left, Var) and isinstance(f.right, Var)


def _identity_symmetry(node, c, prem, ctx, hyp):
    p = prem[0]
    _expect(_var_eq(p), "identity-symmetry", "premise", "premise must be x = y for variables")
    _expect(c == Eq(p.right, p.left), "identity-symmetry", "conclusion", "conclusion must be y = x")


def _identity_term(node, c, prem, ctx, hyp):
    p = prem[0]
    _expect(_var_eq(p), "identity-term", "premise", "premise must be x = y for variables")
    _expect(isinstance(c, Eq) and subst_term(c.right, {p.right.name: p.left}) == c.left,
            "identity-term", "conclusion", "conclusion must be t(x/y) = t")


def _identity_formula(node, c, prem, ctx, hyp):
    rule = "identity-formula"
    p = prem[0]
    _expect(isinstance(p, And) and _var_eq(p.right), rule, "premise", "premise must be A ∧ x = y")
    x, y = p.right.left, p.right.right
    try:
        want = substitute(p.left, x, y.name)
    except CaptureError:
        raise Rejection("CAPTURE_VIOLATION", f"{x.name} would be captured in A({x.name}/{y.name})", rule)
    _expect(c == want, rule, "conclusion", "conclusion must be A(x/y)")


_CHECKS = {
    "and-intro": _and_intro,
    "and-elim-left": _and_elim("left"),
    "and-elim-right": _and_elim("right"),
    "or-intro-left": _or_intro("left"),
    "or-intro-right": _or_intro("right"),
    "or-elim": _or_elim,
    "neg-intro": _neg_intro,
    "neg-elim": _neg_elim,
    "forall-intro": _forall_intro,
    "forall-elim": _forall_elim,
    "exists-intro": _exists_intro,
    "exists-elim": _exists_elim,
    "disj-subst": _disj_subst,
    "disj-comm": _disj_comm,
    "disj-assoc": _disj_assoc,
    "scope-forall": _scope_forall,
    "scope-exists": _scope_exists,
    "univ-subst": _univ_subst,
    "indep-distribution": _indep_distribution,
    "indep-introduction": _indep_introduction,
    "indep-transmission": _indep_transmission,
    "identity-axiom": _identity_axiom,
    "identity-symmetry": _identity_symmetry,
    "identity-term": _identity_term,
    "identity-formula": _identity_formula,
}
