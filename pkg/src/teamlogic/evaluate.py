"""Lax team semantics.

Two exact engines decide ``M |=_X f``:

* ``enum``: a literal reading of the satisfaction clauses.  Disjunction
  enumerates covers, the existential quantifier enumerates supplement
  functions with non-empty values.  Exponential, used as a reference.
* ``sat``: compiles the question into CNF.  Every row of every intermediate
  team gets a selection literal; the selected rows form the team at that
  node.  Default engine.
"""

from __future__ import annotations

import itertools
from collections import defaultdict

from .cnf import CNF
from .model import DomainError, Model, SignatureError, Team, restrict
from .syntax import (
    And, Bot, Dep, Exc, Exists, Forall, Inc, Indep, Or, Top, free_variables,
    check_well_formed, is_first_order, rename_apart,
)
from .tarski import eval_fo, eval_tarski

ENGINES = ("sat", "enum")


def _check_domain(X: Team, f, M: Model | None = None):
    if M is not None:
        problem = check_well_formed(f, M.signature)
        if problem:
            raise SignatureError(str(problem))
    missing = free_variables(f) - set(X.domain)
    if missing:
        raise DomainError(f"free variables not in team domain: {sorted(missing)}")


def eval_team(M: Model, X: Team, f, engine: str = "sat") -> bool:
    """``M |=_X f``."""
    _check_domain(X, f, M)
    if engine == "sat":
        return SatEngine(M).check(X, f)
    if engine == "enum":
        return EnumEngine(M).check(X, f)
    raise ValueError(f"unknown engine {engine!r}")


def explain(M: Model, X: Team, f):
    """Truth value plus, when true, one witness per disjunction/existential.

    Returns ``(verdict, lines)``.
    """
    _check_domain(X, f, M)
    return SatEngine(M).explain(X, f)


def _fo_table(f) -> dict:
    table = {}

    def visit(g):
        if isinstance(g, (And, Or)):
            a, b = visit(g.left), visit(g.right)
            res = a and b
        elif isinstance(g, (Exists, Forall)):
            res = visit(g.body)
        else:
            res = is_first_order(g)
        table[id(g)] = res
        return res

    visit(f)
    return table


class _Values:
    """Evaluate term tuples on rows of a given domain."""

    def __init__(self, M: Model):
        self.M = M

    def tuple_on(self, terms, dom, row):
        s = dict(zip(dom, row))
        return tuple(self.M.term_value(t, s) for t in terms)


def atom_holds(M: Model, f, dom, rows) -> bool:
    """Team semantics of the non-first-order atoms on a concrete team."""
    val = _Values(M).tuple_on
    rows = list(rows)
    if isinstance(f, Indep):
        if not f.u or not f.v:
            return True
        present = {(val(f.u, dom, r), val(f.w, dom, r), val(f.v, dom, r)) for r in rows}
        by_w = defaultdict(set)
        for u, w, v in present:
            by_w[w].add((u, v))
        for w, pairs in by_w.items():
            us = {u for u, _ in pairs}
            vs = {v for _, v in pairs}
            if len(pairs) != len(us) * len(vs):
                return False
        return True
    if isinstance(f, Dep):
        seen = {}
        for r in rows:
            vals = val(f.args, dom, r)
            key, out = vals[:-1], vals[-1]
            if seen.setdefault(key, out) != out:
                return False
        return True
    if isinstance(f, Inc):
        right = {val(f.right, dom, r) for r in rows}
        return all(val(f.left, dom, r) in right for r in rows)
    if isinstance(f, Exc):
        left = {val(f.left, dom, r) for r in rows}
        right = {val(f.right, dom, r) for r in rows}
        return not (left & right)
    raise TypeError(f"not a team atom: {f!r}")


def _extend(dom, x):
    if x in dom:
        return dom, dom.index(x)
    return dom + (x,), len(dom)


def _with(row, idx, value):
    if idx == len(row):
        return row + (value,)
    return row[:idx] + (value,) + row[idx + 1:]


class EnumEngine:
    def __init__(self, M: Model):
        self.M = M
        self.memo = {}
        self.fo = {}
        subsets = []
        for k in range(1, M.size + 1):
            subsets.extend(itertools.combinations(M.universe, k))
        self.nonempty = subsets

    def check(self, X: Team, f) -> bool:
        self.fo = _fo_table(f)
        self._root = f
        return self.sat(f, X.domain, frozenset(X.rows))

    def sat(self, f, dom, rows) -> bool:
        key = (id(f), dom, rows)
        hit = self.memo.get(key)
        if hit is None:
            hit = self._sat(f, dom, rows)
            self.memo[key] = hit
        return hit

    def _sat(self, f, dom, rows) -> bool:
        if not rows:
            return True
        if self.fo[id(f)]:
            return all(eval_fo(self.M, dict(zip(dom, r)), f) for r in rows)
        if isinstance(f, (Indep, Dep, Inc, Exc)):
            return atom_holds(self.M, f, dom, rows)
        if isinstance(f, And):
            return self.sat(f.left, dom, rows) and self.sat(f.right, dom, rows)
        if isinstance(f, Or):
            return self.cover(f, dom, rows) is not None
        if isinstance(f, Forall):
            dom2, idx = _extend(dom, f.var)
            return self.sat(f.body, dom2, frozenset(
                _with(r, idx, a) for r in rows for a in self.M.universe))
        if isinstance(f, Exists):
            return self.supplement(f, dom, rows) is not None
        raise TypeError(f"unexpected node {f!r}")

    def cover(self, f, dom, rows):
        """Some (Y, Z) with Y ∪ Z = rows, Y |= left, Z |= right."""
        order = sorted(rows)
        n = len(order)
        for ymask in range(1 << n):
            Y = frozenset(order[i] for i in range(n) if ymask >> i & 1)
            if not self.sat(f.left, dom, Y):
                continue
            free = [i for i in range(n) if ymask >> i & 1]
            base = [order[i] for i in range(n) if not ymask >> i & 1]
            for zmask in range(1 << len(free)):
                Z = frozenset(base + [order[free[j]] for j in range(len(free)) if zmask >> j & 1])
                if self.sat(f.right, dom, Z):
                    return Y, Z
        return None

    def supplement(self, f, dom, rows):
        """Some non-empty-valued F with X(F/x) |= body, as a dict row -> values."""
        dom2, idx = _extend(dom, f.var)
        order = sorted(rows)
        for choice in itertools.product(self.nonempty, repeat=len(order)):
            team = frozenset(_with(r, idx, a) for r, vals in zip(order, choice) for a in vals)
            if self.sat(f.body, dom2, team):
                return dict(zip(order, choice))
        return None


class SatEngine:
    def __init__(self, M: Model):
        self.M = M
        self.values = _Values(M)

    def _prepare(self, X: Team, f):
        fv = free_variables(f)
        X = restrict(X, [v for v in X.domain if v in fv])
        g = rename_apart(f, avoid=X.domain)
        return X, g

    def _build(self, X, g, record):
        self.cnf = CNF()
        self.fo = _fo_table(g)
        self.record = record
        self.trace = []
        rows = X.sorted_rows()
        self.encode(g, X.domain, rows, [CNF.TRUE] * len(rows), ())

    def check(self, X: Team, f) -> bool:
        X, g = self._prepare(X, f)
        if not X.rows:
            return True
        self._build(X, g, record=False)
        return self.cnf.satisfiable()

    def explain(self, X: Team, f):
        X, g = self._prepare(X, f)
        if not X.rows:
            return True, ["empty team: every formula holds"]
        self._build(X, g, record=True)
        model = self.cnf.solve()
        if model is None:
            return False, []
        return True, self._render(model)

    # -- encoding --------------------------------------------------------

    def encode(self, f, dom, rows, lits, path):
        keep = [(r, l) for r, l in zip(rows, lits) if l != CNF.FALSE]
        rows = [r for r, _ in keep]
        lits = [l for _, l in keep]
        if not rows:
            return
        cnf = self.cnf
        if self.fo[id(f)]:
            if isinstance(f, Top):
                return
            for r, l in zip(rows, lits):
                if isinstance(f, Bot) or not eval_fo(self.M, dict(zip(dom, r)), f):
                    cnf.add([-l])
            return
        if isinstance(f, Indep):
            self._indep(f, dom, rows, lits)
        elif isinstance(f, Dep):
            self._dep(f, dom, rows, lits)
        elif isinstance(f, Inc):
            self._inc(f, dom, rows, lits)
        elif isinstance(f, Exc):
            self._exc(f, dom, rows, lits)
        elif isinstance(f, And):
            self.encode(f.left, dom, rows, lits, path + (0,))
            self.encode(f.right, dom, rows, lits, path + (1,))
        elif isinstance(f, Or):
            a_lits, b_lits = [], []
            for l in lits:
                a, b = cnf.new(), cnf.new()
                cnf.add([-l, a, b])
                cnf.add([-a, l])
                cnf.add([-b, l])
                a_lits.append(a)
                b_lits.append(b)
            if self.record:
                self.trace.append(("or", path, dom, rows, lits, a_lits, b_lits))
            self.encode(f.left, dom, rows, a_lits, path + (0,))
            self.encode(f.right, dom, rows, b_lits, path + (1,))
        elif isinstance(f, Forall):
            dom2 = dom + (f.var,)
            rows2, lits2 = [], []
            for r, l in zip(rows, lits):
                for a in self.M.universe:
                    rows2.append(r + (a,))
                    lits2.append(l)
            self.encode(f.body, dom2, rows2, lits2, path + (0,))
        elif isinstance(f, Exists):
            dom2 = dom + (f.var,)
            filters = [g for g in _conjuncts(f.body) if self.fo[id(g)]]
            rows2, lits2, ext = [], [], []
            for r, l in zip(rows, lits):
                cands = []
                for a in self.M.universe:
                    r2 = r + (a,)
                    s = dict(zip(dom2, r2))
                    if all(eval_fo(self.M, s, g) for g in filters):
                        cands.append(r2)
                if len(cands) == 1:
                    new = [l]
                else:
                    new = [cnf.new() for _ in cands]
                    for e in new:
                        cnf.add([-e, l])
                cnf.add([-l] + new)
                rows2.extend(cands)
                lits2.extend(new)
                ext.append((r, l, list(zip(cands, new))))
            if self.record:
                self.trace.append(("exists", path, f.var, dom, ext))
            self.encode(f.body, dom2, rows2, lits2, path + (0,))
        else:
            raise TypeError(f"unexpected node {f!r}")

    def _indep(self, f, dom, rows, lits):
        if not f.u or not f.v:
            return
        cnf = self.cnf
        val = self.values.tuple_on
        P, Q = {}, {}
        R = defaultdict(list)
        ws = defaultdict(set)
        for r, l in zip(rows, lits):
            u, v, w = val(f.u, dom, r), val(f.v, dom, r), val(f.w, dom, r)
            p = P.setdefault((u, w), cnf.new())
            q = Q.setdefault((w, v), cnf.new())
            cnf.add([-l, p])
            cnf.add([-l, q])
            R[(u, w, v)].append(l)
            ws[w].add(u)
        for (w, v), q in Q.items():
            for u in ws[w]:
                p = P[(u, w)]
                witnesses = R.get((u, w, v), [])
                cnf.add([-p, -q] + witnesses)

    def _dep(self, f, dom, rows, lits):
        cnf = self.cnf
        val = self.values.tuple_on
        D = {}
        by_key = defaultdict(list)
        for r, l in zip(rows, lits):
            vals = val(f.args, dom, r)
            key, out = vals[:-1], vals[-1]
            if (key, out) not in D:
                D[(key, out)] = cnf.new()
                by_key[key].append(D[(key, out)])
            cnf.add([-l, D[(key, out)]])
        for group in by_key.values():
            for i in range(len(group)):
                for j in range(i + 1, len(group)):
                    cnf.add([-group[i], -group[j]])

    def _inc(self, f, dom, rows, lits):
        val = self.values.tuple_on
        providers = defaultdict(list)
        for r, l in zip(rows, lits):
            providers[val(f.right, dom, r)].append(l)
        for r, l in zip(rows, lits):
            self.cnf.add([-l] + providers.get(val(f.left, dom, r), []))

    def _exc(self, f, dom, rows, lits):
        cnf = self.cnf
        val = self.values.tuple_on
        T, S = {}, {}
        for r, l in zip(rows, lits):
            t = T.setdefault(val(f.left, dom, r), cnf.new())
            s = S.setdefault(val(f.right, dom, r), cnf.new())
            cnf.add([-l, t])
            cnf.add([-l, s])
        for key, t in T.items():
            if key in S:
                cnf.add([-t, -S[key]])

    # -- witnesses -------------------------------------------------------

    def _render(self, model):
        def on(l):
            return l == CNF.TRUE or (l != CNF.FALSE and l in model)

        def fmt(dom, r):
            return "{" + ", ".join(f"{v}={a}" for v, a in zip(dom, r)) + "}"

        lines = []
        for item in self.trace:
            if item[0] == "or":
                _, path, dom, rows, lits, a_lits, b_lits = item
                where = ".".join(map(str, ("root",) + path))
                live = [i for i, l in enumerate(lits) if on(l)]
                if not live:
                    continue
                left = [fmt(dom, rows[i]) for i in live if on(a_lits[i])]
                right = [fmt(dom, rows[i]) for i in live if on(b_lits[i])]
                lines.append(f"or at {where}: left {{{', '.join(left)}}} "
                             f"right {{{', '.join(right)}}}")
            else:
                _, path, var, dom, ext = item
                where = ".".join(map(str, ("root",) + path))
                parts = []
                for r, l, cands in ext:
                    if not on(l):
                        continue
                    chosen = sorted(r2[-1] for r2, e in cands if on(e))
                    parts.append(f"{fmt(dom, r)}->{{{','.join(map(str, chosen))}}}")
                if parts:
                    lines.append(f"exists {var} at {where}: " + " ".join(parts))
        return lines


def _conjuncts(f):
    if isinstance(f, And):
        return _conjuncts(f.left) + _conjuncts(f.right)
    return [f]


def satisfies_all_rows(M: Model, X: Team, f) -> bool:
    """Flat reading: every assignment satisfies ``f`` classically."""
    return all(eval_tarski(M, s, f) for s in X.assignments())
