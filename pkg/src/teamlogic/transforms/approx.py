"""First-order approximations Φⁿ of a normal-form sentence.

Level ``n`` quantifies slot tuples ``x_{n,i} y_{n,i}`` for ``-n <= i <= p_n``;
slot variables are named ``_vx{n}_{i}_{c}`` / ``_vy{n}_{i}_{c}`` with a
negative index written as ``m1``, ``m2``, ...

Ψⁿ is large for n >= 2, so its three conjunct families are exposed as lazy
sequences (:class:`PsiParts`) which build single conjuncts on demand.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Sequence

from ..syntax import (
    And, Bot, Var, all_variables, conj, disj, exists_block, forall_block, rename_free,
    tuple_eq, tuple_neq,
)
from .normal_form import NormalForm


def p_sequence(m: int, n: int) -> tuple:
    """``p_0 = 0`` and ``p_k = p_{k-1} + m (p_{k-1} + k + 1)^2``."""
    if n < 0:
        raise IndexError("approximation level must be non-negative")
    ps = [0]
    for k in range(1, n + 1):
        ps.append(ps[-1] + m * (ps[-1] + k + 1) ** 2)
    return tuple(ps)


@dataclass(frozen=True)
class ApproxParams:
    m: int
    r: int
    r_prime: int
    p: tuple

    @classmethod
    def for_nf(cls, nf: NormalForm, n: int) -> "ApproxParams":
        return cls(nf.m, nf.r, nf.r_prime, p_sequence(nf.m, n))

    def consistent_with(self, nf: NormalForm) -> bool:
        return (self.m, self.r, self.r_prime) == (nf.m, nf.r, nf.r_prime) and \
            self.p == p_sequence(self.m, len(self.p) - 1)


_SLOT = re.compile(r"_v[xy]\d+_m?\d+_\d+$")


def _index(i: int) -> str:
    return f"m{-i}" if i < 0 else str(i)


def slot_names(kind: str, n: int, i: int, width: int) -> tuple:
    return tuple(f"_v{kind}{n}_{_index(i)}_{c}" for c in range(width))


class _Slots:
    """Variable tuples and substituted pieces of the normal form."""

    def __init__(self, nf: NormalForm):
        self.nf = nf
        clash = {v for v in all_variables(nf.formula()) if _SLOT.match(v)}
        if clash:
            raise ValueError(f"normal form already uses slot names: {sorted(clash)[:3]}")
        self.pos = {v: ("y", c) for c, v in enumerate(nf.existentials)}
        self.pos.update({v: ("x", c) for c, v in enumerate(nf.universals)})

    def xs(self, n, i):
        return slot_names("x", n, i, self.nf.r)

    def ys(self, n, i):
        return slot_names("y", n, i, self.nf.r_prime)

    def xy(self, n, i):
        return tuple(Var(v) for v in self.xs(n, i) + self.ys(n, i))

    def theta(self, n, i):
        mapping = dict(zip(self.nf.universals, self.xs(n, i)))
        mapping.update(zip(self.nf.existentials, self.ys(n, i)))
        return rename_free(self.nf.matrix, mapping)

    def part(self, tup, n, i):
        ys = self.ys(n, i)
        return tuple(Var(ys[self.pos[t.name][1]]) for t in tup)


class LazySeq(Sequence):
    def __init__(self, length: int, build: Callable[[int], object]):
        self._len = length
        self._build = build

    def __len__(self):
        return self._len

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [self[j] for j in range(*k.indices(self._len))]
        if k < 0:
            k += self._len
        if not 0 <= k < self._len:
            raise IndexError(k)
        return self._build(k)


@dataclass
class PsiParts:
    thetas: LazySeq
    equalities: LazySeq
    triples: LazySeq
    witnesses_per_triple: int

    def conjuncts(self):
        yield from self.thetas
        yield from self.equalities
        yield from self.triples


def psi_parts(nf: NormalForm, n: int, params: ApproxParams | None = None,
              _slots: _Slots | None = None) -> PsiParts:
    if n < 0:
        raise IndexError("approximation level must be non-negative")
    params = params or ApproxParams.for_nf(nf, n)
    if len(params.p) <= n or not params.consistent_with(nf):
        raise ValueError("approximation parameters do not match the normal form")
    s = _slots or _Slots(nf)
    if n == 0:
        return PsiParts(LazySeq(1, lambda k: s.theta(0, 0)), LazySeq(0, None), LazySeq(0, None), 0)
    p_now, p_prev = params.p[n], params.p[n - 1]
    thetas = LazySeq(p_now + n + 1, lambda k: s.theta(n, k - n))
    equalities = LazySeq(p_prev + n, lambda k: tuple_eq(s.xy(n, k - n + 1), s.xy(n - 1, k - n + 1)))
    width = p_prev + n + 1  # j, k range over -n..p_{n-1}
    fresh_slots = range(p_prev + 1, p_now + 1)

    def triple(t):
        i, rest = divmod(t, width * width)
        j, k = divmod(rest, width)
        j, k = j - n, k - n
        a = nf.atoms[i]
        pi = tuple_neq(s.part(a.w, n, j), s.part(a.w, n, k)) if a.w else Bot()
        left = s.part(a.u, n, j) + s.part(a.v, n, k) + s.part(a.w, n, j)
        wits = [tuple_eq(left, s.part(a.u, n, l) + s.part(a.v, n, l) + s.part(a.w, n, l))
                for l in fresh_slots]
        return disj([pi] + wits)

    triples = LazySeq(params.m * width * width, triple)
    return PsiParts(thetas, equalities, triples, len(fresh_slots))


def psi_level(nf: NormalForm, n: int, params: ApproxParams | None = None):
    return conj(list(psi_parts(nf, n, params).conjuncts()))


def level_prefix(nf: NormalForm, n: int, p_n: int) -> tuple:
    """``∀x_{n,-n} ∃y_{n,-n} ∃x_{n,-n+1} ∃y_{n,-n+1} … ∃y_{n,p_n}`` as
    (universal names, existential names)."""
    s = _Slots.__new__(_Slots)
    s.nf = nf
    universals = s.xs(n, -n)
    existentials = list(s.ys(n, -n))
    for i in range(-n + 1, p_n + 1):
        existentials += list(s.xs(n, i)) + list(s.ys(n, i))
    return universals, tuple(existentials)


def approximation(nf: NormalForm, n: int):
    if n < 0:
        raise IndexError("approximation level must be non-negative")
    params = ApproxParams.for_nf(nf, n)
    slots = _Slots(nf)
    body = None
    for level in range(n, -1, -1):
        psi = conj(list(psi_parts(nf, level, params, slots).conjuncts()))
        if body is not None:
            psi = And(psi, body)
        us, es = level_prefix(nf, level, params.p[level])
        body = forall_block(us, exists_block(es, psi))
    return body
