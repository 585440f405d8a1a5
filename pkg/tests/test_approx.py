import pytest
from hypothesis import given, strategies as st

from teamlogic.evaluate import eval_team
from teamlogic.model import Team
from teamlogic.oracle import enumerate_models
from teamlogic.suites import synthetic_nf
from teamlogic.syntax import (
    Bot, Eq, Indep, Or, Rel, Signature, Var, conj_spine, is_first_order, well_formed,
)
from teamlogic.tarski import count_quantifiers, eval_tarski
from teamlogic.transforms import approximation, normal_form, p_sequence, psi_level
from teamlogic.transforms.approx import ApproxParams, psi_parts
from teamlogic.transforms.normal_form import NormalForm

from conftest import F


def test_p_sequence_start():
    assert p_sequence(1, 0) == (0,)
    assert p_sequence(1, 1) == (0, 4)
    assert p_sequence(0, 3) == (0, 0, 0, 0)


@given(st.integers(0, 4), st.integers(1, 5))
def test_p_sequence_recurrence(m, n):
    p = p_sequence(m, n)
    assert p[0] == 0
    for k in range(1, n + 1):
        assert p[k] == p[k - 1] + m * (p[k - 1] + k + 1) ** 2


def test_negative_level():
    nf = synthetic_nf(1)
    with pytest.raises(IndexError):
        approximation(nf, -1)
    with pytest.raises(IndexError):
        psi_level(nf, -1)


def test_level_zero_is_matrix():
    nf = synthetic_nf(1, 1, 1)
    assert psi_level(nf, 0) == Rel("R", (Var("_vx0_0_0"), Var("_vy0_0_0")))
    phi = approximation(nf, 0)
    assert count_quantifiers(phi) == 2
    assert phi.var == "_vx0_0_0" and phi.body.var == "_vy0_0_0"


def test_level_one_quantifier_count():
    phi = approximation(synthetic_nf(1, 1, 1), 1)
    assert count_quantifiers(phi) == 14


def test_triple_count_matches_fresh_slots():
    nf = synthetic_nf(1, 1, 1)
    parts = psi_parts(nf, 1)
    p = p_sequence(1, 1)
    assert len(parts.triples) == 4 == p[1] - p[0]
    assert parts.witnesses_per_triple == 4


def test_empty_conditioning_gives_falsum_pi():
    nf = NormalForm(("a",), ("b",), (Indep((Var("b"),), (Var("b"),), ()),), Rel("P", (Var("b"),)))
    for t in psi_parts(nf, 1).triples:
        leaves = _disjuncts(t)
        assert leaves[0] == Bot()
        assert all(not isinstance(d, Bot) for d in leaves[1:])


def _disjuncts(f):
    out = []
    while isinstance(f, Or):
        out.append(f.right)
        f = f.left
    return [f] + out[::-1]


def test_nonempty_conditioning_gives_inequality_pi():
    nf = synthetic_nf(2, 1, 2)
    parts = psi_parts(nf, 1)
    width = 0 + 1 + 1  # j, k range over -1..p_0
    second_atom = parts.triples[width * width]
    pi = _disjuncts(second_atom)[0]
    assert not isinstance(pi, Bot)


def test_equalities_link_levels():
    nf = synthetic_nf(1, 1, 1)
    eqs = list(psi_parts(nf, 1).equalities)
    assert len(eqs) == 1
    assert conj_spine(eqs[0]) == [Eq(Var("_vx1_0_0"), Var("_vx0_0_0")), Eq(Var("_vy1_0_0"), Var("_vy0_0_0"))]


def test_lazy_parts_do_not_build_everything():
    nf = synthetic_nf(2)
    parts = psi_parts(nf, 3)
    p = p_sequence(2, 3)
    assert len(parts.triples) == 2 * (p[2] + 4) ** 2
    assert isinstance(parts.triples[-1], Or)


def test_params_must_match():
    nf = synthetic_nf(1)
    with pytest.raises(ValueError):
        psi_parts(nf, 1, ApproxParams(2, nf.r, nf.r_prime, p_sequence(2, 1)))


@pytest.mark.parametrize("n", [0, 1, 2])
def test_output_first_order(n):
    phi = approximation(synthetic_nf(1, 1, 1), n)
    assert is_first_order(phi) and well_formed(phi)


SENTENCES = [
    "forall x exists y (indep(y;y;) & R(x,y))",
    "exists y forall x R(x,y)",
    "forall x exists y (dep(y) & P(y))",
]


@pytest.mark.parametrize("text", SENTENCES)
def test_approximations_follow_from_sentence(text):
    f = F(text)
    nf = normal_form(f)
    phis = [approximation(nf, n) for n in (0, 1)]
    sig = Signature({"P": 1, "R": 2}, {}, set())
    for size in (1, 2):
        for M in enumerate_models(sig, size):
            if eval_team(M, Team.singleton_empty(), f):
                assert all(eval_tarski(M, {}, phi) for phi in phis)


def test_constant_sentence_fails_at_level_one():
    # y is constant and must equal every x; false once |M| = 2
    f = F("forall x exists y (dep(y) & x = y)")
    nf = normal_form(f)
    M = next(iter(enumerate_models(Signature({}, {}, set()), 2)))
    assert not eval_team(M, Team.singleton_empty(), f)
    assert eval_tarski(M, {}, approximation(nf, 0))
    assert not eval_tarski(M, {}, approximation(nf, 1))
