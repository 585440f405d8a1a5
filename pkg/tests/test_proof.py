import pytest

from teamlogic.proof import (
    CATALOG, Assume, DerivationFormatError, Node, check, discharge_slots, format_derivation,
    open_premises, parse_derivation,
)
from teamlogic.proof.rules import arity
from teamlogic.suites import derivation_manifest, replay_derivation

from conftest import F


def hyp(label, text):
    return Assume(label, F(text))


def test_identity_axiom():
    assert check(Node("identity-axiom", F("x = x")))
    v = check(Node("identity-axiom", F("x = y")))
    assert not v and v.code.startswith("SHAPE_MISMATCH")


def test_forall_elim_on_team_atom_rejected():
    d = Node("forall-elim", F("indep(y;y;)"), (hyp("h", "forall x indep(x;y;)"),))
    v = check(d)
    assert v.code == "COND2_VIOLATION" and v.path == "root"


def test_forall_elim_first_order():
    d = Node("forall-elim", F("R(f(y),y)"), (hyp("h", "forall x R(x,y)"),))
    assert check(d)


def test_and_intro():
    assert check(Node("and-intro", F("P(x) & Q(x)"), (hyp("a", "P(x)"), hyp("b", "Q(x)"))))


def test_and_intro_wrong_order():
    v = check(Node("and-intro", F("P(x) & Q(x)"), (hyp("b", "Q(x)"), hyp("a", "P(x)"))))
    assert v.code == "SHAPE_MISMATCH(and-intro, conclusion)"


def test_rule7_empty_z():
    d = Node("indep-introduction", F("forall y exists x (R(x,y) & indep(x;y;))"),
             (hyp("h", "exists x forall y R(x,y)"),))
    assert check(d)


def test_rule7_bound_names_irrelevant():
    d = Node("indep-introduction", F("forall w exists u (R(u,w) & indep(u;w;))"),
             (hyp("h", "exists u forall w R(u,w)"),))
    assert check(d)


def test_unknown_rule_in_tree():
    v = check(Node("modus-tollens", F("P(x)"), (hyp("a", "P(x)"),)))
    assert v.code == "UNKNOWN_RULE"


def test_arity_checked():
    v = check(Node("and-intro", F("P(x) & Q(x)"), (hyp("a", "P(x)"),)))
    assert v.code == "SHAPE_MISMATCH(and-intro, premises)"


def test_failure_reported_at_deepest_node_first():
    inner = Node("and-intro", F("P(x) & Q(x)"), (hyp("b", "Q(x)"), hyp("a", "P(x)")))
    v = check(Node("and-elim-left", F("P(x)"), (inner,)))
    assert v.path == "root.0"
    assert "root.0" in str(v)


def test_ill_formed_assumption():
    d = Node("and-elim-left", F("P(x)"), (Assume("a", F("!indep(x;y;) & P(x)")),))
    v = check(d)
    assert v.code == "ILL_FORMED" and v.path == "root.0"


def test_catalog_closed():
    assert len(CATALOG) == 25
    assert "indep-transmission" in CATALOG and "identity-formula" in CATALOG
    assert arity("or-elim") == 3 and arity("identity-axiom") == 0
    assert discharge_slots("or-elim") == (1, 2)


# -- open premises -----------------------------------------------------------------


def test_open_premises_axiom_only():
    assert open_premises(Node("identity-axiom", F("x = x"))) == []


def test_open_premises_single_assumption():
    assert open_premises(hyp("a", "P(x)")) == [F("P(x)")]


def test_open_premises_or_elim_excludes_cases():
    d = Node("or-elim", F("P(x)"), (
        hyp("h", "P(x) | P(x)"),
        hyp("l", "P(x)"),
        hyp("r", "P(x)"),
    ), ("l", "r"))
    assert check(d)
    assert open_premises(d) == [F("P(x) | P(x)")]


def test_discharge_only_in_its_slot():
    # h discharged in slot 1 stays open where it is used as the major premise
    d = Node("or-elim", F("P(x)"), (
        hyp("l", "P(x) | P(x)"),
        hyp("l", "P(x) | P(x)"),
        hyp("r", "P(x)"),
    ), ("l", "r"))
    assert F("P(x) | P(x)") in open_premises(d)


# -- file format and bundled derivations -----------------------------------------------


MANIFEST = derivation_manifest()


def test_manifest_sizes():
    valid = [e for e in MANIFEST if e[2] == "accepted"]
    invalid = [e for e in MANIFEST if e[2] != "accepted"]
    assert len(valid) >= 15 and len(invalid) >= 10


@pytest.mark.parametrize("name,text,expected,note", MANIFEST, ids=[e[0] for e in MANIFEST])
def test_manifest_replay(name, text, expected, note):
    code, _ = replay_derivation(text)
    assert code == expected, note


@pytest.mark.parametrize("name,text", [(e[0], e[1]) for e in MANIFEST if e[2] != "PARSE_ERROR"],
                         ids=[e[0] for e in MANIFEST if e[2] != "PARSE_ERROR"])
def test_format_round_trip(name, text):
    d = parse_derivation(text)
    again = parse_derivation(format_derivation(d, _constants(text)))
    assert again == d
    assert bool(check(again)) == bool(check(d))


def _constants(text):
    for line in text.splitlines():
        if line.strip().startswith("constants"):
            return tuple(line.split()[1:])
    return ()


def test_parse_errors():
    with pytest.raises(DerivationFormatError):
        parse_derivation("derivation\n  node rule=made-up conclude P(x)\n")
    with pytest.raises(DerivationFormatError):
        parse_derivation("derivation\n  node rule=and-elim-left conclude P(x)\n    premise #nope\n")
    with pytest.raises(DerivationFormatError):
        parse_derivation("derivation\n  node rule=identity-axiom conclude x = \n")


def test_chain_subderivations_accepted():
    d = parse_derivation(dict((e[0], e[1]) for e in MANIFEST)["chain.deriv"])
    assert check(d)

    def nodes(n):
        if isinstance(n, Node):
            yield n
            for p in n.premises:
                yield from nodes(p)

    for sub in nodes(d):
        assert check(sub)
