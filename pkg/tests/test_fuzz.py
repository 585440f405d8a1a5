import random

import pytest
from hypothesis import given, settings, strategies as st

from teamlogic.proof import CATALOG, check, fuzz_soundness
from teamlogic.proof.fuzz import FuzzBounds, FuzzReport, random_instance

FAST_RULES = [r for r in CATALOG if r != "indep-transmission"]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FAST_RULES), st.integers(0, 10 ** 6))
def test_generated_instances_accepted(rule, seed):
    d = random_instance(rule, random.Random(seed))
    assert d.rule == rule
    assert check(d), str(check(d))


def test_transmission_instance_accepted():
    d = random_instance("indep-transmission", random.Random(3))
    assert check(d)


def test_unknown_rule():
    with pytest.raises(ValueError):
        random_instance("cut", random.Random(0))


@pytest.mark.parametrize("rule", FAST_RULES)
def test_no_counterexamples_small(rule):
    report = fuzz_soundness(rule, trials=8, seed=11)
    assert report.ok, report.summary()
    assert report.evaluations == 8 * FuzzBounds().samples


def test_rule6_includes_one_element_models():
    report = fuzz_soundness("indep-distribution", trials=12, bounds=FuzzBounds(samples=1), seed=2)
    assert report.ok
    assert report.premises_held > 0


def test_same_seed_same_report():
    a = fuzz_soundness("scope-forall", trials=5, seed=7)
    b = fuzz_soundness("scope-forall", trials=5, seed=7)
    assert (a.evaluations, a.premises_held) == (b.evaluations, b.premises_held)


def test_report_summary():
    r = FuzzReport("and-intro", 3, evaluations=9, premises_held=4)
    assert r.ok
    assert r.summary() == "and-intro: 3 trials, 9 evaluations (4 with premises true), 0 counterexamples, 0 rejected"
    r.counterexamples.append(None)
    assert not r.ok
