"""End-to-end acceptance run, one test per criterion at full size.

Each test records a one-line result; the lines are printed together at the
end of the session (see ``conftest.py``) and also to stdout with ``-s``.
"""

import time

import pytest

from teamlogic import suites
from teamlogic.evaluate import eval_team
from teamlogic.model import Model, Team
from teamlogic.parser import parse_formula
from teamlogic.proof import CATALOG, Node, parse_derivation

RESULTS = {}


def record(n, ok, detail):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    return ok


def report_ok(n, report):
    head = next(iter(report.lines()))
    ok = record(n, report.ok, head)
    assert ok, "\n".join(report.lines())


@pytest.mark.acceptance
def test_criterion_01_worked_examples():
    start = time.perf_counter()
    wrong = []
    cases = suites.load_json("examples.json")["cases"]
    for case in cases:
        M = Model(case["universe"])
        X = Team(tuple(case["vars"]), tuple(tuple(r) for r in case["rows"]))
        if eval_team(M, X, parse_formula(case["formula"])) != case["expected"]:
            wrong.append(case["name"])
    seconds = time.perf_counter() - start
    ok = record(1, not wrong and seconds < 1, f"{len(cases)} worked examples, {len(wrong)} wrong ({seconds:.2f}s)")
    assert ok, wrong


@pytest.mark.acceptance
def test_criterion_02_lemmas():
    report_ok(2, suites.lemma_suite(trials=200, seed=0, max_universe=2, max_team=4))


@pytest.mark.acceptance
def test_criterion_03_rule6():
    report = suites.rule6_suite(trials=100, seed=0, max_universe=2, max_team=4)
    assert any("one-element" in n for n in report.notes)
    report_ok(3, report)


@pytest.mark.acceptance
def test_criterion_04_translations():
    report_ok(4, suites.translation_suite(max_universe=2, max_team=3))


@pytest.mark.acceptance
def test_criterion_05_properties():
    report_ok(5, suites.property_suite(triples=500, seed=0))


@pytest.mark.acceptance
def test_criterion_06_normal_form():
    sentences, _, _ = suites.corpus()
    assert len(sentences) >= 20
    report_ok(6, suites.nf_suite())


@pytest.mark.acceptance
def test_criterion_07_approximation():
    report_ok(7, suites.approx_suite(max_universe=2, levels=(0, 1)))


@pytest.mark.acceptance
def test_criterion_08_structure():
    report_ok(8, suites.structure_suite(max_m=2, max_n=3))


def _rules(d):
    if isinstance(d, Node):
        yield d.rule
        for p in d.premises:
            yield from _rules(p)


@pytest.mark.acceptance
def test_criterion_09_derivations():
    manifest = suites.derivation_manifest()
    wrong, valid, invalid, used = [], 0, 0, set()
    for name, text, expected, _ in manifest:
        code, _ = suites.replay_derivation(text)
        if code != expected:
            wrong.append(f"{name}: {code} != {expected}")
        if expected == "accepted":
            valid += 1
            used |= set(_rules(parse_derivation(text)))
        else:
            invalid += 1
    missing = set(CATALOG) - used
    ok = not wrong and not missing and valid >= 15 and invalid >= 10
    record(9, ok, f"{valid} valid and {invalid} invalid derivations, {len(wrong)} wrong, "
                  f"{len(CATALOG) - len(missing)}/{len(CATALOG)} rules covered")
    assert ok, (wrong, missing)


@pytest.mark.acceptance
def test_criterion_10_soundness():
    report_ok(10, suites.soundness_suite(trials=200, seed=0))
