from teamlogic import suites


def test_report_lines():
    r = suites.SuiteReport("demo", seed=4, checked=3)
    r.fail("case", "wrong")
    r.inconclusive.append(("pair", "no level"))
    lines = list(r.lines())
    assert lines[0] == "demo: 3 checks, 1 failures, 1 inconclusive (0.0s) seed=4"
    assert "  FAIL case: wrong" in lines
    assert not r.ok


def test_lemma_suite_small():
    r = suites.lemma_suite(trials=4, seed=1, max_team=3)
    assert r.ok, list(r.lines())
    assert r.checked == 4 * len(suites.LEMMA_ITEMS)


def test_rule6_suite_small():
    r = suites.rule6_suite(trials=4, seed=1, max_team=3)
    assert r.ok, list(r.lines())


def test_translation_atom_counts():
    deps, incs = suites.translation_atoms()
    assert len(deps) == 27 and len(incs) == 88


def test_property_suite_small():
    r = suites.property_suite(triples=20, seed=5)
    assert r.ok, list(r.lines())


def test_corpus_size():
    sentences, _, converse = suites.corpus()
    assert len(sentences) >= 20 and converse


def test_corpus_suite():
    r = suites.corpus_suite()
    assert r.ok, list(r.lines())


def test_structure_suite_small():
    r = suites.structure_suite(max_m=1, max_n=2)
    assert r.ok, list(r.lines())


def test_soundness_suite_subset():
    r = suites.soundness_suite(trials=3, rules=["and-intro", "scope-exists"])
    assert r.ok and r.checked == 6
    assert len(r.notes) == 2


def test_suite_registry():
    assert set(suites.SUITES) == {"lemmas", "rule6", "translations", "properties", "nf", "approx",
                                  "structure", "soundness", "corpus"}


def test_nf_suite_extended_corpus():
    r = suites.nf_suite(extended=True)
    assert r.ok, list(r.lines())
    assert r.checked == sum(len(part) for part in suites.corpus()[:2])
