"""Batch property suites behind ``teamlogic suite`` and the acceptance tests.

Every suite returns a :class:`SuiteReport`.  Randomised suites take a seed
and are reproducible from it.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from importlib import resources

from .evaluate import eval_team
from .generators import FormulaGen, random_model, random_team, rule6_disjunct
from .model import Model, Team, parse_model, restrict
from .oracle import enumerate_models, semantically_equivalent
from .parser import format_formula, parse_formula
from .syntax import (
    And, Const, Dep, Exists, Forall, FreshNames, Inc, Indep, Or, Signature, Var, all_variables,
    conj_spine, exists_block, forall_block, free_variables, is_first_order, rename_apart,
    rename_free,
    signature_of,
)
from .tarski import eval_fo
from .transforms import (
    NormalForm, approximation, distribute, normal_form, p_sequence, psi_parts, translate_dep,
    translate_inc,
)
from .transforms.approx import level_prefix

LEMMA_SIGNATURE = Signature({"P": 1, "R": 2}, {}, set())


@dataclass
class SuiteReport:
    name: str
    seed: int | None = None
    checked: int = 0
    failures: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, label, detail):
        self.failures.append((label, detail))

    def lines(self):
        head = f"{self.name}: {self.checked} checks, {len(self.failures)} failures"
        if self.inconclusive:
            head += f", {len(self.inconclusive)} inconclusive"
        head += f" ({self.seconds:.1f}s)"
        if self.seed is not None:
            head += f" seed={self.seed}"
        yield head
        for note in self.notes:
            yield f"  {note}"
        for label, detail in self.failures[:20]:
            yield f"  FAIL {label}: {detail}"
        for label, detail in self.inconclusive:
            yield f"  inconclusive {label}: {detail}"


def _timed(fn):
    def run(*args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.seconds = time.perf_counter() - start
        return report
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def load_json(name: str):
    return json.loads(resources.files("teamlogic").joinpath("data", name).read_text())


# ---------------------------------------------------------------------------
# Scope and swap equivalences


def _others(rng, x, pool=("y", "z")):
    return tuple(v for v in pool if v != x)[:rng.randint(0, 2)]


def lemma_instance(kind: str, rng: random.Random, depth: int = 2):
    """A pair (lhs, rhs) of an equivalence with its side conditions met."""
    fg = FormulaGen(rng, LEMMA_SIGNATURE, variables=("x", "y", "z"))
    gen = lambda names: fg.formula(rng.randint(0, depth), tuple(names))
    x = "x"
    if kind in ("3", "3'", "4", "4'"):
        side = _others(rng, x)
        phi = gen((x,) + side[:rng.randint(0, len(side))])
        psi = gen(side)
        assert x not in free_variables(psi)
        if kind == "3":
            ys = sorted(free_variables(Or(phi, psi)) - {x})
            rng.shuffle(ys)
            guard = Indep(tuple(map(Var, ys)), (Var(x),), ())
            return Forall(x, Or(And(phi, guard), psi)), Or(Forall(x, phi), psi)
        if kind == "3'":
            return Forall(x, And(phi, psi)), And(Forall(x, phi), psi)
        if kind == "4":
            return Exists(x, Or(phi, psi)), Or(Exists(x, phi), psi)
        return Exists(x, And(phi, psi)), And(Exists(x, phi), psi)
    if kind == "7":
        xs = ["x1", "x2"][:rng.randint(1, 2)]
        ys = ["y1", "y2"][:rng.randint(1, 3 - len(xs))]
        zs = ["z"][:rng.randint(0, 1)]
        phi = fg.formula(rng.randint(0, depth), tuple(xs + ys + zs))
        z = sorted(free_variables(phi) - set(xs) - set(ys))
        rng.shuffle(z)
        atom = Indep(tuple(map(Var, xs)), tuple(map(Var, ys)), tuple(map(Var, z)))
        lhs = forall_block(xs, exists_block(ys, And(phi, atom)))
        rhs = exists_block(ys, forall_block(xs, phi))
        return lhs, rhs
    raise ValueError(f"unknown lemma item {kind!r}")


LEMMA_ITEMS = ("3", "3'", "4", "4'", "7")


@_timed
def lemma_suite(trials: int = 200, seed: int = 0, max_universe: int = 2, max_team: int = 4,
                items=LEMMA_ITEMS) -> SuiteReport:
    report = SuiteReport("lemmas", seed)
    for kind in items:
        rng = random.Random(f"{seed}:lemma:{kind}")
        for trial in range(trials):
            lhs, rhs = lemma_instance(kind, rng)
            verdict = semantically_equivalent(lhs, rhs, max_universe, max_team)
            report.checked += 1
            if not verdict:
                report.fail(f"({kind}) trial {trial}",
                            f"{format_formula(lhs)}  vs  {format_formula(rhs)}: {verdict.describe()}")
        report.notes.append(f"item ({kind}): {trials} instances")
    return report


# ---------------------------------------------------------------------------
# Distribution of disjunctions


def rule6_instance(rng: random.Random):
    fg = FormulaGen(rng, LEMMA_SIGNATURE, variables=("x", "y"))
    a, b = rule6_disjunct(fg, "u", ("x",)), rule6_disjunct(fg, "v", ("x",))
    return a, b, distribute(a, b, FreshNames(all_variables(Or(a, b))))


@_timed
def rule6_suite(trials: int = 100, seed: int = 0, max_universe: int = 2, max_team: int = 4) -> SuiteReport:
    report = SuiteReport("rule6", seed)
    rng = random.Random(f"{seed}:rule6")
    singles = 0
    for trial in range(trials):
        a, b, e = rule6_instance(rng)
        verdict = semantically_equivalent(Or(a, b), e, max_universe, max_team, min_universe=1)
        report.checked += 1
        if not verdict:
            report.fail(f"trial {trial}", f"{format_formula(Or(a, b))}: {verdict.describe()}")
            continue
        # the one-element universe is part of every run; count it explicitly
        sig = signature_of(a, b, e)
        singles += sum(1 for _ in enumerate_models(sig, 1))
    report.notes.append(f"{singles} one-element models checked")
    return report


# ---------------------------------------------------------------------------
# Atom encodings


def translation_atoms():
    """dep and inclusion atoms over unary and binary term tuples."""
    terms = [Var("x"), Var("y"), Const("c")]
    deps, incs = [], []
    for n in (1, 2, 3):
        for args in itertools.product(terms, repeat=n):
            if isinstance(args[-1], Var) or n == 1:
                deps.append(Dep(args))
    for n in (1, 2):
        for left in itertools.product(terms, repeat=n):
            for right in itertools.product(terms, repeat=n):
                if any(isinstance(t, Var) for t in left + right):
                    incs.append(Inc(left, right))
    return deps, incs


@_timed
def translation_suite(max_universe: int = 2, max_team: int = 3) -> SuiteReport:
    report = SuiteReport("translations")
    sig = Signature({}, {}, {"c"})
    deps, incs = translation_atoms()
    for atom in deps:
        enc = translate_dep(atom)
        v = semantically_equivalent(atom, enc, max_universe, max_team, signature=sig)
        report.checked += 1
        if not v:
            report.fail(format_formula(atom), v.describe())
    for atom in incs:
        enc = translate_inc(atom)
        v = semantically_equivalent(atom, enc, max_universe, max_team, signature=sig)
        report.checked += 1
        if not v:
            report.fail(format_formula(atom), v.describe())
    report.notes.append(f"{len(deps)} dependence atoms, {len(incs)} inclusion atoms")
    return report


# ---------------------------------------------------------------------------
# Locality, empty team, renaming


def _rename_team(X: Team, mapping) -> Team:
    return Team(tuple(mapping.get(v, v) for v in X.domain), X.rows)


@_timed
def property_suite(triples: int = 500, seed: int = 0, max_universe: int = 2, max_team: int = 4) -> SuiteReport:
    report = SuiteReport("properties", seed)
    rng = random.Random(f"{seed}:properties")
    sig = Signature({"P": 1, "R": 2}, {"f": 1}, {"c"})
    fg = FormulaGen(rng, sig, variables=("x", "y", "z"))
    counts = dict(locality=0, empty=0, renaming=0, alpha=0)
    team_formulas = 0
    for trial in range(triples):
        names = tuple(rng.sample(["x", "y", "z"], rng.randint(1, 3)))
        f = fg.formula(rng.randint(2, 4), names)
        M = random_model(rng, sig, rng.randint(1, max_universe))
        domain = sorted(free_variables(f) | {"w"})
        X = random_team(rng, M.universe, domain, max_team)
        truth = eval_team(M, X, f)
        team_formulas += not is_first_order(f)
        label = f"trial {trial}: {format_formula(f)}"
        if eval_team(M, restrict(X, free_variables(f)), f) != truth:
            report.fail(label, "locality")
        counts["locality"] += 1
        if not eval_team(M, Team(tuple(domain), frozenset()), f):
            report.fail(label, "empty team")
        counts["empty"] += 1
        mapping = {v: f"{v}_r" for v in domain}
        g = rename_free(f, mapping)
        if eval_team(M, _rename_team(X, mapping), g) != truth:
            report.fail(label, "renaming of free variables")
        counts["renaming"] += 1
        if eval_team(M, X, rename_apart(f, avoid=domain)) != truth:
            report.fail(label, "renaming of bound variables")
        counts["alpha"] += 1
        report.checked += 1
    report.notes.append(", ".join(f"{k} {v}" for k, v in counts.items()))
    report.notes.append(f"{team_formulas} formulas with team atoms")
    return report


# ---------------------------------------------------------------------------
# Normal form and approximations over the sentence corpus


def corpus():
    data = load_json("corpus.json")
    consts = data["constants"]
    sentences = [(s["name"], parse_formula(s["formula"], constants=consts), s["covers"])
                 for s in data["sentences"]]
    extended = [(s["name"], parse_formula(s["formula"], constants=consts), s["covers"])
                for s in data["extended"]]
    converse = [(c["sentence"], c["model"]) for c in data["converse"]]
    return sentences, extended, converse


@_timed
def nf_suite(max_universe: int = 2, max_team: int = 1, extended: bool = False) -> SuiteReport:
    """Shape invariants and equivalence of ``normal_form`` on the corpus.

    Sentences have empty free-variable sets, so teams of size 0 and 1 are the
    only distinct cases.
    """
    report = SuiteReport("normal-form")
    sentences, more, _ = corpus()
    covered = set()
    for name, f, covers in sentences + (more if extended else []):
        nf = normal_form(f)
        report.checked += 1
        problems = nf.problems()
        if problems:
            report.fail(name, "; ".join(problems))
            continue
        v = semantically_equivalent(f, nf.formula(), max_universe, max_team)
        if not v:
            report.fail(name, v.describe())
        covered.update(covers)
    report.notes.append(f"{len(sentences)} sentences; branches: {', '.join(sorted(covered))}")
    return report


def _approx_models(f, phis, max_universe):
    sig = signature_of(f, *phis)
    for size in range(1, max_universe + 1):
        yield from enumerate_models(sig, size)


@_timed
def approx_suite(max_universe: int = 2, levels=(0, 1)) -> SuiteReport:
    """Team truth of each sentence implies Tarski truth of Φ⁰, Φ¹; the
    designated falsifying pairs report the least level that fails."""
    report = SuiteReport("approx")
    sentences, _, converse = corpus()
    one = Team.singleton_empty()
    by_name = {}
    for name, f, _ in sentences:
        nf = normal_form(f)
        phis = [approximation(nf, n) for n in levels]
        by_name[name] = (f, phis)
        for M in _approx_models(f, phis, max_universe):
            if not eval_team(M, one, f):
                continue
            for n, phi in zip(levels, phis):
                report.checked += 1
                if not eval_fo(M, {}, phi):
                    report.fail(name, f"Φ{n} false on {M!r}")
    for name, text in converse:
        f, phis = by_name[name]
        M = parse_model(text, signature_of(f, *phis))
        if eval_team(M, one, f):
            report.fail(name, "designated falsifying model satisfies the sentence")
            continue
        least = next((n for n, phi in zip(levels, phis) if not eval_fo(M, {}, phi)), None)
        if least is None:
            report.inconclusive.append((name, f"Φ0..Φ{levels[-1]} all true"))
        else:
            report.notes.append(f"converse {name}: least failing level n = {least}")
    return report


# ---------------------------------------------------------------------------
# Structural bookkeeping of Ψⁿ


def synthetic_nf(m: int, r: int = 1, r_prime: int = 2) -> NormalForm:
    """A normal form with ``m`` atoms and an atomic matrix."""
    xs = tuple(f"a{i}" for i in range(r))
    ys = tuple(f"b{i}" for i in range(r_prime))
    atoms = tuple(Indep((Var(ys[0]),), (Var(ys[-1]),), (Var(ys[i % r_prime]),) if i % 2 else ())
                  for i in range(m))
    from .syntax import Rel
    return NormalForm(xs, ys, atoms, Rel("R", (Var(xs[0]), Var(ys[0]))))


def _count_levels(phi, nf, n, params_p):
    """Walk the built Φⁿ and return per-level conjunct counts."""
    out = []
    body = phi
    for level in range(n + 1):
        us, es = level_prefix(nf, level, params_p[level])
        for _ in range(len(us) + len(es)):
            body = body.body
        if level < n:
            psi, body = body.left, body.right
        else:
            psi = body
        out.append(len(conj_spine(psi)))
    return out


@_timed
def structure_suite(max_m: int = 2, max_n: int = 3, full_ast_limit: int = 60) -> SuiteReport:
    report = SuiteReport("structure")
    for m in range(1, max_m + 1):
        nf = synthetic_nf(m)
        for n in range(0, max_n + 1):
            p = p_sequence(m, n)
            for k in range(1, n + 1):
                report.checked += 1
                if p[k] != p[k - 1] + m * (p[k - 1] + k + 1) ** 2:
                    report.fail(f"m={m} n={k}", "recurrence")
            parts = psi_parts(nf, n)
            want_t = p[n] + n + 1 if n else 1
            want_e = p[n - 1] + n if n else 0
            want_x = p[n] - p[n - 1] if n else 0
            got = (len(parts.thetas), len(parts.equalities), len(parts.triples))
            report.checked += 1
            if got != (want_t, want_e, want_x):
                report.fail(f"m={m} n={n}", f"counts {got} != {(want_t, want_e, want_x)}")
            if n:
                # spot-check first and last members of each family
                for seq in (parts.thetas, parts.equalities, parts.triples):
                    _ = seq[0], seq[-1]
                report.checked += 1
                if parts.witnesses_per_triple != p[n] - p[n - 1]:
                    report.fail(f"m={m} n={n}", "witness count per triple")
            if p[n] <= full_ast_limit:
                phi = approximation(nf, n)
                counts = _count_levels(phi, nf, n, p)
                want = [1] + [p[k] + k + 1 + p[k - 1] + k + (p[k] - p[k - 1]) for k in range(1, n + 1)]
                report.checked += 1
                if counts != want:
                    report.fail(f"m={m} n={n}", f"built formula has conjunct counts {counts}, want {want}")
            report.notes.append(f"m={m} n={n}: p={p}")
    return report


# ---------------------------------------------------------------------------
# Soundness and replayed corpora


@_timed
def soundness_suite(trials: int = 200, seed: int = 0, rules=None, max_universe: int = 2,
                    max_team: int = 3) -> SuiteReport:
    from .proof import CATALOG
    from .proof.fuzz import FuzzBounds, fuzz_soundness

    report = SuiteReport("soundness", seed)
    bounds = FuzzBounds(max_universe=max_universe, max_team=max_team)
    for rule in rules or CATALOG:
        r = fuzz_soundness(rule, trials, bounds, seed)
        report.checked += r.trials
        for trial, d, M, X in r.counterexamples:
            report.fail(f"{rule} trial {trial}", f"{format_formula(d.conclusion)} on {M!r}, {X!r}")
        for trial, d, verdict in r.rejected:
            report.fail(f"{rule} trial {trial}", f"generated instance rejected: {verdict}")
        report.notes.append(r.summary())
    return report


def derivation_manifest():
    """(file name, text, expected, note) for every bundled derivation."""
    base = resources.files("teamlogic").joinpath("data", "derivations")
    out = []
    for e in json.loads(base.joinpath("manifest.json").read_text()):
        out.append((e["file"], base.joinpath(e["file"]).read_text(), e["expected"], e["note"]))
    return out


def replay_derivation(text):
    from .proof import DerivationFormatError, check, parse_derivation

    try:
        v = check(parse_derivation(text))
    except DerivationFormatError:
        return "PARSE_ERROR", None
    return ("accepted" if v else v.code), v


@_timed
def corpus_suite() -> SuiteReport:
    """Replay the bundled team examples and derivations."""
    report = SuiteReport("corpus")
    for case in load_json("examples.json")["cases"]:
        M = Model(case["universe"])
        X = Team(tuple(case["vars"]), frozenset(tuple(r) for r in case["rows"]))
        got = eval_team(M, X, parse_formula(case["formula"]))
        report.checked += 1
        if got != case["expected"]:
            report.fail(case["name"], f"got {got}, expected {case['expected']}")
    for name, text, expected, _ in derivation_manifest():
        got, _v = replay_derivation(text)
        report.checked += 1
        if got != expected:
            report.fail(name, f"got {got}, expected {expected}")
    return report


SUITES = {
    "lemmas": lemma_suite,
    "rule6": rule6_suite,
    "translations": translation_suite,
    "properties": property_suite,
    "nf": nf_suite,
    "approx": approx_suite,
    "structure": structure_suite,
    "soundness": soundness_suite,
    "corpus": corpus_suite,
}
