"""Command-line interface.

Exit codes: 0 success (including a ``false`` verdict of ``check``), 1 suite
failure, 2 usage or parse error, 3 team domain error, 4 input is not a
sentence, 5 derivation rejected, 6 enumeration budget exhausted.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .evaluate import eval_team, explain
from .model import DomainError, FileFormatError, SignatureError, format_model, format_team, parse_model, parse_team
from .oracle import BudgetExceeded, semantically_equivalent
from .parser import ParseError, format_formula, parse_formula
from .syntax import check_well_formed
from .tarski import count_quantifiers
from .transforms import NotASentence, approximation, normal_form, p_sequence

EXIT_SUITE, EXIT_PARSE, EXIT_DOMAIN, EXIT_SENTENCE, EXIT_REJECTED, EXIT_BUDGET = 1, 2, 3, 4, 5, 6


class CliError(Exception):
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}")


def _formula(text, consts=()):
    try:
        f = parse_formula(text, constants=consts)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"parse error: {exc}")
    problem = check_well_formed(f)
    if problem:
        raise CliError(EXIT_PARSE, f"ill-formed: {problem}")
    return f


def _warn_size(f, args):
    n = count_quantifiers(f)
    if n > args.warn_quantifiers:
        print(f"warning: output has {n} quantifiers (threshold {args.warn_quantifiers})", file=sys.stderr)


def cmd_check(args):
    try:
        M = parse_model(_read(args.model))
        X = parse_team(_read(args.team), M)
    except FileFormatError as exc:
        raise CliError(EXIT_PARSE, f"parse error: {exc}")
    f = _formula(args.formula, tuple(M.constants))
    try:
        if args.trace:
            verdict, lines = explain(M, X, f)
        else:
            verdict, lines = eval_team(M, X, f), []
    except DomainError as exc:
        raise CliError(EXIT_DOMAIN, f"domain error: {exc}")
    except SignatureError as exc:
        raise CliError(EXIT_PARSE, f"signature error: {exc}")
    print("true" if verdict else "false")
    for line in lines:
        print(f"  {line}")
    return 0


def _sentence_nf(args):
    f = _formula(args.formula, args.const)
    try:
        return f, normal_form(f)
    except NotASentence as exc:
        raise CliError(EXIT_SENTENCE, f"not a sentence: {exc}")


def cmd_nf(args):
    f, nf = _sentence_nf(args)
    out = nf.formula()
    print(format_formula(out))
    _warn_size(out, args)
    if args.verify:
        verdict = _equiv(f, out, args)
        print(verdict.describe())
        if not verdict:
            return EXIT_SUITE
    return 0


def cmd_approx(args):
    if args.n < 0:
        raise CliError(EXIT_PARSE, "usage error: n must be non-negative")
    f, nf = _sentence_nf(args)
    phi = approximation(nf, args.n)
    print(format_formula(phi))
    if args.stats:
        p = p_sequence(nf.m, args.n)
        print(f"m = {nf.m}, r = {nf.r}, r' = {nf.r_prime}")
        print("p = " + ", ".join(f"p{k} = {v}" for k, v in enumerate(p)))
        print(f"quantifiers = {count_quantifiers(phi)}")
    _warn_size(phi, args)
    return 0


def cmd_verify(args):
    from .proof import DerivationFormatError, check, parse_derivation

    try:
        d = parse_derivation(_read(args.derivation))
    except DerivationFormatError as exc:
        raise CliError(EXIT_PARSE, f"parse error: {exc}")
    v = check(d)
    if v:
        print("accepted")
        return 0
    print(f"rejected {v.path} {v.code}")
    print(f"  {v.message}")
    return EXIT_REJECTED


def _equiv(a, b, args):
    try:
        return semantically_equivalent(a, b, args.max_universe, args.max_team, budget=args.budget)
    except BudgetExceeded as exc:
        p = exc.progress
        print(f"budget exceeded: {p.evaluations} evaluations over {p.models} models "
              f"(largest universe {p.largest_universe}) without a counterexample")
        raise CliError(EXIT_BUDGET, str(exc))


def cmd_equiv(args):
    a, b = _formula(args.a, args.const), _formula(args.b, args.const)
    v = _equiv(a, b, args)
    if v:
        print("equivalent within bounds")
        print(f"  {v.describe()}")
        return 0
    print("counterexample")
    print(f"  left {'true' if v.left else 'false'}, right {'true' if v.right else 'false'}")
    print("-- model")
    print(format_model(v.model).rstrip())
    print("-- team")
    print(format_team(v.team).rstrip())
    return 0


def cmd_suite(args):
    from . import suites

    seed = args.seed if args.seed is not None else random.randrange(10 ** 6)
    kwargs = {}
    if args.name in ("lemmas", "rule6", "properties", "soundness"):
        kwargs["seed"] = seed
    if args.trials is not None:
        if args.name not in ("lemmas", "rule6", "properties", "soundness"):
            raise CliError(EXIT_PARSE, f"usage error: suite {args.name} takes no --trials")
        kwargs["triples" if args.name == "properties" else "trials"] = args.trials
    if args.name in ("lemmas", "rule6", "properties"):
        kwargs.update(max_universe=args.max_universe, max_team=args.max_team)
    report = suites.SUITES[args.name](**kwargs)
    for line in report.lines():
        print(line)
    if not report.ok:
        print(f"replay with: teamlogic suite {args.name} --seed {seed}")
        return EXIT_SUITE
    return 0


def _global_flags(p, suppress=False):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", type=int, default=d(None), help="seed for randomised runs")
    p.add_argument("--max-universe", type=int, default=d(2), help="largest model size (default 2)")
    p.add_argument("--max-team", type=int, default=d(4), help="largest team size (default 4)")
    p.add_argument("--trace", action="store_true", default=d(False), help="print witnessing covers and supplements")
    p.add_argument("--stats", action="store_true", default=d(False), help="print approximation parameters")
    p.add_argument("--verify", action="store_true", default=d(False), help="check the normal form against its input")
    p.add_argument("--const", action="append", default=d([]), metavar="NAME",
                   help="declare a constant symbol (repeatable)")
    p.add_argument("--budget", type=int, default=d(None), help="cap on team evaluations for equiv")
    p.add_argument("--warn-quantifiers", type=int, default=d(20), metavar="K",
                   help="warn when an output formula has more than K quantifiers")


def build_parser():
    parser = argparse.ArgumentParser(prog="teamlogic", description="Independence logic with team semantics.")
    _global_flags(parser)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="evaluate a formula on a model and team")
    p.add_argument("model")
    p.add_argument("team")
    p.add_argument("formula")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("nf", parents=[common], help="normal form of a sentence")
    p.add_argument("formula")
    p.set_defaults(run=cmd_nf)

    p = sub.add_parser("approx", parents=[common], help="first-order approximation of a sentence")
    p.add_argument("formula")
    p.add_argument("n", type=int)
    p.set_defaults(run=cmd_approx)

    p = sub.add_parser("verify", parents=[common], help="check a derivation file")
    p.add_argument("derivation")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("equiv", parents=[common], help="compare two formulas on small models")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(run=cmd_equiv)

    from .suites import SUITES

    p = sub.add_parser("suite", parents=[common], help="run a property suite")
    p.add_argument("name", choices=sorted(SUITES))
    p.add_argument("--trials", type=int, default=None)
    p.set_defaults(run=cmd_suite)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
