"""Text syntax for formulas: tokenizer, recursive-descent parser, printer.

Grammar (whitespace-insensitive)::

    formula := 'forall' VAR formula | 'exists' VAR formula | disj
    disj    := conj ('|' conj)*
    conj    := unary ('&' unary)*
    unary   := '!' unary | '(' formula ')' | atom
    atom    := indep(terms; terms; terms?) | dep(terms) | inc(terms; terms)
             | exc(terms; terms) | IDENT(terms) | term = term | true | false

A bare identifier is a variable unless it is listed in ``constants``.
Numerals such as ``0`` and ``1`` name universe elements directly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    RESERVED_PREFIX, And, Bot, Const, Dep, Eq, Exc, Exists, Forall, Func, Inc,
    Indep, Not, Or, Rel, Top, Var,
)

KEYWORDS = {"forall", "exists", "indep", "dep", "inc", "exc", "true", "false"}

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<num>[0-9]+)|(?P<punct>[()\[\],;=!&|]))")


class ParseError(ValueError):
    def __init__(self, message, line=1, column=1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        text = f"line {line}, column {column}: {message}"
        if expected:
            text += f" (expected {', '.join(expected)})"
        super().__init__(text)


@dataclass
class Token:
    kind: str  # 'ident', 'num', 'punct' or 'eof'
    text: str
    offset: int


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:]
            if rest.strip() == "":
                break
            skip = len(rest) - len(rest.lstrip())
            raise _error_at(text, pos + skip, f"unexpected character {rest.lstrip()[0]!r}")
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


def _line_col(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _error_at(text, offset, message, expected=()):
    line, col = _line_col(text, offset)
    return ParseError(message, line, col, expected)


class _Parser:
    def __init__(self, text, constants, allow_reserved):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.constants = frozenset(constants)
        self.allow_reserved = allow_reserved

    # token helpers
    def peek(self, k=0):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, text, k=0):
        tok = self.peek(k)
        return tok.kind != "eof" and tok.text == text

    def fail(self, message, expected=(), tok=None):
        tok = tok or self.peek()
        return _error_at(self.text, tok.offset, message, expected)

    def expect(self, text):
        tok = self.peek()
        if tok.text != text or tok.kind == "eof":
            found = repr(tok.text) if tok.kind != "eof" else "end of input"
            raise self.fail(f"unexpected {found}", (repr(text),))
        self.i += 1
        return tok

    def ident(self, what="identifier"):
        tok = self.peek()
        if tok.kind != "ident":
            found = repr(tok.text) if tok.kind != "eof" else "end of input"
            raise self.fail(f"unexpected {found}", (what,))
        self.i += 1
        return tok

    def variable_name(self):
        tok = self.ident("variable")
        self._check_name(tok, variable=True)
        return tok.text

    def _check_name(self, tok, variable):
        if tok.text in KEYWORDS:
            raise self.fail(f"keyword {tok.text!r} cannot be used as a name", tok=tok)
        if tok.text.startswith(RESERVED_PREFIX) and not self.allow_reserved:
            raise self.fail(f"names starting with {RESERVED_PREFIX!r} are reserved", tok=tok)
        if variable and tok.text in self.constants:
            raise self.fail(f"{tok.text!r} is a constant, not a variable", tok=tok)

    # grammar
    def formula(self):
        tok = self.peek()
        if tok.kind == "ident" and tok.text in ("forall", "exists"):
            self.i += 1
            var = self.variable_name()
            body = self.formula()
            return (Forall if tok.text == "forall" else Exists)(var, body)
        return self.disj()

    def disj(self):
        left = self.conj()
        while self.at("|"):
            self.i += 1
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.at("&"):
            self.i += 1
            left = And(left, self.unary())
        return left

    def unary(self):
        if self.at("!"):
            self.i += 1
            return Not(self.unary())
        if self.at("("):
            self.i += 1
            f = self.formula()
            self.expect(")")
            return f
        return self.atom()

    def atom(self):
        tok = self.peek()
        if tok.kind == "num":
            return self.equation()
        if tok.kind != "ident":
            found = repr(tok.text) if tok.kind != "eof" else "end of input"
            raise self.fail(f"unexpected {found}", ("formula",))
        word = tok.text
        if word == "true":
            self.i += 1
            return Top()
        if word == "false":
            self.i += 1
            return Bot()
        if word in ("forall", "exists"):
            # an unparenthesised quantifier in operand position extends to the right
            return self.formula()
        if word == "indep":
            self.i += 1
            self.expect("(")
            u = self.terms(";")
            self.expect(";")
            v = self.terms(";)")
            self.expect(";")
            w = self.terms(")")
            self.expect(")")
            return Indep(u, v, w)
        if word == "dep":
            self.i += 1
            self.expect("(")
            args = self.terms(")")
            self.expect(")")
            if not args:
                raise self.fail("dep needs at least one term", ("term",))
            return Dep(args)
        if word in ("inc", "exc"):
            self.i += 1
            self.expect("(")
            left = self.terms(";")
            self.expect(";")
            right = self.terms(")")
            self.expect(")")
            return (Inc if word == "inc" else Exc)(left, right)
        # relation atom or equation
        if self.at("(", 1):
            start = self.i
            self.i += 1
            self.expect("(")
            args = self.terms(")")
            self.expect(")")
            if self.at("="):
                self.i = start
                return self.equation()
            self._check_name(tok, variable=False)
            return Rel(word, args)
        return self.equation()

    def equation(self):
        left = self.term()
        if not self.at("="):
            raise self.fail(f"unexpected {self.peek().text or 'end of input'!r}", ("'='", "'('"))
        self.i += 1
        right = self.term()
        return Eq(left, right)

    def terms(self, closers):
        out = []
        if self.peek().kind == "punct" and self.peek().text in closers:
            return ()
        out.append(self.term())
        while self.at(","):
            self.i += 1
            out.append(self.term())
        return tuple(out)

    def term(self):
        tok = self.peek()
        if tok.kind == "num":
            self.i += 1
            return Const(str(int(tok.text)))
        tok = self.ident("term")
        if self.at("("):
            self._check_name(tok, variable=False)
            self.i += 1
            args = self.terms(")")
            self.expect(")")
            if not args:
                raise self.fail("function application needs arguments", ("term",))
            return Func(tok.text, args)
        if tok.text in self.constants:
            return Const(tok.text)
        self._check_name(tok, variable=True)
        return Var(tok.text)


def parse_formula(text: str, constants=(), allow_reserved: bool = False):
    p = _Parser(text, constants, allow_reserved)
    f = p.formula()
    if p.peek().kind != "eof":
        raise p.fail(f"unexpected {p.peek().text!r}", ("end of input", "'&'", "'|'"))
    return f


def parse_term(text: str, constants=(), allow_reserved: bool = False):
    p = _Parser(text, constants, allow_reserved)
    t = p.term()
    if p.peek().kind != "eof":
        raise p.fail(f"unexpected {p.peek().text!r}", ("end of input",))
    return t


# ---------------------------------------------------------------------------
# Printing


def format_term(t) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    return f"{t.name}({','.join(format_term(a) for a in t.args)})"


def _terms(ts):
    return ",".join(format_term(t) for t in ts)


def format_formula(f, _ctx: int = 0) -> str:
    """Inverse of :func:`parse_formula` (up to whitespace).

    ``_ctx`` is the binding strength required by the surrounding position:
    0 anywhere, 1 left of ``|``, 2 right of ``|`` or left of ``&``,
    3 right of ``&`` or under ``!``.
    """
    if isinstance(f, (Forall, Exists)):
        q = "forall" if isinstance(f, Forall) else "exists"
        s = f"{q} {f.var} {format_formula(f.body, 0)}"
        return f"({s})" if _ctx >= 1 else s
    if isinstance(f, Or):
        s = f"{format_formula(f.left, 1)} | {format_formula(f.right, 2)}"
        return f"({s})" if _ctx >= 2 else s
    if isinstance(f, And):
        s = f"{format_formula(f.left, 2)} & {format_formula(f.right, 3)}"
        return f"({s})" if _ctx >= 3 else s
    if isinstance(f, Not):
        return "!" + format_formula(f.body, 3)
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bot):
        return "false"
    if isinstance(f, Eq):
        return f"{format_term(f.left)} = {format_term(f.right)}"
    if isinstance(f, Rel):
        return f"{f.name}({_terms(f.args)})"
    if isinstance(f, Indep):
        return f"indep({_terms(f.u)};{_terms(f.v)};{_terms(f.w)})"
    if isinstance(f, Dep):
        return f"dep({_terms(f.args)})"
    if isinstance(f, Inc):
        return f"inc({_terms(f.left)};{_terms(f.right)})"
    if isinstance(f, Exc):
        return f"exc({_terms(f.left)};{_terms(f.right)})"
    raise TypeError(f"not a formula: {f!r}")
