"""Finite models, teams and the team operations X(M/x), X(F/x), X restricted to V."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .syntax import Const, Signature, Var


class DomainError(ValueError):
    """Free variables of a formula are not covered by the team/assignment domain."""


class SignatureError(ValueError):
    """A formula uses a symbol the model does not interpret, or is ill-formed."""


class UnknownVariable(KeyError):
    pass


class MissingAssignment(KeyError):
    pass


class EmptyValue(ValueError):
    pass


class FileFormatError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Model:
    """A finite structure.  Elements are small naturals."""

    def __init__(self, universe: Iterable[int], relations: Mapping | None = None,
                 functions: Mapping | None = None, constants: Mapping | None = None,
                 signature: Signature | None = None):
        self.universe = tuple(sorted(set(universe)))
        if not self.universe:
            raise ValueError("universe must be non-empty")
        rel_arity = dict(signature.relations) if signature else {}
        fun_arity = dict(signature.functions) if signature else {}
        self.relations = {}
        for name, tuples in (relations or {}).items():
            tuples = frozenset(tuple(t) for t in tuples)
            arities = {len(t) for t in tuples}
            if name not in rel_arity:
                if len(arities) != 1:
                    raise ValueError(f"cannot infer arity of relation {name}")
                rel_arity[name] = arities.pop()
            for t in tuples:
                if len(t) != rel_arity[name]:
                    raise ValueError(f"tuple {t} has wrong arity for {name}")
                self._check_elements(t, name)
            self.relations[name] = tuples
        for name in rel_arity:
            self.relations.setdefault(name, frozenset())
        self.functions = {}
        for name, table in (functions or {}).items():
            table = {tuple(k) if isinstance(k, tuple) else (k,): v for k, v in table.items()}
            arities = {len(k) for k in table}
            if name not in fun_arity:
                if len(arities) != 1:
                    raise ValueError(f"cannot infer arity of function {name}")
                fun_arity[name] = arities.pop()
            for args in itertools.product(self.universe, repeat=fun_arity[name]):
                if args not in table:
                    raise ValueError(f"function {name} undefined on {args}")
                self._check_elements((table[args],), name)
            self.functions[name] = table
        self.constants = {}
        for name, value in (constants or {}).items():
            self._check_elements((value,), name)
            self.constants[name] = value
        self.signature = Signature(rel_arity, fun_arity, frozenset(self.constants))
        if signature is not None:
            missing = (set(signature.functions) - set(self.functions)) | (
                set(signature.constants) - set(self.constants))
            if missing:
                raise ValueError(f"no interpretation for {sorted(missing)}")

    def _check_elements(self, values, name):
        for v in values:
            if v not in self.universe:
                raise ValueError(f"element {v} of {name} is outside the universe")

    @property
    def size(self) -> int:
        return len(self.universe)

    def term_value(self, t, s: Mapping[str, int]) -> int:
        if isinstance(t, Var):
            try:
                return s[t.name]
            except KeyError:
                raise DomainError(f"variable {t.name} not in assignment domain") from None
        if isinstance(t, Const):
            if t.name in self.constants:
                return self.constants[t.name]
            if t.is_numeral and int(t.name) in self.universe:
                return int(t.name)
            raise DomainError(f"constant {t.name} has no value in this model")
        return self.functions[t.name][tuple(self.term_value(a, s) for a in t.args)]

    def __eq__(self, other):
        return (isinstance(other, Model) and self.universe == other.universe
                and self.relations == other.relations and self.functions == other.functions
                and self.constants == other.constants)

    def __hash__(self):
        return hash(self.universe)

    def __repr__(self):
        return f"Model(universe={self.universe}, relations={self.relations}, " \
               f"functions={self.functions}, constants={self.constants})"


@dataclass(frozen=True)
class Team:
    """A set of assignments over a shared ordered domain.

    Rows are value tuples aligned with ``domain``.
    """

    domain: tuple
    rows: frozenset

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        if len(set(self.domain)) != len(self.domain):
            raise ValueError("team domain has repeated variables")
        rows = frozenset(tuple(r) for r in self.rows)
        for r in rows:
            if len(r) != len(self.domain):
                raise ValueError(f"row {r} does not match domain {self.domain}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_assignments(cls, domain, assignments: Iterable[Mapping]) -> "Team":
        domain = tuple(domain)
        rows = []
        for s in assignments:
            if set(s) != set(domain):
                raise ValueError(f"assignment {dict(s)} does not have domain {domain}")
            rows.append(tuple(s[v] for v in domain))
        return cls(domain, frozenset(rows))

    @classmethod
    def singleton_empty(cls) -> "Team":
        """The team {∅} containing only the empty assignment."""
        return cls((), frozenset({()}))

    def assignments(self) -> list:
        return [dict(zip(self.domain, r)) for r in self.sorted_rows()]

    def sorted_rows(self) -> list:
        return sorted(self.rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.assignments())


def _extend(domain, x):
    if x in domain:
        return domain, domain.index(x)
    return domain + (x,), len(domain)


def _with(row, idx, value):
    if idx == len(row):
        return row + (value,)
    return row[:idx] + (value,) + row[idx + 1:]


def duplicate(X: Team, M: Model, x: str) -> Team:
    """X(M/x)."""
    dom, idx = _extend(X.domain, x)
    return Team(dom, frozenset(_with(r, idx, a) for r in X.rows for a in M.universe))


def supplement(X: Team, F, x: str) -> Team:
    """X(F/x).  ``F`` maps rows (value tuples of X) or assignment dicts to
    non-empty sets of elements; a callable taking the assignment dict is also
    accepted."""
    dom, idx = _extend(X.domain, x)
    out = set()
    for r in X.rows:
        s = dict(zip(X.domain, r))
        if callable(F):
            values = F(s)
        elif r in F:
            values = F[r]
        else:
            key = frozenset(s.items())
            if key not in F:
                raise MissingAssignment(f"supplement function undefined on {s}")
            values = F[key]
        values = set(values)
        if not values:
            raise EmptyValue(f"supplement function is empty on {s}")
        out.update(_with(r, idx, a) for a in values)
    return Team(dom, frozenset(out))


def restrict(X: Team, V: Iterable[str]) -> Team:
    """X restricted to the variables V."""
    V = set(V)
    unknown = V - set(X.domain)
    if unknown:
        raise UnknownVariable(f"not in team domain: {sorted(unknown)}")
    keep = [i for i, v in enumerate(X.domain) if v in V]
    return Team(tuple(X.domain[i] for i in keep),
                frozenset(tuple(r[i] for i in keep) for r in X.rows))


# ---------------------------------------------------------------------------
# File formats

_HEADER = re.compile(r"^(relation|function)\s+([A-Za-z_][A-Za-z0-9_]*)\s*/\s*(\d+)\s*:(.*)$")
_CONST = re.compile(r"^constant\s+([A-Za-z_][A-Za-z0-9_]*)\s*:(.*)$")


def _strip(line):
    return line.split("#", 1)[0].strip()


def _int(text, lineno):
    try:
        v = int(text)
    except ValueError:
        raise FileFormatError(f"expected an element id, got {text!r}", lineno) from None
    if v < 0:
        raise FileFormatError(f"element ids are non-negative, got {v}", lineno)
    return v


def _tuples(text, lineno):
    text = text.strip()
    if not text:
        return []
    if "(" not in text:
        return [(_int(tok, lineno),) for tok in text.split()]
    found = re.findall(r"\(([^()]*)\)", text)
    leftover = re.sub(r"\(([^()]*)\)", "", text).strip()
    if leftover:
        raise FileFormatError(f"cannot read tuples from {text!r}", lineno)
    return [tuple(_int(tok, lineno) for tok in re.split(r"[,\s]+", body.strip()) if tok)
            for body in found]


def parse_model(text: str, signature: Signature | None = None) -> Model:
    universe = None
    relations, functions, constants = {}, {}, {}
    rel_ar, fun_ar = {}, {}
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("universe:"):
            if universe is not None:
                raise FileFormatError("universe given twice", lineno)
            universe = [_int(tok, lineno) for tok in line[len("universe:"):].split()]
            if not universe:
                raise FileFormatError("universe must be non-empty", lineno)
            continue
        if universe is None:
            raise FileFormatError("the universe line must come first", lineno)
        m = _HEADER.match(line)
        c = _CONST.match(line)
        if m:
            kind, name, arity, rest = m.group(1), m.group(2), int(m.group(3)), m.group(4)
            if arity < 1:
                raise FileFormatError(f"{kind} {name} needs arity >= 1", lineno)
        elif c:
            kind, name, rest = "constant", c.group(1), c.group(2)
        else:
            raise FileFormatError(f"cannot parse {line!r}", lineno)
        if name in seen:
            raise FileFormatError(f"symbol {name} declared twice", lineno)
        seen.add(name)
        if signature is not None and name not in (
                set(signature.relations) | set(signature.functions) | set(signature.constants)):
            raise FileFormatError(f"unknown symbol {name}", lineno)
        if kind == "relation":
            tuples = _tuples(rest, lineno)
            for t in tuples:
                if len(t) != arity:
                    raise FileFormatError(f"arity mismatch in {name}: {t}", lineno)
                for v in t:
                    if v not in universe:
                        raise FileFormatError(f"element {v} outside the universe", lineno)
            relations[name] = tuples
            rel_ar[name] = arity
        elif kind == "function":
            table = {}
            for lhs, rhs in re.findall(r"(\([^()]*\)|\d+)\s*->\s*(\d+)", rest):
                args = _tuples(lhs, lineno)[0] if lhs.startswith("(") else (_int(lhs, lineno),)
                if len(args) != arity:
                    raise FileFormatError(f"arity mismatch in {name}: {args}", lineno)
                val = _int(rhs, lineno)
                for v in args + (val,):
                    if v not in universe:
                        raise FileFormatError(f"element {v} outside the universe", lineno)
                table[args] = val
            leftover = re.sub(r"(\([^()]*\)|\d+)\s*->\s*(\d+)", "", rest).strip()
            if leftover:
                raise FileFormatError(f"cannot read function table {rest.strip()!r}", lineno)
            for args in itertools.product(universe, repeat=arity):
                if args not in table:
                    raise FileFormatError(f"function {name} undefined on {args}", lineno)
            functions[name] = table
            fun_ar[name] = arity
        else:
            val = _int(rest.strip(), lineno)
            if val not in universe:
                raise FileFormatError(f"element {val} outside the universe", lineno)
            constants[name] = val
    if universe is None:
        raise FileFormatError("missing universe line")
    if signature is not None:
        for name, arity in signature.relations.items():
            if name in rel_ar and rel_ar[name] != arity:
                raise FileFormatError(f"arity mismatch for {name}")
        rel_ar = {**signature.relations, **rel_ar}
    return Model(universe, relations, functions, constants,
                 Signature(rel_ar, fun_ar, frozenset(constants)))


def format_model(M: Model) -> str:
    lines = ["universe: " + " ".join(map(str, M.universe))]
    for name in sorted(M.relations):
        arity = M.signature.relations[name]
        tuples = " ".join("(" + ",".join(map(str, t)) + ")" for t in sorted(M.relations[name]))
        lines.append(f"relation {name}/{arity}: {tuples}".rstrip())
    for name in sorted(M.functions):
        arity = M.signature.functions[name]
        items = []
        for args in sorted(M.functions[name]):
            lhs = str(args[0]) if arity == 1 else "(" + ",".join(map(str, args)) + ")"
            items.append(f"{lhs}->{M.functions[name][args]}")
        lines.append(f"function {name}/{arity}: " + " ".join(items))
    for name in sorted(M.constants):
        lines.append(f"constant {name}: {M.constants[name]}")
    return "\n".join(lines) + "\n"


def parse_team(text: str, model: Model | None = None) -> Team:
    domain = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("vars:"):
            if domain is not None:
                raise FileFormatError("vars given twice", lineno)
            domain = tuple(line[len("vars:"):].split())
            for v in domain:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                    raise FileFormatError(f"bad variable name {v!r}", lineno)
            if len(set(domain)) != len(domain):
                raise FileFormatError("repeated variable in vars", lineno)
            continue
        if line.startswith("row:"):
            if domain is None:
                raise FileFormatError("the vars line must come first", lineno)
            row = tuple(_int(tok, lineno) for tok in line[len("row:"):].split())
            if len(row) != len(domain):
                raise FileFormatError(f"row has {len(row)} values for {len(domain)} variables",
                                      lineno)
            if model is not None:
                for v in row:
                    if v not in model.universe:
                        raise FileFormatError(f"element {v} outside the universe", lineno)
            rows.append(row)
            continue
        raise FileFormatError(f"cannot parse {line!r}", lineno)
    if domain is None:
        raise FileFormatError("missing vars line")
    return Team(domain, frozenset(rows))


def format_team(X: Team) -> str:
    lines = ["vars: " + " ".join(X.domain)]
    lines += ["row: " + " ".join(map(str, r)) for r in X.sorted_rows()]
    return "\n".join(lines).rstrip() + "\n"
