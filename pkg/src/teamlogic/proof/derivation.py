"""Derivation trees and their line-oriented file format.

Example::

    derivation
      constants c
      assume #h1: indep(f(x);c;)
      node [id=n1] rule=identity-axiom conclude x = x
      node rule=identity-term conclude f(x) = f(x)
        premise n1
      ...

The last top-level ``node`` is the root.  Premises of a node are its
``premise`` lines and directly nested ``node`` blocks, in order of
appearance.  ``discharge`` lines list hypothesis labels closed at the node.
Lines starting with ``--`` are comments.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..parser import ParseError, format_formula, parse_formula
from ..syntax import Top
from .rules import CATALOG, discharge_slots


@dataclass(frozen=True)
class Assume:
    label: str
    formula: object

    @property
    def conclusion(self):
        return self.formula


@dataclass(frozen=True)
class Node:
    rule: str
    conclusion: object
    premises: tuple = ()
    discharges: tuple = ()
    id: str | None = field(default=None, compare=False)


def leaves(d):
    if isinstance(d, Assume):
        yield d
        return
    for p in d.premises:
        yield from leaves(p)


def open_assumptions(d) -> list:
    """Undischarged assumption leaves of ``d`` as ``Assume`` objects, in leaf
    order, one per label."""
    seen, out = set(), []
    for a in _open(d):
        if a.label not in seen:
            seen.add(a.label)
            out.append(a)
    return out


def _open(d):
    if isinstance(d, Assume):
        return [d]
    slots = discharge_slots(d.rule)
    closed = {}
    for slot, label in zip(slots, d.discharges):
        closed.setdefault(slot, set()).add(label)
    out = []
    for i, p in enumerate(d.premises):
        out.extend(a for a in _open(p) if a.label not in closed.get(i, ()))
    return out


def open_premises(d) -> list:
    return [a.formula for a in open_assumptions(d)]


# ---------------------------------------------------------------------------
# File format


class DerivationFormatError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


_NODE = re.compile(r"node(?:\s+\[id=(?P<id>[A-Za-z0-9_]+)\])?\s+rule=(?P<rule>[A-Za-z0-9_-]+)\s+conclude\s+(?P<formula>.+)$")
_ASSUME = re.compile(r"assume\s+#(?P<label>[A-Za-z0-9_]+)\s*:\s*(?P<formula>.+)$")
_PREMISE = re.compile(r"premise\s+(?P<ref>#?[A-Za-z0-9_]+)\s*$")
_DISCHARGE = re.compile(r"discharge\s+#(?P<label>[A-Za-z0-9_]+)\s*$")


@dataclass
class _Draft:
    rule: str
    formula: object
    id: str | None
    indent: int
    line: int
    items: list = field(default_factory=list)  # ('ref', name, line) or ('node', _Draft)
    discharges: list = field(default_factory=list)


def parse_derivation(text: str):
    """Parse a derivation file; returns the root :class:`Node`."""
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln.rstrip()) for i, ln in lines if ln.strip() and not ln.strip().startswith("--")]
    if not lines or lines[0][1].strip() != "derivation":
        raise DerivationFormatError("file must start with 'derivation'", lines[0][0] if lines else 1)
    constants: list = []
    hyps: dict = {}
    top: list = []
    stack: list = []
    for lineno, raw in lines[1:]:
        indent = len(raw) - len(raw.lstrip())
        text_ = raw.strip()
        while stack and stack[-1].indent >= indent:
            stack.pop()
        if text_.startswith("constants"):
            constants.extend(text_.split()[1:])
            continue
        m = _ASSUME.match(text_)
        if m:
            if stack:
                raise DerivationFormatError("assumptions must be declared at top level", lineno)
            label = m["label"]
            if label in hyps:
                raise DerivationFormatError(f"hypothesis #{label} declared twice", lineno)
            hyps[label] = _formula(m["formula"], constants, lineno)
            continue
        m = _NODE.match(text_)
        if m:
            if m["rule"] not in CATALOG:
                raise DerivationFormatError(f"unknown rule {m['rule']!r}", lineno)
            draft = _Draft(m["rule"], _formula(m["formula"], constants, lineno), m["id"], indent, lineno)
            if stack:
                stack[-1].items.append(("node", draft))
            else:
                top.append(draft)
            stack.append(draft)
            continue
        m = _PREMISE.match(text_)
        if m:
            if not stack:
                raise DerivationFormatError("premise outside a node", lineno)
            stack[-1].items.append(("ref", m["ref"], lineno))
            continue
        m = _DISCHARGE.match(text_)
        if m:
            if not stack:
                raise DerivationFormatError("discharge outside a node", lineno)
            stack[-1].discharges.append(m["label"])
            continue
        raise DerivationFormatError(f"cannot read {text_!r}", lineno)
    if not top:
        raise DerivationFormatError("derivation has no node", lines[-1][0])
    built: dict = {}
    for draft in top:
        node = _build(draft, hyps, built)
        if draft.id:
            built[draft.id] = node
    return node


def _formula(text, constants, lineno):
    try:
        return parse_formula(text, constants=constants, allow_reserved=True)
    except ParseError as exc:
        raise DerivationFormatError(f"formula: {exc}", lineno) from exc


def _build(draft: _Draft, hyps, built):
    premises = []
    for item in draft.items:
        if item[0] == "node":
            child = _build(item[1], hyps, built)
            if item[1].id:
                built[item[1].id] = child
            premises.append(child)
            continue
        _, ref, lineno = item
        if ref.startswith("#"):
            label = ref[1:]
            if label not in hyps:
                raise DerivationFormatError(f"unknown hypothesis {ref}", lineno)
            premises.append(Assume(label, hyps[label]))
        elif ref in built:
            premises.append(built[ref])
        else:
            raise DerivationFormatError(f"unknown node {ref}", lineno)
    for label in draft.discharges:
        if label not in hyps:
            raise DerivationFormatError(f"discharge of undeclared hypothesis #{label}", draft.line)
    return Node(draft.rule, draft.formula, tuple(premises), tuple(draft.discharges), draft.id)


def format_derivation(root, constants=()) -> str:
    """Write ``root`` in the file format (shared subtrees are repeated).

    A label discharged without any leaf carries no formula in the tree; it is
    declared as ``true`` so the output parses again."""
    out = ["derivation"]
    if constants:
        out.append("  constants " + " ".join(constants))
    hyps = {}
    for a in leaves(root):
        hyps.setdefault(a.label, a.formula)
    for label in _discharged_labels(root):
        hyps.setdefault(label, Top())
    for label, f in hyps.items():
        out.append(f"  assume #{label}: {format_formula(f)}")
    if isinstance(root, Assume):
        raise ValueError("a derivation root must be a node")
    _emit(root, 1, out)
    return "\n".join(out) + "\n"


def _discharged_labels(d):
    if isinstance(d, Node):
        yield from d.discharges
        for p in d.premises:
            yield from _discharged_labels(p)


def _emit(node, depth, out):
    pad = "  " * depth
    ident = f" [id={node.id}]" if node.id else ""
    out.append(f"{pad}node{ident} rule={node.rule} conclude {format_formula(node.conclusion)}")
    for p in node.premises:
        if isinstance(p, Assume):
            out.append(f"{pad}  premise #{p.label}")
        else:
            _emit(p, depth + 1, out)
    for label in node.discharges:
        out.append(f"{pad}  discharge #{label}")
