"""Verification of whole derivations."""

from __future__ import annotations

from dataclasses import dataclass

from ..syntax import check_well_formed
from .derivation import Assume, Node, _open, open_premises
from .rules import Context, Rejection, check_node, discharge_slots


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    path: str | None = None
    code: str | None = None
    message: str = ""

    def __bool__(self):
        return self.accepted

    def __str__(self):
        if self.accepted:
            return "accepted"
        return f"rejected at {self.path}: {self.code}: {self.message}"


def check(d) -> Verdict:
    """Check every node of ``d``.  The first failing node in post-order is
    reported with its path (``root``, ``root.0``, ``root.0.2``, ...)."""
    if isinstance(d, Assume):
        bad = _wf(d.formula, "root")
        return bad if bad is not None else Verdict(True)
    try:
        _check(d, "root")
    except _Failed as exc:
        return exc.verdict
    return Verdict(True)


class _Failed(Exception):
    def __init__(self, verdict):
        self.verdict = verdict


def _wf(f, path):
    diag = check_well_formed(f)
    if diag is not None:
        return Verdict(False, path, "ILL_FORMED", str(diag))
    return None


def _check(node: Node, path: str):
    for i, p in enumerate(node.premises):
        sub = f"{path}.{i}"
        if isinstance(p, Assume):
            bad = _wf(p.formula, sub)
            if bad is not None:
                raise _Failed(bad)
        else:
            _check(p, sub)
    bad = _wf(node.conclusion, path)
    if bad is not None:
        raise _Failed(bad)
    prem = [p.conclusion for p in node.premises]
    open_by = [_open(p) for p in node.premises]

    def hyp_formula(label, slot):
        if slot >= len(open_by):
            return []
        return [a.formula for a in open_by[slot] if a.label == label]

    try:
        check_node(node, prem, Context(open_by), hyp_formula)
    except Rejection as exc:
        raise _Failed(Verdict(False, path, exc.label, str(exc)))


__all__ = ["Verdict", "check", "open_premises", "discharge_slots"]
