"""Small CNF builder on top of pysat."""

from __future__ import annotations

from pysat.solvers import Solver

SOLVER_NAME = "cadical153"


class CNF:
    def __init__(self):
        self.nvars = 1
        self.clauses = [[1]]  # variable 1 is constant true

    TRUE = 1
    FALSE = -1

    def new(self) -> int:
        self.nvars += 1
        return self.nvars

    def add(self, clause) -> None:
        clause = [l for l in clause if l != self.FALSE]
        if self.TRUE in clause:
            return
        self.clauses.append(clause)

    def implies_and(self, lits) -> int:
        """Literal ``a`` with ``a -> AND lits`` (one-sided encoding)."""
        lits = [l for l in lits if l != self.TRUE]
        if any(l == self.FALSE for l in lits):
            return self.FALSE
        if not lits:
            return self.TRUE
        if len(lits) == 1:
            return lits[0]
        a = self.new()
        for l in lits:
            self.clauses.append([-a, l])
        return a

    def implies_or(self, lits) -> int:
        lits = [l for l in lits if l != self.FALSE]
        if any(l == self.TRUE for l in lits):
            return self.TRUE
        if not lits:
            return self.FALSE
        if len(lits) == 1:
            return lits[0]
        a = self.new()
        self.clauses.append([-a] + lits)
        return a

    def exactly_one(self, lits) -> None:
        self.add(list(lits))
        lits = list(lits)
        for i in range(len(lits)):
            for j in range(i + 1, len(lits)):
                self.add([-lits[i], -lits[j]])

    def solve(self, assumptions=()):
        """A satisfying assignment as a set of true literals, or None."""
        with Solver(name=SOLVER_NAME, bootstrap_with=self.clauses) as s:
            if s.solve(assumptions=list(assumptions)):
                return set(s.get_model())
            return None

    def satisfiable(self, assumptions=()) -> bool:
        with Solver(name=SOLVER_NAME, bootstrap_with=self.clauses) as s:
            return s.solve(assumptions=list(assumptions))
