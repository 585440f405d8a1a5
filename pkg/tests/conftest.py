import random

import pytest
from hypothesis import strategies as st

from teamlogic.generators import FormulaGen
from teamlogic.parser import parse_formula
from teamlogic.syntax import Signature

SIG = Signature({"P": 1, "R": 2}, {"f": 1}, {"c"})


def F(text, consts=("c",)):
    return parse_formula(text, constants=consts)


@st.composite
def formulas(draw, depth=3, atoms=True):
    """Random well-formed formulas, driven by a hypothesis-drawn seed."""
    seed = draw(st.integers(0, 2 ** 32 - 1))
    rng = random.Random(seed)
    names = tuple(rng.sample(["x", "y", "z"], rng.randint(0, 3)))
    return FormulaGen(rng, SIG).formula(rng.randint(0, depth), names, atoms=atoms)


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(mod.RESULTS):
            terminalreporter.write_line(mod.RESULTS[n])
