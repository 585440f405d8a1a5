"""Natural-deduction derivations and their checker."""

from .checker import Verdict, check
from .derivation import (
    Assume, DerivationFormatError, Node, format_derivation, open_assumptions, open_premises,
    parse_derivation,
)
from .fuzz import FuzzReport, fuzz_soundness
from .rules import CATALOG, Rejection, discharge_slots

__all__ = [
    "Assume", "CATALOG", "DerivationFormatError", "FuzzReport", "Node", "Rejection", "Verdict",
    "check", "discharge_slots", "format_derivation", "fuzz_soundness", "open_assumptions",
    "open_premises", "parse_derivation",
]
