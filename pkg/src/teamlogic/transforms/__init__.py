"""Atom encodings, the normal-form pipeline and first-order approximations."""

from .approx import ApproxParams, PsiParts, approximation, p_sequence, psi_level, psi_parts
from .atoms import expand_atoms, translate_dep, translate_exc, translate_inc
from .hoist import ShapeMismatch, distribute, hoist_atoms, hoist_block
from .normal_form import NormalForm, as_normal_form, normal_form
from .prenex import NotASentence, is_prenex, prenex

__all__ = [
    "ApproxParams", "NormalForm", "NotASentence", "PsiParts", "ShapeMismatch", "approximation",
    "as_normal_form", "distribute", "expand_atoms", "hoist_atoms", "hoist_block", "is_prenex",
    "normal_form", "p_sequence", "prenex", "psi_level", "psi_parts", "translate_dep",
    "translate_exc", "translate_inc",
]
