"""Exact computations with MV polytopes and their highest vertices."""
from .weyl import build_cartan, v_w, word_to_element
from .polytope import MVPolytope, LusztigDatum, BZData, polytope_from_lusztig, convert_lusztig
from .crystal import BOTTOM, e_op, e_star, f_op, f_star, saito, saito_star
from .highest import is_in_Pw, theorem_a_check

__version__ = "0.1.0"

__all__ = [
    "BOTTOM", "BZData", "LusztigDatum", "MVPolytope", "build_cartan", "convert_lusztig", "e_op", "e_star",
    "f_op", "f_star", "is_in_Pw", "polytope_from_lusztig", "saito", "saito_star", "theorem_a_check", "v_w",
    "word_to_element",
]
