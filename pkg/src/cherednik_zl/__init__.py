"""Exact computations for the rational Cherednik algebra of Z/lZ and the
quantized A_{l-1} resolution: Weyl-algebra charts, the generalized Weyl
algebra presentation, category O, glued chart modules and their global
sections.
"""
from .weyl import HScalar, SymbolPoly, WeylElement, f_weight, multiply, star_multiply, symbol
from .toric import ToricData, c_tilde, ordering_eta, validate_theta
from .reduction import gwa_presentation, quantized_transition, reduce_to_chart
from .cherednik import kappa_to_c
from .category_o import GWA, delta_module, epsilon_index, irreducible_quotient, multiplicity_formula
from .microlocal import build_L, build_M_delta, build_M_nabla, wellformed_check
from .sections import global_section_v, global_sections_basis

__version__ = "0.1.0"

__all__ = [
    "HScalar", "SymbolPoly", "WeylElement", "f_weight", "multiply", "star_multiply", "symbol",
    "ToricData", "c_tilde", "ordering_eta", "validate_theta",
    "gwa_presentation", "quantized_transition", "reduce_to_chart",
    "kappa_to_c",
    "GWA", "delta_module", "epsilon_index", "irreducible_quotient", "multiplicity_formula",
    "build_L", "build_M_delta", "build_M_nabla", "wellformed_check",
    "global_section_v", "global_sections_basis",
]
