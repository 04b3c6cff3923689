"""Exact computations with Z-graded rings B(G, H, J) inside skew Laurent
polynomial rings over a line with an automorphism of infinite order."""

__version__ = "0.1.0"

from .cycles import (
    Cycle,
    Z,
    classify_sequence,
    cycle_abs,
    is_pleasantly_alternating,
    iterate,
    parse_cycle,
    pos_part,
    shift,
)
from .exact import Frac, LaurentPoly, Poly, poly_gcd, resultant
from .graded import (
    GradedPieces,
    GradedRingSpec,
    SkewElement,
    gwa_embed,
    piece_generator,
    psi_pieces,
    skew_mul,
    translate_product,
)
from .lonely import is_lonely, is_lonely_poly
from .morita import build_L, check_morita, cycle_from_S, end_of_module, s_from_cycle
from .parsing import ParseError, parse_poly
from .sigma import ADDITIVE, MULTIPLICATIVE, OrbitPoint, SigmaLine, TorusDescriptor
from .verification import Report

__all__ = [
    "Cycle",
    "Z",
    "shift",
    "iterate",
    "pos_part",
    "cycle_abs",
    "is_pleasantly_alternating",
    "parse_cycle",
    "classify_sequence",
    "Poly",
    "Frac",
    "LaurentPoly",
    "poly_gcd",
    "resultant",
    "SigmaLine",
    "ADDITIVE",
    "MULTIPLICATIVE",
    "OrbitPoint",
    "TorusDescriptor",
    "GradedRingSpec",
    "GradedPieces",
    "SkewElement",
    "skew_mul",
    "translate_product",
    "piece_generator",
    "psi_pieces",
    "gwa_embed",
    "is_lonely",
    "is_lonely_poly",
    "cycle_from_S",
    "s_from_cycle",
    "build_L",
    "end_of_module",
    "check_morita",
    "ParseError",
    "parse_poly",
    "Report",
]
