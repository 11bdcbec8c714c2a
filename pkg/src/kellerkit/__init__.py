"""Exact tools for polynomial endomorphisms of Q[x1..xn]."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .criteria import Certificate, Rule, classify
from .endo import GeneratorSpec, PolyMap, compose, generate_family, invert, is_keller
from .errors import KellerkitError
from .extension import (coordinate_minpoly, extension_degree, subalgebra_membership,
                        verify_formanek)
from .groebner import GroebnerBasis, MonomialOrder, buchberger
from .polycore import Polynomial, format_polynomial, jacobian_det, parse_polynomial

__all__ = [
    "BACKEND",
    "Certificate",
    "GeneratorSpec",
    "GroebnerBasis",
    "KellerkitError",
    "MonomialOrder",
    "PolyMap",
    "Polynomial",
    "Rule",
    "buchberger",
    "classify",
    "compose",
    "coordinate_minpoly",
    "extension_degree",
    "format_polynomial",
    "generate_family",
    "invert",
    "is_keller",
    "jacobian_det",
    "parse_polynomial",
    "subalgebra_membership",
    "verify_formanek",
]
