"""Generalized Gabidulin codes over cyclic extensions of F_q(x).

Exact arithmetic throughout: finite fields, rational functions, Kummer and
Artin-Schreier extensions, the skew polynomial ring L[Z; θ], rank weights,
encoding and linearized-reconstruction decoding.
"""

from .code import (
    DecodeResult,
    GabCode,
    build_code,
    decode,
    encode,
    expand_matrix,
    random_error,
    random_message,
    rank_distance,
    rank_weight,
    unique_radius,
)
from .config import CodeConfig, load_fixture
from .errors import DecodingFailure, FieldMismatchError, ParseError, ValidationError
from .extension import CyclicExtension, LElement, build_artin_schreier, build_kummer
from .field import FqContext, FqElement
from .linalg import KMatrix, rank_over_K
from .ratfunc import Poly, RatFunc
from .skew import ThetaPoly, annihilator, min_ideal_generator

__version__ = "0.1.0"

__all__ = [
    "FqContext", "FqElement", "Poly", "RatFunc",
    "CyclicExtension", "LElement", "build_kummer", "build_artin_schreier",
    "ThetaPoly", "annihilator", "min_ideal_generator",
    "KMatrix", "rank_over_K",
    "GabCode", "DecodeResult", "build_code", "encode", "decode", "expand_matrix",
    "rank_weight", "rank_distance", "unique_radius", "random_message", "random_error",
    "CodeConfig", "load_fixture",
    "DecodingFailure", "FieldMismatchError", "ParseError", "ValidationError",
]
