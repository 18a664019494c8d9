"""Affine Deligne-Lusztig sets for GL_2 in the Bruhat-Tits tree, with
exact finite-field arithmetic, brute-force enumeration and the closed-form
oracles they are checked against."""

from .errors import (
    AdlvError,
    AlcoveInsideSubcomplex,
    CoordinateExcluded,
    DivisionByZero,
    EmptyADLV,
    InvalidCharacter,
    InvalidTarget,
    PrecisionExhausted,
    SingularBasis,
    UnsupportedSubgroup,
)
from .ff import FieldCtx, FieldElem, enumerate_field, field, frobenius
from .series import TruncatedSeries, format_series, invert, parse_series, sigma_series, valuation

__version__ = "0.1.0"
