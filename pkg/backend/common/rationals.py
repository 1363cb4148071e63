"""
Exact Rational Helpers
Parsing and formatting of rationals as "p/q" strings, and conversion
between fractions.Fraction and sympy.Rational.
"""

from fractions import Fraction
from numbers import Rational
from typing import Any, Optional

import sympy


def parse_rational(value: Any) -> Fraction:
    """
    Parse an exact rational.

    Args:
        value: int, Fraction, sympy.Rational, or a string such as "3/2" or "-4"

    Returns:
        Fraction

    Raises:
        ValueError: for floats, booleans and unparsable strings
    """
    if isinstance(value, bool):
        raise ValueError(f"Not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"Not an exact rational: {value!r}")
        return Fraction(text)
    raise ValueError(f"Not an exact rational: {value!r}")


def parse_optional_rational(value: Any) -> Optional[Fraction]:
    """Parse a rational, passing None through."""
    return None if value is None else parse_rational(value)


def format_rational(value: Fraction) -> str:
    """Format a rational as "p" or "p/q"."""
    value = parse_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_sympy(value: Any) -> sympy.Rational:
    """Convert an exact rational to sympy.Rational."""
    value = parse_rational(value)
    return sympy.Rational(value.numerator, value.denominator)


def from_sympy(value: Any) -> Fraction:
    """Convert a sympy number (must be rational) to Fraction."""
    if not isinstance(value, sympy.Rational):
        raise ValueError(f"Not a rational sympy value: {value!r}")
    return Fraction(int(value.p), int(value.q))
