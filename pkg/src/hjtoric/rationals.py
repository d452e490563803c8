"""Parsing and formatting of exact rationals as "n/d" strings for JSON/CLI."""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError


def parse_rational(value) -> Fraction:
    """Accepts int, Fraction, or an exact string like "3", "-7/2"."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not an exact rational: {value!r}") from exc
    raise DomainError(f"not an exact rational: {value!r}")


def rational_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def rational_json(x: Fraction | int):
    """Ints stay ints; everything else becomes an "n/d" string."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else rational_str(x)
