"""Exact rational time values: parsing and display helpers.

All time quantities in this package (observation times, horizons, interval
bounds, lookahead budgets) are `fractions.Fraction` values end to end, so
interval-equality checks never suffer float drift.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def parse_rational(text) -> Fraction:
    """Parse a decimal or fraction literal ("2", "2.5", "3/4") to a Fraction.

    Integers are accepted as-is; floats are rejected because their binary
    representation is not an exact contract.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {text!r}") from exc
    raise ValueError(f"not a rational literal: {text!r}")


def format_rational(value: Fraction, decimal: bool = False) -> str:
    """Render a Fraction as "p/q" (or "p" for integers).

    With decimal=True, values whose denominator divides a power of ten are
    printed in fixed point ("1.25"); anything else falls back to "p/q".
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    if decimal:
        den = value.denominator
        for k in range(1, 30):
            if 10**k % den == 0:
                scaled = value.numerator * (10**k // den)
                sign = "-" if scaled < 0 else ""
                digits = str(abs(scaled)).rjust(k + 1, "0")
                return f"{sign}{digits[:-k]}.{digits[-k:]}"
    return f"{value.numerator}/{value.denominator}"


def fraction_gcd(values) -> Fraction:
    """Greatest common divisor of a collection of Fractions (0 if all zero)."""
    result = Fraction(0)
    for v in values:
        v = abs(Fraction(v))
        if v == 0:
            continue
        if result == 0:
            result = v
        else:
            num = gcd(result.numerator * v.denominator, v.numerator * result.denominator)
            result = Fraction(num, result.denominator * v.denominator)
    return result
