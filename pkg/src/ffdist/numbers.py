"""Exact decimal parsing and formatting for rationals."""

import re
from fractions import Fraction

_DECIMAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)$")


def parse_decimal(text, max_digits=None):
    """Parse a plain decimal literal into a Fraction.

    Exponent notation is rejected so that every accepted value has an
    exact finite decimal expansion.
    """
    text = text.strip()
    if not _DECIMAL.match(text):
        raise ValueError(f"not a decimal: {text!r}")
    if max_digits is not None and "." in text:
        if len(text.split(".", 1)[1]) > max_digits:
            raise ValueError(f"more than {max_digits} fractional digits: {text!r}")
    return Fraction(text)


def _terminates(den):
    for p in (2, 5):
        while den % p == 0:
            den //= p
    return den == 1


def format_decimal(value, max_digits=12):
    """Render ``value`` as the shortest decimal string.

    Values whose denominator has prime factors other than 2 and 5 have no
    finite expansion; they are rounded half-even to ``max_digits``
    fractional digits.
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    if not _terminates(value.denominator):
        scale = 10**max_digits
        value = Fraction(round(value * scale), scale)
        if value.denominator == 1:
            return str(value.numerator)
    sign = "-" if value < 0 else ""
    value = abs(value)
    digits = 0
    while (value * 10**digits).denominator != 1:
        digits += 1
    scaled = int(value * 10**digits)
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}".rstrip("0").rstrip(".")
