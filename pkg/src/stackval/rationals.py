"""Exact rational parsing and formatting.

Only integers and ``p/q`` literals are accepted.  Decimal literals are
refused on purpose so that no binary float ever leaks into a decision.
"""

import re
from fractions import Fraction

_RATIONAL = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")


def parse_rational(text):
    """Parse ``"3"``, ``"-2/3"`` or an int/Fraction into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if isinstance(text, float):
        raise ValueError("floats are not accepted; pass an int, a Fraction or 'p/q'")
    s = str(text).strip()
    if not _RATIONAL.match(s):
        if re.match(r"^[+-]?\d*\.\d*([eE][+-]?\d+)?$", s) and any(ch.isdigit() for ch in s):
            raise ValueError(f"decimal literal {s!r} rejected; write it as a fraction p/q")
        raise ValueError(f"not a rational literal: {s!r}")
    value = Fraction(s)
    return value


def format_rational(x):
    """Lowest-terms text form: ``"3"`` or ``"-2/3"``."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_value(x):
    """Like :func:`format_rational` but passes the infinite markers through."""
    if isinstance(x, float):
        return "inf" if x > 0 else "-inf"
    return format_rational(x)
