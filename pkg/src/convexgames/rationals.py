"""Exact rationals: coercion, parsing and canonical rendering.

``fractions.Fraction`` already keeps numerator and denominator in lowest terms
with a positive denominator, so it is used directly as the rational type.
Floats are refused everywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from .errors import InputError

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; reject floats."""
    if isinstance(value, bool):
        raise InputError(f"boolean is not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse(value)
    raise InputError(f"expected an exact rational, got {type(value).__name__} {value!r}")


def parse(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (optional sign, q > 0)."""
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise InputError(f"not a rational literal: {text!r}")
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise InputError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def render(q: Fraction) -> str:
    """Canonical text: ``"p/q"`` in lowest terms, integers without ``"/1"``."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
