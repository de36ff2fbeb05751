"""Exact Gaussian rationals: numbers a + b*i with a, b in Q.

All matrix entries in the package live in this field, so every identity the
verifier checks is an exact equality of canonical forms.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = ["GaussRational", "ScalarParseError", "parse_scalar", "as_gauss", "I"]


class ScalarParseError(ValueError):
    """Raised for malformed scalar text; ``pos`` is the offending offset."""

    def __init__(self, text: str, pos: int, reason: str):
        self.text = text
        self.pos = pos
        super().__init__(f"{reason} at position {pos} in {text!r}")


class GaussRational:
    """Immutable ``re + im*i`` with :class:`fractions.Fraction` parts.

    Fractions are always in lowest terms with a positive denominator, so
    structural equality is numeric equality.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction] = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("GaussRational division by zero")
        num = self * other.conjugate()
        return GaussRational(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (1 / self) ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- text ----------------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"GaussRational({format_scalar(self)!r})"


def _coerce(x):
    if isinstance(x, GaussRational):
        return x
    if isinstance(x, (int, Rational)):
        return GaussRational(x)
    if isinstance(x, complex) and x.real.is_integer() and x.imag.is_integer():
        return GaussRational(int(x.real), int(x.imag))
    return NotImplemented


def as_gauss(x) -> GaussRational:
    """Convert ints, Fractions, strings and Gaussian-integer complexes."""
    if isinstance(x, str):
        return parse_scalar(x)
    g = _coerce(x)
    if g is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")
    return g


ZERO = GaussRational(0)
ONE = GaussRational(1)
I = GaussRational(0, 1)


def _format_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x: GaussRational) -> str:
    """Canonical text ``a/b+c/di``; the inverse of :func:`parse_scalar`."""
    if x.im == 0:
        return _format_fraction(x.re)
    if x.im == 1:
        im = "i"
    elif x.im == -1:
        im = "-i"
    else:
        im = _format_fraction(x.im) + "i"
    if x.re == 0:
        return im
    sign = "" if im.startswith("-") else "+"
    return _format_fraction(x.re) + sign + im


# a signed term: sign, optional rational magnitude, optional trailing i
_TERM = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*(i?)")


def parse_scalar(text: str) -> GaussRational:
    """Parse ``±a/b ± c/d i`` (either part optional, ``i`` alone allowed)."""
    pos = 0
    n = len(text)
    re_part = Fraction(0)
    im_part = Fraction(0)
    seen_re = seen_im = False
    terms = 0
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TERM.match(text, pos)
        sign, mag, unit = m.group(1), m.group(2), m.group(3)
        if not mag and not unit:
            raise ScalarParseError(text, pos, "expected a number or 'i'")
        if terms and not sign:
            raise ScalarParseError(text, m.start(2) if mag else m.start(3), "missing sign between terms")
        if mag is not None and mag.endswith("/0"):
            raise ScalarParseError(text, m.start(2), "zero denominator")
        value = Fraction(mag) if mag else Fraction(1)
        if sign == "-":
            value = -value
        if unit:
            if seen_im:
                raise ScalarParseError(text, pos, "duplicate imaginary part")
            im_part, seen_im = value, True
        else:
            if seen_re or seen_im:
                raise ScalarParseError(text, pos, "real part must come first and once")
            re_part, seen_re = value, True
        terms += 1
        pos = m.end()
        if terms > 2:
            raise ScalarParseError(text, pos, "too many terms")
    if terms == 0:
        raise ScalarParseError(text, 0, "empty scalar")
    return GaussRational(re_part, im_part)
