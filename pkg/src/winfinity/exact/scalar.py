"""Exact scalars: integers, rationals and Gaussian rationals a + b*i.

Real values are kept as plain ``int`` or :class:`fractions.Fraction` so that
the common integer case stays fast; only values with a nonzero imaginary part
become :class:`GaussianRational`.  Every function here returns the narrowest
of these three representations.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]
Scalar = Union[int, Fraction, "GaussianRational"]


def _norm(q: Rational) -> Rational:
    if type(q) is Fraction and q.denominator == 1:
        return q.numerator
    return q


def _rat(x) -> Rational:
    if type(x) is int or type(x) is Fraction:
        return _norm(x)
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, (int, Fraction)):
        return _norm(Fraction(x))
    raise TypeError(f"not an exact rational: {x!r}")


class GaussianRational:
    """An element re + im*i of Q(i) with ``im != 0``.

    Use :func:`gaussian` to build values; it collapses to a real scalar when
    the imaginary part vanishes.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Rational, im: Rational):
        self.re = re
        self.im = im

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return gaussian(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(_norm(self.re + other), self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return gaussian(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(_norm(self.re - other), self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(_norm(other - self.re), -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return gaussian(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return 0
            return GaussianRational(_norm(self.re * other), _norm(self.im * other))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            d = other.re * other.re + other.im * other.im
            num = self * other.conjugate()
            return gaussian(Fraction(num.real) / d, Fraction(num.imag) / d)
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a Gaussian rational by zero")
            return GaussianRational(_norm(Fraction(self.re) / other),
                                    _norm(Fraction(self.im) / other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return div(other * self.conjugate(), self.norm2())
        return NotImplemented

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return div(1, self ** (-k))
        result: Scalar = 1
        base: Scalar = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparisons / hashing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return True

    # complex-number protocol --------------------------------------------
    @property
    def real(self) -> Rational:
        return self.re

    @property
    def imag(self) -> Rational:
        return self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Rational:
        return _norm(self.re * self.re + self.im * self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)


I = GaussianRational(0, 1)


def gaussian(re, im=0) -> Scalar:
    """Build re + im*i, returning a real scalar when ``im == 0``."""
    re = _rat(re)
    im = _rat(im)
    if im == 0:
        return re
    return GaussianRational(re, im)


def as_scalar(x) -> Scalar:
    """Coerce ``x`` to an exact scalar.

    Accepts ints, Fractions, Gaussian rationals, strings understood by
    :func:`parse_scalar`, and Python complex numbers with integral parts.
    Floats are rejected.
    """
    if type(x) is int:
        return x
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return _rat(x)
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, complex):
        if x.real.is_integer() and x.imag.is_integer():
            return gaussian(int(x.real), int(x.imag))
    raise TypeError(f"cannot represent {x!r} exactly")


def div(a: Scalar, b: Scalar) -> Scalar:
    """Exact quotient a / b (never produces a float)."""
    if isinstance(a, GaussianRational) or isinstance(b, GaussianRational):
        if not isinstance(a, GaussianRational):
            a = GaussianRational(a, 0)
        return _collapse(a / b)
    if b == 0:
        raise ZeroDivisionError("exact division by zero")
    if type(a) is int and type(b) is int:
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    return _norm(Fraction(a) / b)


def _collapse(x) -> Scalar:
    if isinstance(x, GaussianRational) and x.im == 0:
        return _norm(x.re)
    return x


def conj(x: Scalar) -> Scalar:
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return x


def re_part(x: Scalar) -> Rational:
    return x.re if isinstance(x, GaussianRational) else x


def im_part(x: Scalar) -> Rational:
    return x.im if isinstance(x, GaussianRational) else 0


def is_real(x: Scalar) -> bool:
    return not isinstance(x, GaussianRational)


def is_integer(x: Scalar) -> bool:
    if isinstance(x, GaussianRational):
        return False
    return type(x) is int or x.denominator == 1


def sort_key(x: Scalar) -> tuple:
    """Total order used for canonical printing: by real part, then imaginary."""
    return (re_part(x), im_part(x))


# text form ---------------------------------------------------------------

def _format_rational(q: Rational) -> str:
    q = _norm(q)
    if type(q) is int:
        return str(q)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x: Scalar) -> str:
    """Canonical text: ``p/q``, ``p/q*i``, or ``a + b*i`` for mixed values."""
    if not isinstance(x, GaussianRational):
        return _format_rational(x)
    if x.im == 1:
        im = "i"
    elif x.im == -1:
        im = "-i"
    else:
        im = f"{_format_rational(x.im)}*i"
    if x.re == 0:
        return im
    if im.startswith("-"):
        return f"{_format_rational(x.re)} - {im[1:]}"
    return f"{_format_rational(x.re)} + {im}"


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^\s*(?:(?P<re>{_RAT})\s*(?:(?P<sgn>[+-])\s*(?P<im>\d+(?:/\d+)?)?\s*\*?\s*i)?"
    rf"|(?P<im_only>[+-]?(?:\d+(?:/\d+)?)?)\s*\*?\s*i)\s*$"
)


def _parse_rational(text: str) -> Rational:
    return _norm(Fraction(text))


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical scalar text produced by :func:`format_scalar`."""
    m = _SCALAR_RE.match(text)
    if not m:
        raise ValueError(f"not a scalar literal: {text!r}")
    if m.group("re") is not None:
        re_val = _parse_rational(m.group("re"))
        if m.group("sgn") is None:
            return re_val
        im_val = _parse_rational(m.group("im") or "1")
        if m.group("sgn") == "-":
            im_val = -im_val
        return gaussian(re_val, im_val)
    im_txt = m.group("im_only")
    if im_txt in ("", "+"):
        return I
    if im_txt == "-":
        return -I
    return gaussian(0, _parse_rational(im_txt))
