"""Dense univariate polynomials over exact scalars."""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .scalar import Scalar, as_scalar, conj, div, format_scalar, GaussianRational


def _strip(coeffs: Sequence[Scalar]) -> tuple:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Polynomial ``sum(coeffs[k] * w**k)`` with exact coefficients.

    Instances are immutable and hashable.  The zero polynomial has degree -1.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _strip([as_scalar(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Poly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def var(cls) -> "Poly":
        return cls._raw((0, 1))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        p = ONE
        for r in roots:
            p = p * cls._raw(_strip((-as_scalar(r), 1)))
        return p

    # basic data ---------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def lc(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "Poly":
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic form")
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return Poly._raw(tuple(div(c, lc) for c in self.coeffs))

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except TypeError:
                return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly._raw(_strip(out))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "Poly":
        if c == 0:
            return ZERO
        if c == 1:
            return self
        return Poly._raw(tuple(c * x for x in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Poly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return ZERO
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x == 0:
                    continue
                for j, y in enumerate(b):
                    out[i + j] += x * y
            return Poly._raw(_strip(out))
        try:
            c = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        lc = other.lc
        quot = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = div(c, lc)
            quot[k - dd] = q
            for j, y in enumerate(other.coeffs):
                rem[k - dd + j] -= q * y
        return Poly._raw(_strip(quot)), Poly._raw(_strip(rem[:dd]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        """True when ``self`` divides ``other``."""
        return divmod(other, self)[1].is_zero()

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ValueError(f"{other} does not divide {self}")
        return q

    # calculus and substitution ------------------------------------------
    def __call__(self, x):
        result = ZERO if isinstance(x, Poly) else 0
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def shift(self, h) -> "Poly":
        """Return ``p(w + h)``."""
        h = as_scalar(h)
        if h == 0 or len(self.coeffs) <= 1:
            return self
        return Poly._raw(_shift(self.coeffs, h))

    def derivative(self, k: int = 1) -> "Poly":
        c = self.coeffs
        if k == 0:
            return self
        if len(c) <= k:
            return ZERO
        out = []
        for j in range(k, len(c)):
            f = 1
            for t in range(j - k + 1, j + 1):
                f *= t
            out.append(f * c[j])
        return Poly._raw(_strip(out))

    def antiderivative(self) -> "Poly":
        """Antiderivative with zero constant term."""
        return Poly._raw((0,) + tuple(div(c, k + 1) for k, c in enumerate(self.coeffs)))

    def conjugate(self) -> "Poly":
        if all(not isinstance(c, GaussianRational) for c in self.coeffs):
            return self
        return Poly._raw(tuple(conj(c) for c in self.coeffs))

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        if other == 0:
            return not self.coeffs
        return self.coeffs == (other,)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("Poly", self.coeffs))
        return self._hash

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        return self.format("w")

    def format(self, var: str = "w") -> str:
        """Descending-degree text such as ``w^3 - 3*w + 1/2``."""
        if not self.coeffs:
            return "0"
        parts: list[tuple[str, str]] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            parts.append(_signed_term(c, mono))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _signed_term(c: Scalar, mono: str) -> tuple[str, str]:
    """Split ``c*mono`` into a sign and a body for sum rendering."""
    if isinstance(c, GaussianRational):
        if c.re == 0 and c.im != 1:
            if c.im < 0:
                return "-", _coef_body(-c, mono)
            return "+", _coef_body(c, mono)
        if c.re == 0:
            return "+", _coef_body(c, mono)
        body = f"({format_scalar(c)})"
        return "+", body if not mono else f"{body}*{mono}"
    sign = "-" if c < 0 else "+"
    return sign, _coef_body(abs(c), mono)


def _coef_body(c: Scalar, mono: str) -> str:
    if not mono:
        return format_scalar(c)
    if c == 1:
        return mono
    return f"{format_scalar(c)}*{mono}"


@lru_cache(maxsize=65536)
def _shift(coeffs: tuple, h) -> tuple:
    n = len(coeffs)
    out = [0] * n
    # p(w+h) = sum_k c_k sum_j C(k,j) h^(k-j) w^j
    hp = [1] * n
    for e in range(1, n):
        hp[e] = hp[e - 1] * h
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        for j in range(k + 1):
            out[j] += c * comb(k, j) * hp[k - j]
    return _strip(out)


ZERO = Poly._raw(())
ONE = Poly._raw((1,))
W = Poly._raw((0, 1))


def poly(*coeffs) -> Poly:
    """Shorthand: ``poly(c0, c1, ...)``, lowest degree first."""
    return Poly(coeffs)


def falling_factorial(x, l: int):
    """``[x]_l = x (x-1) ... (x-l+1)`` for a scalar or a :class:`Poly`."""
    if l < 0:
        raise ValueError("falling factorial needs l >= 0")
    if isinstance(x, Poly):
        result = ONE
        for i in range(l):
            result = result * (x - i)
        return result
    x = as_scalar(x)
    result = 1
    for i in range(l):
        result = result * (x - i)
    return result


@lru_cache(maxsize=1024)
def falling_poly(l: int, a=0) -> Poly:
    """``[w - a]_l`` as a polynomial in w."""
    return falling_factorial(W - a, l)


def poly_shift(f: Poly, h) -> Poly:
    """``f(w + h)`` expanded exactly."""
    return f.shift(h)
