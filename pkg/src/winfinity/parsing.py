"""Text parsers for operators, quasipolynomials and polynomials.

All three grammars share one shape::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('+' | '-') factor | power
    power  := atom ('^' int)?
    atom   := name | number | 'i' | '(' expr ')'

Numbers may be written ``p/q``.  Each front end decides which names are
atoms, how products are formed and which powers are legal.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .dop import DOp, compose
from .exact import I, W, Poly, QuasiPoly
from .exact.scalar import _norm

__all__ = ["ParseError", "parse_operator", "parse_quasipoly", "parse_poly", "parse_number"]


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


_TOKEN = re.compile(r"(\d+(?:/\d+)?)|([A-Za-z_]\w*)|(\S)")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    for m in _TOKEN.finditer(text):
        if m.group(1):
            out.append(("num", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(("name", m.group(2), m.start(2)))
        else:
            ch, at = m.group(3), m.start(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", at, text)
            out.append(("op", ch, at))
    out.append(("end", "", len(text)))
    return out


class _Parser:
    """Shared recursive descent; subclasses supply atoms and arithmetic."""

    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    # token helpers
    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def at(self, kind: str, value: str | None = None) -> bool:
        k, v, _ = self.peek()
        return k == kind and (value is None or v == value)

    def expect(self, kind: str, value: str | None = None):
        if not self.at(kind, value):
            _, v, pos = self.peek()
            want = value or kind
            got = v or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", pos, self.text)
        return self.take()

    def fail(self, message: str, pos: int):
        raise ParseError(message, pos, self.text)

    # grammar
    def parse(self):
        if self.at("end"):
            self.fail("empty expression", 0)
        val = self.expr()
        if not self.at("end"):
            _, v, pos = self.peek()
            self.fail(f"unexpected {v!r}", pos)
        return val

    def expr(self):
        val = self.term()
        while self.at("op", "+") or self.at("op", "-"):
            op = self.take()[1]
            rhs = self.term()
            val = self.add(val, rhs) if op == "+" else self.add(val, self.neg(rhs))
        return val

    def term(self):
        val = self.factor()
        while self.at("op", "*"):
            pos = self.take()[2]
            rhs = self.factor()
            val = self.mul(val, rhs, pos)
        return val

    def factor(self):
        if self.at("op", "-"):
            self.take()
            return self.neg(self.factor())
        if self.at("op", "+"):
            self.take()
            return self.factor()
        return self.power()

    def power(self):
        start = self.peek()[2]
        kind, base = self.atom()
        if not self.at("op", "^"):
            return base
        pos = self.take()[2]
        sign = 1
        if self.at("op", "-"):
            self.take()
            sign = -1
        tok = self.expect("num")
        if "/" in tok[1]:
            self.fail("exponent must be an integer", tok[2])
        k = sign * int(tok[1])
        return self.pow(kind, base, k, pos if k < 0 else start)

    def atom(self):
        kind, v, pos = self.peek()
        if kind == "op" and v == "(":
            self.take()
            val = self.expr()
            self.expect("op", ")")
            return "group", val
        if kind == "num":
            self.take()
            return "scalar", self.const(_norm(Fraction(v)))
        if kind == "name":
            self.take()
            if v == "i":
                return "scalar", self.const(I)
            return self.name(v, pos)
        self.fail(f"unexpected {v or 'end of input'!r}", pos)

    # hooks
    def const(self, c):
        raise NotImplementedError

    def name(self, v: str, pos: int):
        self.fail(f"unknown name {v!r}", pos)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b, pos):
        return a * b

    def pow(self, kind, base, k, pos):
        if k < 0:
            self.fail(f"negative power of a {kind}", pos)
        out = self.const(1)
        for _ in range(k):
            out = self.mul(out, base, pos)
        return out


class _ConstantOnly(_Parser):
    def const(self, c):
        return c


def parse_number(text: str):
    """A constant expression such as ``-1/2``, ``2*i`` or ``(1 + i)*3``."""
    return _ConstantOnly(text).parse()


class _OperatorParser(_Parser):
    def const(self, c):
        return DOp({0: Poly.const(c)})

    def name(self, v, pos):
        if v == "t":
            return "t", DOp({1: Poly.const(1)})
        if v == "D":
            return "D", DOp({0: W})
        if v == "C":
            return "C", DOp({}, 1)
        self.fail(f"unknown name {v!r}", pos)

    @staticmethod
    def _scalar_of(a: DOp):
        if a.central == 0 and set(a.modes) <= {0} and a.mode(0).degree <= 0:
            return a.mode(0).coeff(0)
        return None

    def mul(self, a, b, pos):
        if a.central == 0 and b.central == 0:
            return compose(a, b)
        ca, cb = self._scalar_of(a), self._scalar_of(b)
        if ca is not None:
            return b.scale(ca)
        if cb is not None:
            return a.scale(cb)
        self.fail("C cannot appear inside a product", pos)

    def pow(self, kind, base, k, pos):
        if kind == "t":
            return DOp({k: Poly.const(1)})
        if kind == "C" and k != 1:
            self.fail("C cannot be raised to a power", pos)
        if kind == "C":
            return base
        return super().pow(kind, base, k, pos)


def parse_operator(text: str) -> DOp:
    """Parse ``t``, ``D``, ``C`` expressions into normal form."""
    return _OperatorParser(text).parse()


class _QuasiParser(_Parser):
    def const(self, c):
        return QuasiPoly.const(c)

    def name(self, v, pos):
        if v == "x":
            return "x", QuasiPoly.x()
        if v == "e":
            self.expect("op", "(")
            inner = self.expr()
            self.expect("op", ")")
            if inner.exponents() not in ([], [0]) or inner.multiplicity(0).degree > 0:
                self.fail("exponent must be a constant", pos)
            return "exp", QuasiPoly.exp(inner.value_at_zero())
        self.fail(f"unknown name {v!r}", pos)


def parse_quasipoly(text: str) -> QuasiPoly:
    """Parse sums of ``poly(x)*e(r)``; a bare polynomial has exponent 0."""
    return _QuasiParser(text).parse()


class _PolyParser(_Parser):
    def __init__(self, text: str, var: str):
        super().__init__(text)
        self.var = var

    def const(self, c):
        return Poly.const(c)

    def name(self, v, pos):
        if v == self.var:
            return "var", W
        self.fail(f"unknown name {v!r}", pos)


def parse_poly(text: str, var: str = "w") -> Poly:
    return _PolyParser(text, var).parse()
