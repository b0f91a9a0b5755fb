"""Truncated power series in the exponential-generating-function convention.

A :class:`TruncSeries` of order K stores ``c_0 .. c_K`` and stands for
``sum c_l x^l / l!``.  In this convention ``d/dx`` is a left shift of the
coefficient list, which is why most operations here are short.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Sequence

from .poly import Poly
from .scalar import Scalar, as_scalar, div


class TruncSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        coeffs = tuple(as_scalar(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a truncated series needs at least one coefficient")
        self.coeffs = coeffs

    @classmethod
    def _raw(cls, coeffs: tuple) -> "TruncSeries":
        s = object.__new__(cls)
        s.coeffs = coeffs
        return s

    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls._raw((0,) * (order + 1))

    @classmethod
    def exp(cls, r, order: int) -> "TruncSeries":
        """Series of ``e^{r x}``: coefficients r^l."""
        r = as_scalar(r)
        out = [1]
        for _ in range(order):
            out.append(out[-1] * r)
        return cls._raw(tuple(out))

    @classmethod
    def expm1(cls, order: int) -> "TruncSeries":
        return cls._raw((0,) + (1,) * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, l: int) -> Scalar:
        return self.coeffs[l]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncSeries._raw(self.coeffs[: order + 1])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        k = min(len(self.coeffs), len(other.coeffs))
        return TruncSeries._raw(tuple(a + b for a, b in zip(self.coeffs[:k], other.coeffs[:k])))

    def __neg__(self):
        return TruncSeries._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def scale(self, c) -> "TruncSeries":
        return TruncSeries._raw(tuple(c * x for x in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(as_scalar(other))
        k = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for n in range(k + 1):
            acc = 0
            for j in range(n + 1):
                if a[j] != 0 and b[n - j] != 0:
                    acc += comb(n, j) * a[j] * b[n - j]
            out.append(acc)
        return TruncSeries._raw(tuple(out))

    __rmul__ = __mul__

    def derivative(self) -> "TruncSeries":
        if self.order == 0:
            raise ValueError("derivative of an order-0 series has no coefficients left")
        return TruncSeries._raw(self.coeffs[1:])

    def apply_diffop(self, c: Poly) -> "TruncSeries":
        """``c(d/dx)`` applied; the order drops by ``deg c``."""
        d = c.degree
        if d < 0:
            return TruncSeries.zero(self.order)
        if d > self.order:
            raise ValueError(f"operator of degree {d} exceeds series order {self.order}")
        s = self.coeffs
        out = []
        for l in range(self.order - d + 1):
            acc = 0
            for j, cj in enumerate(c.coeffs):
                if cj != 0:
                    acc += cj * s[l + j]
            out.append(acc)
        return TruncSeries._raw(tuple(out))

    def mul_exp(self, r) -> "TruncSeries":
        """Multiply by ``e^{r x}``."""
        return self * TruncSeries.exp(r, self.order)

    def div_expm1(self) -> "TruncSeries":
        """The series S with ``(e^x - 1) S = self``; order drops by one.

        Requires a vanishing constant term.
        """
        q = self.coeffs
        if q[0] != 0:
            raise ValueError("division by e^x - 1 needs a zero constant term")
        K = self.order - 1
        out: list = []
        for n in range(K + 1):
            # q_{n+1} = sum_{k=1}^{n+1} C(n+1,k) S_{n+1-k}
            acc = q[n + 1]
            for j in range(n):
                if out[j] != 0:
                    acc -= comb(n + 1, j) * out[j]
            out.append(div(acc, n + 1))
        return TruncSeries._raw(tuple(out))

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return self.coeffs == other.coeffs
        if isinstance(other, Sequence):
            return len(other) == len(self.coeffs) and all(
                a == b for a, b in zip(self.coeffs, other))
        return NotImplemented

    def __hash__(self):
        return hash(("TruncSeries", self.coeffs))

    def __repr__(self):
        return f"TruncSeries({list(self.coeffs)!r})"
