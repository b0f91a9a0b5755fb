"""Quasipolynomials ``sum_r p_r(x) e^{r x}`` with exact exponents."""

from __future__ import annotations

from typing import Iterable, Mapping

from .poly import ONE, ZERO, Poly, _signed_term, falling_poly
from .scalar import Scalar, as_scalar, div, format_scalar, sort_key
from .series import TruncSeries


class QuasiPoly:
    """Finite map exponent -> nonzero multiplicity polynomial (in x)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict = {}
        for r, p in items:
            r = as_scalar(r)
            if not isinstance(p, Poly):
                p = Poly.const(p)
            acc[r] = acc[r] + p if r in acc else p
        self._terms = {r: p for r, p in acc.items() if p}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "QuasiPoly":
        q = object.__new__(cls)
        q._terms = terms
        q._hash = None
        return q

    @classmethod
    def exp(cls, r, p=1) -> "QuasiPoly":
        """``p(x) e^{r x}``."""
        return cls([(r, p)])

    @classmethod
    def const(cls, c) -> "QuasiPoly":
        return cls([(0, c)])

    @classmethod
    def x(cls) -> "QuasiPoly":
        return cls([(0, Poly.var())])

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """(exponent, multiplicity) pairs in canonical order (descending exponent)."""
        return sorted(self._terms.items(), key=lambda kv: sort_key(kv[0]), reverse=True)

    def exponents(self) -> list:
        return [r for r, _ in self.items()]

    def multiplicity(self, r) -> Poly:
        return self._terms.get(as_scalar(r), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, QuasiPoly):
            try:
                other = QuasiPoly.const(as_scalar(other))
            except TypeError:
                return NotImplemented
        out = dict(self._terms)
        for r, p in other._terms.items():
            s = out.get(r)
            s = p if s is None else s + p
            if s:
                out[r] = s
            else:
                out.pop(r, None)
        return QuasiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return QuasiPoly._raw({r: -p for r, p in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, QuasiPoly):
            other = QuasiPoly.const(as_scalar(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QuasiPoly):
            out: dict = {}
            for r, p in self._terms.items():
                for s, q in other._terms.items():
                    key = r + s
                    out[key] = out[key] + p * q if key in out else p * q
            return QuasiPoly._raw({r: p for r, p in out.items() if p})
        if isinstance(other, Poly):
            return self * QuasiPoly([(0, other)])
        try:
            c = as_scalar(other)
        except TypeError:
            return NotImplemented
        if c == 0:
            return QuasiPoly._raw({})
        return QuasiPoly._raw({r: p.scale(c) for r, p in self._terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QuasiPoly":
        result = QuasiPoly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def derivative(self) -> "QuasiPoly":
        return apply_diffop(Poly.var(), self)

    def value_at_zero(self) -> Scalar:
        return sum((p.coeff(0) for p in self._terms.values()), 0)

    def to_series(self, K: int) -> TruncSeries:
        return quasipoly_to_series(self, K)

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, QuasiPoly):
            return self._terms == other._terms
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self == QuasiPoly.const(other)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"QuasiPoly({self.format()!r})"

    def __str__(self):
        return self.format()

    def format(self) -> str:
        """Text form such as ``(x^2 + 1)*e(1/2) - 1``; parseable back."""
        if not self._terms:
            return "0"
        pieces: list[tuple[str, str]] = []
        for r, p in self.items():
            e = "" if r == 0 else f"e({format_scalar(r)})"
            if r == 0 or _nterms(p) == 1:
                for k in range(p.degree, -1, -1):
                    c = p.coeffs[k]
                    if c == 0:
                        continue
                    mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
                    body = "*".join(part for part in (mono, e) if part)
                    pieces.append(_signed_term(c, body))
            else:
                pieces.append(("+", f"({p.format('x')})*{e}"))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


def _nterms(p: Poly) -> int:
    return sum(1 for c in p.coeffs if c != 0)


def quasipoly_to_series(q: QuasiPoly, K: int) -> TruncSeries:
    """EGF coefficients ``c_l = q^{(l)}(0)`` for ``l <= K``.

    For ``p(x) e^{rx}`` the l-th derivative at 0 is ``sum_j [l]_j p_j r^(l-j)``.
    """
    out = [0] * (K + 1)
    for r, p in q._terms.items():
        rp = [1] * (K + 1)
        for e in range(1, K + 1):
            rp[e] = rp[e - 1] * r
        for l in range(K + 1):
            acc = 0
            ff = 1  # [l]_j
            for j, pj in enumerate(p.coeffs):
                if j > l:
                    break
                if j > 0:
                    ff *= l - j + 1
                if pj != 0:
                    acc += ff * pj * rp[l - j]
            out[l] += acc
    return TruncSeries._raw(tuple(out))


def apply_diffop(c: Poly, target):
    """Apply ``c(d/dx)`` to a :class:`QuasiPoly` or a :class:`TruncSeries`."""
    if isinstance(target, TruncSeries):
        return target.apply_diffop(c)
    out: dict = {}
    for r, p in target._terms.items():
        cr = c.shift(r)  # c(d/dx) e^{rx} p = e^{rx} c(d/dx + r) p
        acc = ZERO
        for j, cj in enumerate(cr.coeffs):
            if j > p.degree:
                break
            if cj != 0:
                acc = acc + p.derivative(j).scale(cj)
        if acc:
            out[r] = acc
    return QuasiPoly._raw(out)


def min_annihilator(q: QuasiPoly) -> Poly:
    """Monic ``prod_r (w - r)^(deg p_r + 1)``, the least annihilating operator."""
    result = ONE
    for r, p in q.items():
        result = result * Poly.from_roots([r] * (p.degree + 1))
    return result


def series_div_expm1(q, K: int) -> TruncSeries:
    """Series of ``q / (e^x - 1)`` to order K; q may be a QuasiPoly or a series."""
    if isinstance(q, QuasiPoly):
        s = quasipoly_to_series(q, K + 1)
    else:
        s = q.truncate(K + 1)
    if s[0] != 0:
        raise ValueError("q(0) must vanish to divide by e^x - 1")
    return s.div_expm1()


def _invert_on_polys(Q: Poly, target: Poly) -> Poly:
    """Solve ``Q(d/dx) p = target`` for polynomial p, given ``Q(0) != 0``."""
    # d/dx is nilpotent on polynomials of degree <= m, so invert Q as a power
    # series in d truncated at degree m.
    m = target.degree
    if m < 0:
        return ZERO
    q0 = Q.coeff(0)
    inv = [div(1, q0)]
    for k in range(1, m + 1):
        acc = 0
        for j in range(1, min(k, Q.degree) + 1):
            acc += Q.coeffs[j] * inv[k - j]
        inv.append(div(-acc, q0))
    out = ZERO
    for k, ck in enumerate(inv):
        if ck != 0:
            out = out + target.derivative(k).scale(ck)
    return out


def solve_falling_diffop(F: QuasiPoly, n: int) -> QuasiPoly:
    """Canonical phi with ``[d/dx]_{n+1} phi = F`` and ``phi(0) = 0``.

    The kernel is fixed by requiring the multiplicity at each exponent
    k = 1..n to have zero constant term; the constant at exponent 0 is then
    forced by ``phi(0) = 0``.
    """
    P = falling_poly(n + 1)
    out: dict = {}
    for r, p in F._terms.items():
        Q = P.shift(r)  # [d + r]_{n+1}
        if Q.coeff(0) != 0:
            sol = _invert_on_polys(Q, p)
        else:
            # r in {0..n}: the root 0 of Q is simple, Q = w * R with R(0) != 0
            R = Q.exact_div(Poly.var())
            sol = _invert_on_polys(R, p).antiderivative()
        if sol:
            out[r] = sol
    # Kernel exponents 1..n already have zero constant term (antiderivative).
    total = sum((p.coeff(0) for p in out.values()), 0)
    if total != 0:
        out[0] = out.get(0, ZERO) - total
        if not out[0]:
            del out[0]
    return QuasiPoly._raw(out)
