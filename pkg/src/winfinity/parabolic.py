"""Degree-bounded spans of polynomials describing negative parabolic pieces.

Every span carries an explicit ambient degree ``d``: it is the
intersection of some (usually infinite-dimensional) space of polynomials
with ``C[w]_{<=d}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .dop import DOp, bracket
from .exact import W, Poly, falling_poly, rref

__all__ = [
    "PolySpan", "A_span", "g0_span_for_b", "min_parabolic_level1", "example_parabolic",
    "codim", "closure_check", "ClosureFailure", "ClosureReport",
]


@dataclass(frozen=True)
class PolySpan:
    """Reduced echelon basis, pivots at leading degrees, increasing."""

    ambient_deg: int
    basis: tuple

    @classmethod
    def from_generators(cls, gens: Iterable[Poly], d: int) -> "PolySpan":
        """Span of ``gens`` intersected with polynomials of degree ``<= d``."""
        gens = [g for g in gens if g]
        if not gens:
            return cls(d, ())
        top = max(g.degree for g in gens)
        # columns ordered from the highest degree down so pivots are leading terms
        rows = [[g.coeff(top - c) for c in range(top + 1)] for g in gens]
        red, pivots = rref(rows)
        basis = []
        for row, pc in zip(red, pivots):
            deg = top - pc
            if deg <= d:
                basis.append(Poly([row[top - k] for k in range(top + 1)]))
        basis.sort(key=lambda p: p.degree)
        return cls(d, tuple(basis))

    @classmethod
    def full(cls, d: int) -> "PolySpan":
        return cls(d, tuple(W ** k for k in range(d + 1)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [p.degree for p in self.basis]

    def contains(self, p: Poly) -> bool:
        if p.degree > self.ambient_deg:
            raise ValueError(f"degree {p.degree} exceeds the span's bound {self.ambient_deg}")
        for b in reversed(self.basis):
            if p.degree < b.degree:
                continue
            if p.degree > b.degree:
                return False
            p = p - b.scale(p.lc)
        return p.is_zero()

    def __contains__(self, p: Poly) -> bool:
        return self.contains(p)

    def truncate(self, d: int) -> "PolySpan":
        if d > self.ambient_deg:
            raise ValueError("cannot raise the degree bound of a computed span")
        return PolySpan(d, tuple(p for p in self.basis if p.degree <= d))

    def is_subspace_of(self, other: "PolySpan") -> bool:
        return all(other.contains(p) for p in self.basis)

    def closed_under_w(self) -> bool:
        """Ideal test within the bound: ``w*p`` stays in the span."""
        return all(self.contains(W * p) for p in self.basis if p.degree < self.ambient_deg)

    def format(self) -> str:
        inner = ", ".join(p.format("w") for p in self.basis)
        return f"span{{{inner}}} (deg <= {self.ambient_deg})"


def codim(span: PolySpan) -> int:
    return span.ambient_deg + 1 - span.dim


def _A_generators(n: int, k: int, top: int) -> list[Poly]:
    # f = w^j; the leading terms cancel so the element has degree j + n - 1
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    base, shifted = falling_poly(n), falling_poly(n, k)
    return [(W ** j).shift(-k) * shifted - (W ** j) * base for j in range(top - n + 2)]


def A_span(n: int, k: int, d: int) -> PolySpan:
    """``{f(w-k)[w-k]_n - f(w)[w]_n}`` up to degree d."""
    return PolySpan.from_generators(_A_generators(n, k, d), d)


def _require_divisible(n: int, b: Poly) -> None:
    if not falling_poly(n).divides(b):
        raise ValueError(f"{b} is not divisible by [w]_{n}")


def g0_span_for_b(n: int, b: Poly, d: int) -> PolySpan:
    """``[w-1]_n g b - [w]_n g(w+1) b(w+1)`` for ``deg g <= d``."""
    _require_divisible(n, b)
    left, right = falling_poly(n, 1), falling_poly(n)
    gens = []
    for m in range(d + 1):
        g = W ** m
        gens.append(left * g * b - right * g.shift(1) * b.shift(1))
    bound = max(d + n + b.degree, 0)
    return PolySpan.from_generators(gens, bound)


def min_parabolic_level1(n: int, b: Poly, d: int) -> PolySpan:
    """Degree-``d`` part of the depth-one piece generated by ``t^-1 b(D)``.

    Bracketing with ``G(D)``, ``G`` in ``C[w][w]_n``, multiplies by
    ``G(w-1) - G(w)``.  Saturate until one pass adds no pivot.
    """
    _require_divisible(n, b)
    if b.is_zero():
        raise ValueError("the generator must be nonzero")
    if b.degree > d:
        return PolySpan(d, ())
    mults = A_span(n, 1, d - b.degree).basis
    span = PolySpan.from_generators([b], d)
    while True:
        gens = list(span.basis)
        gens += [p * a for p in span.basis for a in mults if p.degree + a.degree <= d]
        new = PolySpan.from_generators(gens, d)
        if new.pivots == span.pivots:
            return new
        span = new


def example_parabolic(n: int, k: int, d: int) -> PolySpan:
    """The explicit family of negative pieces, truncated at degree d.

    Depth one is ``C[w]_n + C w[w]_n + A_{n,1}[w]_n + A_{n,1} w [w]_n``;
    depth k > 1 is ``C[w] [w-k+1]_n ... [w-1]_n [w]_n``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    fn = falling_poly(n)
    if k == 1:
        A = A_span(n, 1, max(d - n, 0)).basis if d >= n else ()
        gens = [fn, W * fn] + [a * fn for a in A] + [a * W * fn for a in A]
        return PolySpan.from_generators([g for g in gens if g.degree <= d], d)
    base = Poly.const(1)
    for i in range(k):
        base = base * falling_poly(n, i)
    return PolySpan.from_generators([base * W ** j for j in range(d - base.degree + 1)], d)


@dataclass(frozen=True)
class ClosureFailure:
    left: tuple          # (mode, poly)
    right: tuple         # (mode, poly)
    result_mode: int
    result: Poly


@dataclass(frozen=True)
class ClosureReport:
    n: int
    mode_bound: int
    d: int
    checked: int
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


Family = Callable[[int, int], PolySpan]


def closure_check(n: int, family: Family, mode_bound: int, d: int) -> ClosureReport:
    """Check subalgebra closure of ``p_-k = t^-k I_-k`` with ``p_m = g_m``.

    ``family(k, bound)`` returns ``I_-k`` up to degree ``bound``.  Brackets
    ``[p_-k, p_-l]`` and ``[p_-k, g_m]`` are taken with ``1 <= k, l <=
    mode_bound`` and ``0 <= m <= mode_bound`` on basis elements of degree
    ``<= d``; results are tested against the family at the needed degree.
    """
    fn = falling_poly(n)
    pieces = {k: family(k, d).basis for k in range(1, mode_bound + 1)}
    g_basis = [fn * W ** j for j in range(d - n + 1)] if d >= n else []
    cache: dict[tuple[int, int], PolySpan] = {}

    def target(k: int, deg: int) -> PolySpan:
        key = (k, deg)
        if key not in cache:
            cache[key] = family(k, deg)
        return cache[key]

    failures = []
    checked = 0

    def record(ka, f, kb, g, res: DOp):
        nonlocal checked
        for mode, h in res.modes.items():
            checked += 1
            if mode >= 0:
                ok = fn.divides(h)
            else:
                ok = target(-mode, max(h.degree, 0)).contains(h)
            if not ok:
                failures.append(ClosureFailure((ka, f), (kb, g), mode, h))

    for k in range(1, mode_bound + 1):
        for l in range(k, mode_bound + 1):
            for f in pieces[k]:
                for g in pieces[l]:
                    record(-k, f, -l, g, bracket(DOp({-k: f}), DOp({-l: g})))
        for m in range(0, mode_bound + 1):
            for f in pieces[k]:
                for g in g_basis:
                    record(-k, f, m, g, bracket(DOp({-k: f}), DOp({m: g})))
    return ClosureReport(n, mode_bound, d, checked, tuple(failures))
