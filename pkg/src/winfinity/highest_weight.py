"""Highest weights of the order-n subalgebras and their first-level data.

A weight is stored through a quasipolynomial ``phi`` with ``phi(0) = 0``;
its labels are the EGF coefficients of ``[d/dx]_n (phi / (e^x - 1))`` and
``lambda(C) = c``.  Everything here is exact; when only a label prefix is
available the answers are certificates valid to the order supplied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .exact import (
    W,
    Poly,
    QuasiPoly,
    TruncSeries,
    apply_diffop,
    as_scalar,
    detect_recurrence,
    div,
    falling_factorial,
    falling_poly,
    is_integer,
    is_real,
    min_annihilator,
    series_div_expm1,
    solve_falling_diffop,
)
from .exact.scalar import Scalar, re_part

__all__ = [
    "HighestWeight", "LabelSeq", "Level1Vector", "Level1Result", "ExponentData",
    "QuasifiniteVerdict", "ExponentRootReport", "UnitaryVerdict", "SingularWeightError",
    "labels_from_phi", "F_series", "quasifinite_check", "phi_from_F", "char_poly",
    "exponents", "exponent_root_check", "gamma_lift", "lambda_eval", "singular_check",
    "level1_act", "S_operator", "gram_level1", "classify_exponents", "unitary_classify",
]


class SingularWeightError(ValueError):
    """The requested construction degenerates at this weight."""


@dataclass(frozen=True)
class LabelSeq:
    n: int
    deltas: tuple

    @property
    def order(self) -> int:
        return len(self.deltas) - 1

    def series(self) -> TruncSeries:
        return TruncSeries(self.deltas)


@dataclass(frozen=True, eq=False)
class HighestWeight:
    """Order ``n``, central charge ``c`` and canonical ``phi``.

    Any representative with ``phi(0) = 0`` may be passed; it is replaced
    by the canonical solution of ``[d/dx]_(n+1) phi = F`` which has the
    same labels.
    """

    n: int
    c: Scalar
    phi: QuasiPoly
    _labels: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be >= 0")
        object.__setattr__(self, "c", as_scalar(self.c))
        phi = self.phi if isinstance(self.phi, QuasiPoly) else QuasiPoly(self.phi)
        if phi.value_at_zero() != 0:
            raise ValueError(f"phi must vanish at 0, got phi(0) = {phi.value_at_zero()}")
        F = apply_diffop(falling_poly(self.n + 1), phi)
        object.__setattr__(self, "phi", solve_falling_diffop(F, self.n))

    def __eq__(self, other):
        if not isinstance(other, HighestWeight):
            return NotImplemented
        return (self.n, self.c, self.phi) == (other.n, other.c, other.phi)

    def __hash__(self):
        return hash((self.n, self.c, self.phi))

    @property
    def F(self) -> QuasiPoly:
        return apply_diffop(falling_poly(self.n + 1), self.phi)

    def labels(self, K: int) -> LabelSeq:
        best = max((k for k in self._labels if k >= K), default=None)
        if best is None:
            self._labels[K] = labels_from_phi(self, K, _cache=False)
            best = K
        seq = self._labels[best]
        return seq if best == K else LabelSeq(self.n, seq.deltas[:K + 1])

    def delta(self, l: int) -> Scalar:
        return self.labels(max(l, 8)).deltas[l]


def labels_from_phi(hw: HighestWeight, K: int, _cache: bool = True) -> LabelSeq:
    """``Delta_0..Delta_K`` from ``[d/dx]_n (phi / (e^x - 1))``."""
    if _cache:
        return hw.labels(K)
    n = hw.n
    gamma = series_div_expm1(hw.phi, K + n)
    return LabelSeq(n, apply_diffop(falling_poly(n), gamma).coeffs)


def F_series(labels: LabelSeq) -> TruncSeries:
    """``n Delta + d/dx((e^x - 1) Delta)`` to order ``K - 1``."""
    delta = labels.series()
    K = labels.order
    if K < 1:
        return TruncSeries(())
    prod = (TruncSeries.expm1(K) * delta).derivative()
    return delta.truncate(K - 1).scale(labels.n) + prod


@dataclass(frozen=True)
class QuasifiniteVerdict:
    quasifinite: bool
    certificate: Poly | None
    verified_to_order: int


def quasifinite_check(labels: LabelSeq, max_deg: int) -> QuasifiniteVerdict:
    """Bounded search for ``f`` with ``f(d/dx) [d/dx - 1]_(n-1) F = 0``.

    For ``n = 0`` there is no prefix and the search runs on F itself.
    """
    F = F_series(labels)
    G = F if labels.n == 0 else apply_diffop(falling_poly(labels.n - 1, 1), F)
    cert = detect_recurrence(G, max_deg)
    if cert is None:
        return QuasifiniteVerdict(False, None, G.order)
    return QuasifiniteVerdict(True, cert.annihilator, cert.verified_to_order)


def phi_from_F(F: QuasiPoly, n: int, c) -> HighestWeight:
    return HighestWeight(n, c, solve_falling_diffop(F, n))


def char_poly(hw: HighestWeight) -> Poly:
    """Monic ``b = [w]_n a`` of minimal degree with ``t^-1 b(D) v`` singular.

    For ``n >= 1``, ``a`` is the minimal annihilator of
    ``[d/dx - 1]_(n-1) F``.  For ``n = 0`` the central charge enters and
    ``b`` is the minimal annihilator of ``phi + c``.
    """
    if hw.n == 0:
        return min_annihilator(hw.phi + hw.c)
    G = apply_diffop(falling_poly(hw.n - 1, 1), hw.F)
    return falling_poly(hw.n) * min_annihilator(G)


@dataclass(frozen=True)
class ExponentData:
    terms: tuple  # of (r, p_r)

    @property
    def central_charge(self) -> Scalar:
        return sum((p.coeff(0) for _, p in self.terms), 0)

    def as_quasipoly(self) -> QuasiPoly:
        return QuasiPoly(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)


def exponents(hw: HighestWeight) -> ExponentData:
    """Distinct-exponent decomposition of ``phi + c``."""
    return ExponentData(tuple((hw.phi + hw.c).items()))


@dataclass(frozen=True)
class ExponentRootReport:
    ok: bool
    root_poly: Poly
    entries: tuple  # (r, status) with status in {"root", "exempt", "not-a-root"}


def exponent_root_check(hw: HighestWeight) -> ExponentRootReport:
    """Are the exponents roots of ``[w-1]_(n-1) a(w)``?

    An exponent in ``{0..n}`` with constant multiplicity lies in the kernel
    of ``[d/dx]_(n+1)`` and is reported as exempt when it is not a root.
    """
    n = hw.n
    b = char_poly(hw)
    if n == 0:
        target = b
    else:
        target = falling_poly(n - 1, 1) * b.exact_div(falling_poly(n))
    entries = []
    ok = True
    for r, p in exponents(hw):
        if target(r) == 0:
            entries.append((r, "root"))
        elif p.is_constant() and is_integer(r) and 0 <= re_part(r) <= n:
            entries.append((r, "exempt"))
        else:
            entries.append((r, "not-a-root"))
            ok = False
    return ExponentRootReport(ok, target, tuple(entries))


def gamma_lift(hw: HighestWeight, K: int = 16) -> TruncSeries:
    """Label series ``phi / (e^x - 1)`` of a lift to the full algebra."""
    if hw.n < 1:
        raise ValueError("a lift is only defined for n >= 1")
    return series_div_expm1(hw.phi, K)


def _split_by_falling(H: Poly, n: int) -> Poly:
    q, r = divmod(H, falling_poly(n))
    if r:
        raise ValueError(f"{H} is not divisible by [w]_{n}")
    return q


def lambda_eval(hw: HighestWeight, H: Poly, gamma=0) -> Scalar:
    """``lambda(H(D) + gamma C)`` for ``H`` divisible by ``[w]_n``."""
    h = _split_by_falling(H, hw.n)
    total: Scalar = as_scalar(gamma) * hw.c
    if h:
        deltas = hw.labels(max(h.degree, 0)).deltas
        for l, hl in enumerate(h.coeffs):
            if hl != 0:
                total -= hl * deltas[l]
    return total


def _singular_element(n: int, g: Poly, b: Poly) -> tuple[Poly, Scalar]:
    # zero mode and central part of [t g(D-1)[D]_n, t^-1 b(D)]
    H = falling_poly(n, 1) * g * b - falling_poly(n) * g.shift(1) * b.shift(1)
    gamma = g(0) * falling_factorial(-1, n) * b(0)
    return H, gamma


def singular_check(hw: HighestWeight, b: Poly, g_deg: int) -> bool:
    """Whether ``t^-1 b(D) v`` is singular against ``g = w^m``, ``m <= g_deg``."""
    if not falling_poly(hw.n).divides(b):
        raise ValueError(f"{b} is not divisible by [w]_{hw.n}")
    for m in range(g_deg + 1):
        H, gamma = _singular_element(hw.n, W ** m, b)
        if lambda_eval(hw, H, gamma) != 0:
            return False
    return True


@dataclass(frozen=True)
class Level1Vector:
    """``t^-1 q(D) v``; q must be divisible by ``[w]_n``."""

    n: int
    q: Poly

    def __post_init__(self):
        if not falling_poly(self.n).divides(self.q):
            raise ValueError(f"{self.q} is not divisible by [w]_{self.n}")


@dataclass(frozen=True)
class Level1Result:
    vector: Level1Vector
    scalar: Scalar
    source: Level1Vector

    def total(self) -> Level1Vector:
        return Level1Vector(self.vector.n, self.vector.q + self.source.q.scale(self.scalar))


def level1_act(hw: HighestWeight, G: Poly, v: Level1Vector) -> Level1Result:
    """``G(D) t^-1 q(D) v = t^-1 ((G(w-1) - G(w)) q + lambda(G) q) v``."""
    if v.n != hw.n:
        raise ValueError("vector and weight have different orders")
    _split_by_falling(G, hw.n)
    q2 = (G.shift(-1) - G) * v.q
    return Level1Result(Level1Vector(hw.n, q2), lambda_eval(hw, G), v)


def S_operator(hw: HighestWeight) -> Poly:
    """``-1/2 (w^2 + beta w)`` with ``beta = (1 - Delta_1)/(1 + Delta_0)``."""
    if hw.n != 1:
        raise ValueError("the raising operator is defined for n = 1")
    d0, d1 = hw.delta(0), hw.delta(1)
    if 1 + d0 == 0:
        raise SingularWeightError("1 + Delta_0 = 0")
    beta = div(1 - d1, 1 + d0)
    return Poly([0, -beta, -1]).scale(div(1, 2))


def gram_level1(hw: HighestWeight, d: int) -> list[list[Scalar]]:
    """Contravariant form on ``t^-1 D^(j+1) v``, ``0 <= j < d``."""
    if hw.n != 1:
        raise ValueError("the contravariant form is computed for n = 1")
    if d < 1:
        raise ValueError("d must be >= 1")
    basis = [W ** (j + 1) for j in range(d)]
    G = []
    for p in basis:
        f = p.exact_div(W)
        Fp = f.conjugate().shift(1) * W
        row = []
        for q in basis:
            H = Fp.shift(-1) * q - Fp * q.shift(1)
            row.append(lambda_eval(hw, H))
        G.append(row)
    return G


@dataclass(frozen=True)
class UnitaryVerdict:
    unitary: bool
    reason: str
    detail: str = ""


def classify_exponents(data: Iterable[tuple]) -> UnitaryVerdict:
    """Unitarity conditions on exponent data for ``n = 1``."""
    terms = [(as_scalar(r), p if isinstance(p, Poly) else Poly.const(p)) for r, p in data]
    terms = [(r, p) for r, p in terms if p]
    if not terms:
        return UnitaryVerdict(True, "trivial")
    for r, p in terms:
        if not p.is_constant():
            return UnitaryVerdict(False, "polynomial-multiplicity", f"exponent {r}")
    for r, _ in terms:
        if not is_real(r):
            return UnitaryVerdict(False, "complex-exponent", f"exponent {r}")
    classes: dict = {}
    for r, p in terms:
        alpha = r - math.floor(r)
        classes.setdefault(alpha, []).append((r, p.coeff(0)))
    for alpha in sorted(classes):
        members = classes[alpha]
        mults = [m for _, m in members]
        if alpha == 0:
            for r, m in members:
                if not (is_integer(m) and re_part(m) > 0):
                    return UnitaryVerdict(False, "integral-class-multiplicity",
                                          f"exponent {r} has multiplicity {m}")
            continue
        for r, m in members:
            if not is_integer(m):
                return UnitaryVerdict(False, "non-integer-multiplicity",
                                      f"exponent {r} has multiplicity {m}")
        negatives = [m for m in mults if re_part(m) < 0]
        if len(negatives) != 1:
            return UnitaryVerdict(False, "negative-count",
                                  f"class {alpha} has {len(negatives)} negative multiplicities")
        m_alpha = -sum(mults)
        if m_alpha <= 0:
            return UnitaryVerdict(False, "class-charge", f"class {alpha}: m = {m_alpha}")
        rs = [r for r, _ in members]
        spread = max(rs) - min(rs)
        if spread > m_alpha:
            return UnitaryVerdict(False, "spread",
                                  f"class {alpha}: spread {spread} > m = {m_alpha}")
    return UnitaryVerdict(True, "all-conditions")


def unitary_classify(hw: HighestWeight) -> UnitaryVerdict:
    if hw.n != 1:
        raise ValueError("the unitarity classifier applies to n = 1")
    return classify_exponents(exponents(hw))
