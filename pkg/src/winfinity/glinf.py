"""Windows onto centrally extended infinite matrices and the maps into them.

The twisted action on ``t^s C[t, t^-1]`` with basis ``v_j = t^(-j+s)``
sends ``t^k g(D)`` to ``sum_j g(s-j) E_{j-k, j}``; the centrally corrected
version subtracts the moments of ``((e^(sx) - 1)/(e^x - 1))'`` from the
zero mode.  Matrix-side central terms use ``Phi(A, B) = tr([J, A] B)``
with ``J = sum_{i <= 0} E_ii``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .dop import DOp, NotInSubalgebraError, member_Wn
from .exact import W, Poly, QuasiPoly, as_scalar, conj, div, is_integer, is_real, series_div_expm1
from .exact.scalar import Scalar, re_part
from .highest_weight import HighestWeight
from .window import RmWindow, Window

__all__ = [
    "phi_s", "central_correction", "correction_series", "hat_phi_s", "p_s_project",
    "nu_shift", "gl_cocycle", "window_bracket", "omega_prime", "dagger", "GlWeight",
    "n_labels", "gl_unitary_check", "GlVerdict", "glweight_to_hw", "component_numerator",
    "pair_weight", "labels_by_pairing", "phi_s_m", "BoundaryError",
]


class BoundaryError(ValueError):
    """A computation would read entries outside the trusted margin."""


def _require_W1(a: DOp) -> None:
    if not member_Wn(a, 1):
        raise NotInSubalgebraError(f"{a} is not in the order-1 subalgebra")


def _evaluation_window(a: DOp, s, N: int, layer: int = 0) -> Window:
    entries: dict = {}
    invalid = set()
    for k, g in a.modes.items():
        gi = g.derivative(layer).scale(div(1, math.factorial(layer))) if layer else g
        for j in range(-N, N + 1):
            i = j - k
            if abs(i) > N:
                invalid.add(j)
                continue
            v = gi(s - j)
            if v != 0:
                entries[(i, j)] = entries.get((i, j), 0) + v
    return Window(N, entries, 0, max(N - a.max_mode, 0), frozenset(invalid))


def phi_s(a: DOp, s, N: int) -> Window:
    """``t^k f(D) D -> sum_j f(s-j)(s-j) E_{j-k, j}``; the central part is ignored."""
    _require_W1(a)
    return _evaluation_window(a, as_scalar(s), N)


def correction_series(s, K: int):
    """EGF coefficients ``c_0..c_K`` of ``((e^(sx) - 1)/(e^x - 1))'``."""
    q = QuasiPoly.exp(as_scalar(s)) - 1
    return series_div_expm1(q, K + 1).derivative()


def central_correction(g: Poly, s, K: int) -> Scalar:
    """``sum_l h_l c_l`` where ``g = sum_l h_l w^(l+1)``."""
    if g.coeff(0) != 0:
        raise ValueError(f"{g} is not divisible by w")
    if g.degree - 1 > K:
        raise ValueError(f"order K = {K} too small for degree {g.degree}; need K >= {g.degree - 1}")
    if g.is_zero():
        return 0
    c = correction_series(s, K)
    return sum((g.coeffs[l + 1] * c[l] for l in range(g.degree)), 0)


def hat_phi_s(a: DOp, s, N: int, K: int | None = None) -> Window:
    """Centrally corrected image; integer twists are followed by the projection."""
    s = as_scalar(s)
    w = phi_s(a, s, N)
    g = a.mode(0)
    if K is None:
        K = max(g.degree - 1, 0)
    central = a.central - central_correction(g, s, K)
    w = w.with_central(central)
    if is_integer(s):
        w = p_s_project(w, s)
    return w


def p_s_project(w: Window, s: int) -> Window:
    """Drop entries in row ``-s`` and column ``s``."""
    s = int(re_part(as_scalar(s)))
    entries = {(i, j): v for (i, j), v in w.entries.items() if i != -s and j != s}
    return Window(w.N, entries, w.central, w.margin, w.invalid)


def nu_shift(w: Window, k: int) -> Window:
    """``E_ij -> E_{i+k, j+k}``; the trusted margin shrinks by ``|k|``."""
    if abs(k) > w.margin:
        raise BoundaryError(f"shift {k} exceeds margin {w.margin}")
    entries = {(i + k, j + k): v for (i, j), v in w.entries.items()
               if abs(i + k) <= w.N and abs(j + k) <= w.N}
    invalid = frozenset(j + k for j in w.invalid if abs(j + k) <= w.N)
    return Window(w.N, entries, w.central, w.margin - abs(k), invalid)


def _straddles(i: int, k: int) -> int:
    if i <= 0 < k:
        return 1
    if k <= 0 < i:
        return -1
    return 0


def gl_cocycle(A: Window, B: Window) -> Scalar:
    """``tr([J, A] B)``; only entries straddling the 0|1 cut contribute."""
    if A.N != B.N:
        raise ValueError("windows of different size")
    for X in (A, B):
        for (i, k) in X.entries:
            if _straddles(i, k) and (abs(i) > X.margin or abs(k) > X.margin):
                raise BoundaryError(f"entry ({i}, {k}) straddles the cut outside the margin")
    total: Scalar = 0
    for (i, k), a in A.entries.items():
        sgn = _straddles(i, k)
        if sgn:
            b = B.entries.get((k, i))
            if b is not None:
                total += sgn * a * b
    return total


def window_bracket(A: Window, B: Window) -> Window:
    """Commutator plus the central term; central inputs are inert."""
    return A.commutator(B).with_central(gl_cocycle(A, B))


def omega_prime(w: Window, s) -> Window:
    """``c E_ij -> conj(c) (s-i)/(s-j) E_ji``, ``C -> C``."""
    s = as_scalar(s)
    if not is_real(s):
        raise ValueError("the twist must be real")
    out = {}
    for (i, j), v in w.entries.items():
        if s - j == 0:
            raise ZeroDivisionError(f"column {j} equals the twist")
        out[(j, i)] = conj(v) * div(s - i, s - j)
    return Window(w.N, out, conj(w.central), w.margin, frozenset())


def dagger(w: Window) -> Window:
    """Conjugate transpose with a sign on entries crossing the 0|1 cut."""
    out = {}
    for (i, j), v in w.entries.items():
        same = (i > 0 and j > 0) or (i <= 0 and j <= 0)
        out[(j, i)] = conj(v) if same else -conj(v)
    return Window(w.N, out, conj(w.central), w.margin, frozenset())


# weights ----------------------------------------------------------------

@dataclass(frozen=True)
class GlWeight:
    """Finitely supported diagonal labels ``lambda_i`` and central charge."""

    lambdas: Mapping = field(default_factory=dict)
    c: Scalar = 0

    def __post_init__(self):
        lam = {int(i): as_scalar(v) for i, v in dict(self.lambdas).items() if as_scalar(v) != 0}
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "c", as_scalar(self.c))

    @classmethod
    def from_n_labels(cls, n: Mapping, c) -> "GlWeight":
        """Invert ``n_i = lambda_i - lambda_(i+1) + delta_(i,0) c``."""
        n = {int(i): as_scalar(v) for i, v in dict(n).items()}
        c = as_scalar(c)
        if sum(n.values(), 0) != c:
            raise ValueError("finitely supported labels need sum(n_i) = c")
        if not n:
            return cls({}, c)
        lo, hi = min(min(n), 0), max(max(n), 0)
        lam = {}
        for i in range(lo, hi + 1):
            lam[i] = sum((v for k, v in n.items() if k >= i), 0) - (c if i <= 0 else 0)
        return cls(lam, c)

    def label(self, i: int) -> Scalar:
        return self.lambdas.get(i, 0)

    def is_trivial(self) -> bool:
        return not self.lambdas and self.c == 0


def n_labels(gw: GlWeight) -> dict[int, Scalar]:
    keys = set(gw.lambdas) | {i - 1 for i in gw.lambdas} | {0}
    out = {}
    for i in sorted(keys):
        v = gw.label(i) - gw.label(i + 1) + (gw.c if i == 0 else 0)
        if v != 0:
            out[i] = v
    return out


@dataclass(frozen=True)
class GlVerdict:
    unitary: bool
    reason: str
    detail: str = ""


def _nonneg_int(x) -> bool:
    return is_integer(x) and re_part(x) >= 0


def gl_unitary_check(gw: GlWeight, s) -> GlVerdict:
    s = as_scalar(s)
    if not is_real(s) or not 0 <= s < 1:
        raise ValueError(f"twist must satisfy 0 <= s < 1, got {s}")
    n = n_labels(gw)
    if gw.is_trivial():
        return GlVerdict(True, "trivial")
    if s == 0:
        for i, v in n.items():
            if not _nonneg_int(v):
                return GlVerdict(False, "n-label", f"n_{i} = {v}")
        if sum(n.values(), 0) != gw.c:
            return GlVerdict(False, "charge-sum")
        return GlVerdict(True, "standard-conditions")
    for i, v in n.items():
        if i != 0 and not _nonneg_int(v):
            return GlVerdict(False, "n-label", f"n_{i} = {v}")
    total = sum(n.values(), 0)
    if total != gw.c or not is_real(gw.c) or gw.c >= 0:
        return GlVerdict(False, "charge", f"c = {gw.c}")
    support = sorted(n)
    if support and support[-1] - support[0] > -gw.c:
        return GlVerdict(False, "support-width",
                         f"{support[-1] - support[0]} > {-gw.c}")
    return GlVerdict(True, "twisted-conditions")


def component_numerator(s, gw: GlWeight) -> QuasiPoly:
    """Numerator over ``e^x - 1`` of the label series of one component.

    For ``s != 0``: ``sum_k n_k e^((s-k)x) - c``.  For ``s = 0`` the
    labels are read on the relabelled indices ``i -> i+1`` (``i < 0``):
    ``sum_{j>0} n_j e^(-jx) + sum_{j<0} n_j e^((1-j)x) + lambda_0 e^x - lambda_1``.
    """
    s = as_scalar(s)
    n = n_labels(gw)
    if s != 0:
        q = QuasiPoly([(s - k, v) for k, v in n.items()]) - gw.c
    else:
        terms = [(-j, v) for j, v in n.items() if j > 0]
        terms += [(1 - j, v) for j, v in n.items() if j < 0]
        terms += [(1, gw.label(0)), (0, -gw.label(1))]
        q = QuasiPoly(terms)
    if q.value_at_zero() != 0:
        raise ValueError("numerator does not vanish at 0; weight is not compatible")
    return q


def glweight_to_hw(components: Iterable[tuple]) -> HighestWeight:
    """Sum of per-twist contributions as an order-1 highest weight."""
    comps = [(as_scalar(s), gw) for s, gw in components]
    seen = []
    for s, _ in comps:
        if not is_real(s) or not 0 <= s < 1:
            raise ValueError(f"twist must satisfy 0 <= s < 1, got {s}")
        if s in seen:
            raise ValueError(f"twists must be distinct mod 1, got {s} twice")
        seen.append(s)
    phi = QuasiPoly()
    c = 0
    for s, gw in comps:
        phi = phi + component_numerator(s, gw)
        c = c + gw.c
    return HighestWeight(1, c, phi)


def _relabel_zero_twist(i: int) -> int:
    return i + 1 if i < 0 else i


def pair_weight(gw: GlWeight, w: Window, s) -> Scalar:
    """``lambda`` applied to the diagonal and central part of a window."""
    s = as_scalar(s)
    total = gw.c * w.central
    for (i, j), v in w.entries.items():
        if i != j:
            continue
        if s == 0:
            if i == 0:
                continue
            total += gw.label(_relabel_zero_twist(i)) * v
        else:
            total += gw.label(i) * v
    return total


def labels_by_pairing(gw: GlWeight, s, K: int, N: int | None = None) -> tuple:
    """``Delta_l = -lambda(hat_phi_s(D^(l+1)))`` for ``l <= K``."""
    support = [abs(i) for i in gw.lambdas] + [1]
    N = N if N is not None else max(support) + 2
    if N <= max(support):
        raise BoundaryError("window too small for the weight's support")
    out = []
    for l in range(K + 1):
        win = hat_phi_s(DOp({0: W ** (l + 1)}), s, N, l)
        out.append(-pair_weight(gw, win, s))
    return tuple(out)


def phi_s_m(a: DOp, s, m: int, N: int) -> RmWindow:
    """Layers ``u^i``: Taylor coefficients ``g^(i)(s-j)/i!`` of each mode."""
    _require_W1(a)
    if m < 0:
        raise ValueError("m must be >= 0")
    s = as_scalar(s)
    return RmWindow(m, tuple(_evaluation_window(a, s, N, i) for i in range(m + 1)))
