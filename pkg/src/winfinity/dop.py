"""Differential operators on the circle and their central extension.

An element is a finite sum ``sum_k t^k f_k(D) + c*C`` where ``D = t d/dt``.
The normal form keeps powers of t on the left, so an element is just the
map ``k -> f_k`` together with the central coefficient.

Conventions
-----------
* Product: ``(t^r f(D)) (t^s g(D)) = t^(r+s) f(D+s) g(D)``.
* Bracket: ``[t^r f, t^s g] = t^(r+s) (f(D+s) g(D) - f(D) g(D+r)) + Psi C``.
* ``Psi(t^r f, t^-r g) = T(sum_{-r<=m<=-1} f(w+m) g(w+m+r))`` for r >= 0,
  extended to r < 0 by antisymmetry; T defaults to evaluation at 0.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .exact import W, Poly, as_scalar, conj, falling_poly, format_scalar
from .exact.poly import _signed_term
from .exact.scalar import Scalar

__all__ = [
    "DOp", "LaurentVec", "compose", "bracket", "cocycle", "basis_J", "basis_L",
    "graded_component", "member_Wn", "apply_laurent", "act_window", "omega", "B_form",
    "NotInSubalgebraError",
]


class NotInSubalgebraError(ValueError):
    """An operator is required to lie in a subalgebra it does not belong to."""


def _as_poly(f) -> Poly:
    if isinstance(f, Poly):
        return f
    if isinstance(f, (list, tuple)):
        return Poly(f)
    return Poly.const(f)


class DOp:
    """``sum_k t^k f_k(D) + central*C`` in normal form."""

    __slots__ = ("modes", "central", "_hash")

    def __init__(self, modes: Mapping[int, object] | Iterable = (), central=0):
        items = modes.items() if isinstance(modes, Mapping) else modes
        out: dict[int, Poly] = {}
        for k, f in items:
            p = _as_poly(f)
            if k in out:
                p = out[k] + p
            if p:
                out[int(k)] = p
            else:
                out.pop(int(k), None)
        self.modes = out
        self.central = as_scalar(central)
        self._hash = None

    @classmethod
    def _raw(cls, modes: dict, central=0) -> "DOp":
        a = object.__new__(cls)
        a.modes = modes
        a.central = central
        a._hash = None
        return a

    @classmethod
    def term(cls, k: int, f) -> "DOp":
        return cls({k: f})

    @classmethod
    def central_element(cls, c=1) -> "DOp":
        return cls({}, c)

    # queries -----------------------------------------------------------
    def mode(self, k: int) -> Poly:
        return self.modes.get(k, Poly())

    def is_zero(self) -> bool:
        return not self.modes and self.central == 0

    def __bool__(self):
        return not self.is_zero()

    @property
    def max_mode(self) -> int:
        return max((abs(k) for k in self.modes), default=0)

    @property
    def degree(self) -> int:
        return max((f.degree for f in self.modes.values()), default=-1)

    def noncentral(self) -> "DOp":
        return DOp._raw(dict(self.modes))

    # linear structure --------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, DOp):
            other = DOp({0: other})
        modes = dict(self.modes)
        for k, g in other.modes.items():
            s = modes[k] + g if k in modes else g
            if s:
                modes[k] = s
            else:
                modes.pop(k, None)
        return DOp._raw(modes, self.central + other.central)

    __radd__ = __add__

    def __neg__(self):
        return DOp._raw({k: -f for k, f in self.modes.items()}, -self.central)

    def __sub__(self, other):
        if not isinstance(other, DOp):
            other = DOp({0: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "DOp":
        c = as_scalar(c)
        if c == 0:
            return DOp()
        return DOp._raw({k: f.scale(c) for k, f in self.modes.items()}, self.central * c)

    def __mul__(self, other):
        if isinstance(other, DOp):
            return compose(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, DOp):
            return self.modes == other.modes and self.central == other.central
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.modes.items()), self.central))
        return self._hash

    def __repr__(self):
        return f"DOp({self.format()!r})"

    def __str__(self):
        return self.format()

    def format(self) -> str:
        """Canonical text such as ``t^2*(D^3 - 3*D) - 2*D + 5*C``."""
        pieces: list[tuple[str, str]] = []
        for k in sorted(self.modes, reverse=True):
            pieces.extend(_mode_pieces(k, self.modes[k]))
        if self.central != 0:
            pieces.append(_signed_term(self.central, "C"))
        if not pieces:
            return "0"
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


def _tpow(k: int) -> str:
    return "t" if k == 1 else f"t^{k}"


def _mode_pieces(k: int, f: Poly) -> list[tuple[str, str]]:
    if k == 0:
        parts = []
        for j in range(f.degree, -1, -1):
            c = f.coeffs[j]
            if c != 0:
                mono = "" if j == 0 else ("D" if j == 1 else f"D^{j}")
                parts.append(_signed_term(c, mono))
        return parts
    nz = [j for j, c in enumerate(f.coeffs) if c != 0]
    if len(nz) == 1:
        j = nz[0]
        mono = _tpow(k) + ("" if j == 0 else ("*D" if j == 1 else f"*D^{j}"))
        return [_signed_term(f.coeffs[j], mono)]
    return [("+", f"{_tpow(k)}*({f.format('D')})")]


# products and brackets ---------------------------------------------------

def compose(a: DOp, b: DOp) -> DOp:
    """Associative product in the algebra of differential operators."""
    if a.central != 0 or b.central != 0:
        raise ValueError("the central element C has no associative product")
    out: dict[int, Poly] = {}
    for r, f in a.modes.items():
        for s, g in b.modes.items():
            h = f.shift(s) * g
            k = r + s
            out[k] = out[k] + h if k in out else h
    return DOp({k: p for k, p in out.items()})


def _moment_functional(moments: Sequence[Scalar] | None):
    if moments is None:
        return None
    mom = [as_scalar(m) for m in moments]

    def T(p: Poly):
        if p.degree >= len(mom):
            raise ValueError(
                f"functional known on degrees <= {len(mom) - 1}, got degree {p.degree}")
        return sum((c * m for c, m in zip(p.coeffs, mom)), 0)
    return T


def _pair_cocycle(r: int, f: Poly, g: Poly, T) -> Scalar:
    # Psi(t^r f, t^-r g) for r >= 0
    if T is None:
        return sum((f(m) * g(m + r) for m in range(-r, 0)), 0)
    acc = Poly()
    for m in range(-r, 0):
        acc = acc + f.shift(m) * g.shift(m + r)
    return T(acc)


def cocycle(a: DOp, b: DOp, moments: Sequence[Scalar] | None = None) -> Scalar:
    """The 2-cocycle on the non-central parts of a and b.

    ``moments`` gives an alternative functional T by its values on
    ``w^0, w^1, ...``; the default is evaluation at ``w = 0``.
    """
    T = _moment_functional(moments)
    total: Scalar = 0
    for r, f in a.modes.items():
        g = b.modes.get(-r)
        if g is None or r == 0:
            continue
        if r > 0:
            total += _pair_cocycle(r, f, g, T)
        else:
            total -= _pair_cocycle(-r, g, f, T)
    return total


def bracket(a: DOp, b: DOp, moments: Sequence[Scalar] | None = None) -> DOp:
    """Lie bracket including the central term; central inputs are inert."""
    out: dict[int, Poly] = {}
    for r, f in a.modes.items():
        for s, g in b.modes.items():
            h = f.shift(s) * g - f * g.shift(r)
            if not h:
                continue
            k = r + s
            out[k] = out[k] + h if k in out else h
    return DOp(out, cocycle(a, b, moments))


# bases, gradation, membership -------------------------------------------

def basis_J(l: int, k: int) -> DOp:
    """``-t^k [D]_l``."""
    if l < 0:
        raise ValueError("l must be >= 0")
    return DOp({k: -falling_poly(l)})


def basis_L(l: int, k: int) -> DOp:
    """``-t^k D^l``."""
    if l < 0:
        raise ValueError("l must be >= 0")
    return DOp({k: -(W ** l)})


def graded_component(a: DOp, j: int) -> DOp:
    f = a.modes.get(j)
    modes = {j: f} if f is not None else {}
    return DOp._raw(modes, a.central if j == 0 else 0)


def member_Wn(a: DOp, n: int) -> bool:
    """Whether every mode polynomial is divisible by ``[w]_n``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    q = falling_poly(n)
    return all(q.divides(f) for f in a.modes.values())


def _require_W1(a: DOp) -> None:
    if not member_Wn(a, 1):
        raise NotInSubalgebraError(f"{a} is not divisible by D on the right in every mode")


# action on Laurent polynomials ------------------------------------------

class LaurentVec:
    """Finitely supported ``sum_j c_j t^(j+s)``."""

    __slots__ = ("coeffs", "s")

    def __init__(self, coeffs: Mapping[int, object] | None = None, s=0):
        self.coeffs = {int(j): as_scalar(c) for j, c in (coeffs or {}).items()
                       if as_scalar(c) != 0}
        self.s = as_scalar(s)

    @classmethod
    def monomial(cls, j: int, s=0, c=1) -> "LaurentVec":
        return cls({j: c}, s)

    def __add__(self, other: "LaurentVec") -> "LaurentVec":
        if other.s != self.s:
            raise ValueError("cannot add Laurent vectors with different twists")
        out = dict(self.coeffs)
        for j, c in other.coeffs.items():
            out[j] = out.get(j, 0) + c
        return LaurentVec(out, self.s)

    def scale(self, c) -> "LaurentVec":
        return LaurentVec({j: v * c for j, v in self.coeffs.items()}, self.s)

    def __eq__(self, other):
        if isinstance(other, LaurentVec):
            return self.s == other.s and self.coeffs == other.coeffs
        return NotImplemented

    def __repr__(self):
        body = " + ".join(f"({format_scalar(c)})*t^({j}+s)" for j, c in sorted(self.coeffs.items()))
        return f"LaurentVec({body or '0'}, s={format_scalar(self.s)})"


def apply_laurent(a: DOp, v: LaurentVec) -> LaurentVec:
    """``t^k f(D) t^(j+s) = f(j+s) t^(j+k+s)``; central part ignored."""
    out: dict[int, Scalar] = {}
    for j, c in v.coeffs.items():
        x = j + v.s
        for k, f in a.modes.items():
            val = f(x)
            if val != 0:
                out[j + k] = out.get(j + k, 0) + c * val
    return LaurentVec(out, v.s)


def act_window(a: DOp, s, N: int):
    """Matrix of ``a`` on ``v_j = t^(-j+s)``, ``|j| <= N``.

    A column is flagged invalid when some mode of ``a`` maps it outside
    the window.
    """
    from .window import Window

    s = as_scalar(s)
    entries: dict[tuple[int, int], Scalar] = {}
    invalid = set()
    for j in range(-N, N + 1):
        image = apply_laurent(a, LaurentVec.monomial(-j, s))
        if any(abs(j - k) > N for k in a.modes):
            invalid.add(j)
        for e, c in image.coeffs.items():
            i = -e
            if abs(i) <= N:
                entries[(i, j)] = c
    margin = max(N - a.max_mode, 0)
    return Window(N, entries, 0, margin, frozenset(invalid))


# anti-involution and bilinear form --------------------------------------

def omega(a: DOp) -> DOp:
    """``t^k f(D) D -> t^-k conj(f)(D-k) D``, conjugate-linear, ``C -> C``."""
    _require_W1(a)
    out = {}
    for k, g in a.modes.items():
        f = g.exact_div(W)
        out[-k] = f.conjugate().shift(-k) * W
    return DOp(out, conj(a.central))


def B_form(u: LaurentVec, v: LaurentVec) -> Scalar:
    """``Res_t conj(u) dv`` on ``C[t, t^-1]/C``; conjugate-linear in u."""
    if u.s != 0 or v.s != 0:
        raise ValueError("the form is defined on untwisted Laurent polynomials")
    total: Scalar = 0
    for k, c in u.coeffs.items():
        if k == 0:
            continue
        d = v.coeffs.get(k)
        if d is not None:
            total += conj(c) * d * k
    return total

