"""Bounded-order detection of constant-coefficient differential equations.

On EGF coefficients, ``c(d/dx) S = 0`` is the linear recurrence
``sum_j c_j S_{l+j} = 0``; a monic solution of minimal degree is the
kernel of a Hankel-type system.  The answer is only ever a certificate on
the coefficients supplied.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import solve
from .poly import Poly
from .series import TruncSeries


class InsufficientDataError(ValueError):
    """The prefix is too short to decide the requested degree bound."""


@dataclass(frozen=True)
class RecurrenceCertificate:
    annihilator: Poly
    verified_to_order: int


def detect_recurrence(prefix, max_deg: int) -> RecurrenceCertificate | None:
    """Minimal monic ``c`` with ``deg c <= max_deg`` killing ``prefix``.

    Each candidate degree d must leave at least one equation beyond the d
    needed to fit c; otherwise :class:`InsufficientDataError` is raised
    instead of guessing.  Returns ``None`` when no annihilator of degree
    ``<= max_deg`` exists on the available coefficients.
    """
    s = prefix.coeffs if isinstance(prefix, TruncSeries) else tuple(prefix)
    K = len(s) - 1
    for d in range(max_deg + 1):
        n_eq = K - d + 1
        if d == 0:
            if all(x == 0 for x in s):
                return RecurrenceCertificate(Poly.const(1), K)
            continue
        if n_eq < d + 1:
            raise InsufficientDataError(
                f"{K + 1} coefficients cannot certify an annihilator of degree {d}; "
                f"need at least {2 * d + 1}")
        A = [[s[l + j] for j in range(d)] for l in range(n_eq)]
        b = [-s[l + d] for l in range(n_eq)]
        x, nullity = solve(A, b)
        if x is None:
            continue
        if nullity:
            raise InsufficientDataError(
                f"degree-{d} annihilator is not unique on {K + 1} coefficients")
        return RecurrenceCertificate(Poly(list(x) + [1]), K)
    return None
