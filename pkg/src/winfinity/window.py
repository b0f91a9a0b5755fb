"""Finite square windows onto infinite matrices with finitely many diagonals."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .exact import as_scalar, format_scalar
from .exact.scalar import Scalar

Index = tuple[int, int]


def _clean(entries: Mapping[Index, object]) -> dict[Index, Scalar]:
    out = {}
    for (i, j), v in entries.items():
        v = as_scalar(v)
        if v != 0:
            out[(int(i), int(j))] = v
    return out


@dataclass(frozen=True, eq=False)
class Window:
    """Entries ``(i, j)`` with ``|i|, |j| <= N``, plus a central coefficient.

    Only entries with both indices inside ``margin`` are trustworthy; the
    rest may be polluted by truncation.  ``invalid`` lists columns that
    are known to lose part of their image at the boundary.
    """

    N: int
    entries: dict = field(default_factory=dict)
    central: Scalar = 0
    margin: int | None = None
    invalid: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "entries", _clean(self.entries))
        object.__setattr__(self, "central", as_scalar(self.central))
        m = self.N if self.margin is None else self.margin
        if not 0 <= m <= self.N:
            raise ValueError(f"margin {m} outside 0..{self.N}")
        object.__setattr__(self, "margin", m)
        for i, j in self.entries:
            if abs(i) > self.N or abs(j) > self.N:
                raise ValueError(f"entry ({i}, {j}) outside the window of radius {self.N}")

    @classmethod
    def unit(cls, N: int, i: int, j: int, c=1, margin: int | None = None) -> "Window":
        return cls(N, {(i, j): c}, 0, margin)

    @classmethod
    def diagonal(cls, N: int, values: Mapping[int, object], margin: int | None = None):
        return cls(N, {(j, j): v for j, v in values.items()}, 0, margin)

    def entry(self, i: int, j: int) -> Scalar:
        return self.entries.get((i, j), 0)

    def interior(self, radius: int | None = None) -> dict[Index, Scalar]:
        r = self.margin if radius is None else radius
        return {ij: v for ij, v in self.entries.items() if abs(ij[0]) <= r and abs(ij[1]) <= r}

    def is_zero(self) -> bool:
        return not self.entries and self.central == 0

    def agrees_with(self, other: "Window", central: bool = True) -> bool:
        """Equality on the common trusted interior (and central part)."""
        r = min(self.margin, other.margin)
        if self.interior(r) != other.interior(r):
            return False
        return not central or self.central == other.central

    def with_central(self, c) -> "Window":
        return Window(self.N, self.entries, c, self.margin, self.invalid)

    def with_margin(self, m: int) -> "Window":
        return Window(self.N, self.entries, self.central, m, self.invalid)

    # linear structure ---------------------------------------------------
    def _check(self, other: "Window"):
        if self.N != other.N:
            raise ValueError("windows of different size")

    def __add__(self, other: "Window") -> "Window":
        self._check(other)
        out = dict(self.entries)
        for ij, v in other.entries.items():
            out[ij] = out.get(ij, 0) + v
        return Window(self.N, out, self.central + other.central,
                      min(self.margin, other.margin), self.invalid | other.invalid)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "Window") -> "Window":
        return self + (-other)

    def scale(self, c) -> "Window":
        c = as_scalar(c)
        return Window(self.N, {ij: v * c for ij, v in self.entries.items()},
                      self.central * c, self.margin, self.invalid)

    def matmul(self, other: "Window") -> dict[Index, Scalar]:
        """Truncated matrix product of the non-central parts."""
        self._check(other)
        rows: dict[int, list[tuple[int, Scalar]]] = {}
        for (k, j), v in other.entries.items():
            rows.setdefault(k, []).append((j, v))
        out: dict[Index, Scalar] = {}
        for (i, k), a in self.entries.items():
            for j, b in rows.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return out

    def commutator(self, other: "Window") -> "Window":
        """Matrix commutator; trusted on the smaller of the two margins."""
        ab = self.matmul(other)
        for ij, v in other.matmul(self).items():
            ab[ij] = ab.get(ij, 0) - v
        return Window(self.N, ab, 0, min(self.margin, other.margin))

    def __eq__(self, other):
        if not isinstance(other, Window):
            return NotImplemented
        return (self.N, self.entries, self.central, self.margin) == (
            other.N, other.entries, other.central, other.margin)

    def format(self) -> str:
        lines = [f"window N={self.N} margin={self.margin}"]
        for (i, j) in sorted(self.entries):
            lines.append(f"E({i},{j}) {format_scalar(self.entries[(i, j)])}")
        if self.central != 0:
            lines.append(f"C {format_scalar(self.central)}")
        return "\n".join(lines)


@dataclass(frozen=True, eq=False)
class RmWindow:
    """Window with coefficients in ``C[u]/(u^(m+1))``; layer i holds u^i."""

    m: int
    layers: tuple

    def __post_init__(self):
        layers = tuple(self.layers)
        if len(layers) != self.m + 1:
            raise ValueError(f"expected {self.m + 1} layers, got {len(layers)}")
        if len({(w.N, w.margin) for w in layers}) > 1:
            raise ValueError("layers must share N and margin")
        object.__setattr__(self, "layers", layers)

    @property
    def N(self) -> int:
        return self.layers[0].N

    @property
    def margin(self) -> int:
        return self.layers[0].margin

    def commutator(self, other: "RmWindow") -> "RmWindow":
        if self.m != other.m:
            raise ValueError("truncation orders differ")
        out = []
        for i in range(self.m + 1):
            acc = Window(self.N, {}, 0, min(self.margin, other.margin))
            for a in range(i + 1):
                A, B = self.layers[a], other.layers[i - a]
                prod = A.matmul(B)
                for ij, v in B.matmul(A).items():
                    prod[ij] = prod.get(ij, 0) - v
                acc = acc + Window(self.N, prod, 0, acc.margin)
            out.append(acc)
        return RmWindow(self.m, tuple(out))

    def agrees_with(self, other: "RmWindow") -> bool:
        return self.m == other.m and all(
            a.agrees_with(b, central=False) for a, b in zip(self.layers, other.layers))

    def format(self) -> str:
        parts = []
        for i, w in enumerate(self.layers):
            parts.append(f"layer u^{i}")
            parts.extend(w.format().splitlines()[1:])
        return f"rm-window m={self.m} N={self.N} margin={self.margin}\n" + "\n".join(parts)
