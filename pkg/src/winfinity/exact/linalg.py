"""Exact dense linear algebra on lists of lists of scalars."""

from __future__ import annotations

from typing import Sequence

from .scalar import Scalar, conj, div, is_real, re_part


Matrix = list[list[Scalar]]


def rref(rows: Sequence[Sequence[Scalar]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        if p != 1:
            m[r] = [div(x, p) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> Matrix:
    """Basis of ``{v : M v = 0}``, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v: list[Scalar] = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence[Scalar]], b: Sequence[Scalar]):
    """One solution of ``A x = b`` and the nullity, or ``(None, nullity)``."""
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None, ncols - (len(pivots) - 1)
    x: list[Scalar] = [0] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[-1]
    return x, ncols - len(pivots)


def matmul(A: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> list[Scalar]:
    return [sum((a * x for a, x in zip(row, v)), 0) for row in A]


def conj_transpose(A: Sequence[Sequence[Scalar]]) -> Matrix:
    n = len(A)
    m = len(A[0]) if n else 0
    return [[conj(A[i][j]) for i in range(n)] for j in range(m)]


def is_hermitian(A: Sequence[Sequence[Scalar]]) -> bool:
    return [list(r) for r in A] == conj_transpose(A)


def determinant(A: Sequence[Sequence[Scalar]]) -> Scalar:
    m = [list(r) for r in A]
    n = len(m)
    det: Scalar = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        p = m[c][c]
        det = det * p
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = div(m[i][c], p)
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def leading_minors(A: Sequence[Sequence[Scalar]]) -> list[Scalar]:
    return [determinant([row[:k] for row in A[:k]]) for k in range(1, len(A) + 1)]


def is_psd(A: Sequence[Sequence[Scalar]]) -> bool:
    """Exact positive-semidefiniteness test for a Hermitian matrix.

    Eliminates on a strictly positive diagonal pivot at each step; if only
    zero pivots remain the rest of the matrix must vanish.
    """
    m = [list(r) for r in A]
    if not is_hermitian(m):
        raise ValueError("positive-semidefiniteness is only defined here for Hermitian input")
    while m:
        diag = [m[i][i] for i in range(len(m))]
        if any(not is_real(d) or re_part(d) < 0 for d in diag):
            return False
        p = next((i for i, d in enumerate(diag) if d != 0), None)
        if p is None:
            return all(x == 0 for row in m for x in row)
        piv = m[p][p]
        rest = [i for i in range(len(m)) if i != p]
        m = [[m[i][j] - div(m[i][p] * m[p][j], piv) for j in rest] for i in rest]
    return True
