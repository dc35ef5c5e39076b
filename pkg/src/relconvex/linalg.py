"""Exact rational linear algebra helpers (dense, small systems only)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple[Fraction, ...]


def rref(matrix: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(matrix)[1])


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Solve M x = rhs exactly.

    Returns (particular, nullspace_basis) or None when inconsistent.  The
    particular solution sets all free variables to zero.
    """
    if not matrix:
        return [], []
    ncols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    part = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        part[c] = red[i][-1]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -red[i][f]
        basis.append(vec)
    return part, basis


def nullspace(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    if not matrix:
        return []
    sol = solve(matrix, [Fraction(0)] * len(matrix))
    assert sol is not None
    return sol[1]
