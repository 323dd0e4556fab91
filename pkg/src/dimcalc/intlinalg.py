"""Exact integer kernels via fraction-free (Bareiss) elimination."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

IntMatrix = Sequence[Sequence[int]]


def bareiss_echelon(rows: IntMatrix, ncols: int | None = None) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Returns ``(E, pivots)`` where ``E`` is an integer echelon form of ``rows``
    (row-equivalent over Q) and ``pivots`` the pivot columns, scanned left to
    right. Every division inside the loop is exact.
    """
    m = [[int(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    for row in m:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    nrows = len(m)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            a = m[i][c]
            for j in range(c + 1, ncols):
                num = piv * m[i][j] - a * m[r][j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division not exact"
                m[i][j] = q
            m[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots


def primitive(vec: Sequence[Fraction], positive_at: int | None = None) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers.

    The sign is fixed so that entry ``positive_at`` (default: first nonzero) is positive.
    """
    den = 1
    for x in vec:
        den = math.lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(ints)
    ints = [x // g for x in ints]
    if positive_at is None:
        positive_at = next(i for i, x in enumerate(ints) if x != 0)
    if ints[positive_at] < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def integer_kernel(rows: IntMatrix, ncols: int) -> tuple[list[tuple[int, ...]], list[int], list[int]]:
    """Integer basis of {x : rows @ x = 0}.

    One vector per free (non-pivot) column, in increasing column order. Each
    vector is obtained by setting its free column to 1 and the other free
    columns to 0, back-substituting over Q, clearing denominators, dividing by
    the gcd, and orienting the vector so its own free entry is positive.

    Returns ``(basis, pivots, free_columns)``.
    """
    echelon, pivots = bareiss_echelon(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for k in reversed(range(len(pivots))):
            c = pivots[k]
            s = sum((echelon[k][j] * x[j] for j in range(c + 1, ncols)), Fraction(0))
            x[c] = -s / echelon[k][c]
        basis.append(primitive(x, positive_at=f))
    return basis, pivots, free


def matvec(rows: IntMatrix, x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in rows]
