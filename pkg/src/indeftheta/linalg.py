"""Exact linear algebra: rational nullspaces and integer lattices in Z^2."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def _common_denominator(rows):
    den = 1
    for row in rows:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    return den


def echelon(rows):
    """Fraction-free (Bareiss) row echelon form of a rational matrix.

    Returns ``(R, pivots)`` where R is an integer matrix and ``pivots`` the
    pivot columns.  Every intermediate entry is an integer minor of the
    scaled input, so no fractions appear during elimination.
    """
    if not rows:
        return [], []
    ncols = len(rows[0])
    den = _common_denominator(rows)
    R = [[int(Fraction(x) * den) for x in row] for row in rows]
    pivots = []
    prev = 1
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(R)) if R[i][col] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        p = R[r][col]
        for i in range(r + 1, len(R)):
            x = R[i][col]
            R[i] = [(p * R[i][j] - x * R[r][j]) // prev for j in range(ncols)]
        prev = p
        pivots.append(col)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def rank(rows) -> int:
    return len(echelon(rows)[1])


def nullspace(rows, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : rows @ x = 0}``, one vector per free column.

    Each basis vector has a 1 in its free column and 0 in the other free
    columns; the vectors are scaled to primitive integer entries.
    """
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(rows[0])
    R, pivots = echelon(rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * ncols
        x[fcol] = Fraction(1)
        # back substitution over the pivot rows
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            s = sum((R[i][j] * x[j] for j in range(pc + 1, ncols)), Fraction(0))
            x[pc] = -s / R[i][pc]
        basis.append(_primitive(x))
    return basis


def _primitive(v):
    den = _common_denominator([v])
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return [Fraction(0)] * len(v)
    # first nonzero entry positive
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return [Fraction(x // g) for x in ints]


def mat_vec(rows, v):
    return [sum(Fraction(a) * b for a, b in zip(row, v)) for row in rows]


def hnf2(vectors) -> tuple[tuple[int, int], tuple[int, int]]:
    """Hermite basis ``(alpha, beta), (0, delta)`` of the lattice spanned by integer vectors in Z^2.

    ``alpha, delta > 0`` and ``0 <= beta < delta``.  Raises ValueError if the
    vectors span a lattice of rank < 2.
    """
    rows = [[int(x), int(y)] for x, y in vectors if x or y]
    # Euclid on the first column
    while sum(1 for r in rows if r[0]) > 1:
        rows.sort(key=lambda r: (r[0] == 0, abs(r[0])))
        p = rows[0]
        for r in rows[1:]:
            if r[0]:
                q = r[0] // p[0]
                r[0] -= q * p[0]
                r[1] -= q * p[1]
    first = [r for r in rows if r[0]]
    if not first:
        raise ValueError("vectors do not span a rank-2 lattice")
    top = first[0]
    if top[0] < 0:
        top = [-top[0], -top[1]]
    delta = 0
    for r in rows:
        if r is not first[0] and r[0] == 0:
            delta = gcd(delta, r[1])
    if delta == 0:
        raise ValueError("vectors do not span a rank-2 lattice")
    return (top[0], top[1] % delta), (0, delta)


def lattice_exponent(basis) -> int:
    """Least N > 0 with ``N Z^2`` inside the integer lattice with this basis."""
    (alpha, beta), (_, delta) = hnf2(basis)
    # (N, 0) = i (alpha, beta) + j (0, delta) needs delta | i beta
    return lcm(delta, alpha * (delta // gcd(beta, delta)))


def lattice_points_mod(basis, shift, N: int):
    """Residues mod N of ``shift + L`` for an integer lattice L containing N Z^2."""
    (alpha, beta), (_, delta) = hnf2(basis)
    if N % alpha or N % delta:
        raise ValueError(f"{N} Z^2 is not contained in the lattice")
    sx, sy = shift
    for i in range(N // alpha):
        x = (sx + i * alpha) % N
        y0 = sy + i * beta
        for j in range(N // delta):
            yield x, (y0 + j * delta) % N
