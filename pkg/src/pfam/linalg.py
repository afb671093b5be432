"""Exact linear algebra over the rationals.

Integer matrices go through fraction-free (Bareiss) elimination so no
intermediate ever leaves the integers; anything else is promoted to
Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import SingularSystem


def _integerize_rows(rows):
    out = []
    for row in rows:
        den = 1
        for v in row:
            if not isinstance(v, int):
                den = lcm(den, Fraction(v).denominator)
        out.append([int(Fraction(v) * den) for v in row])
    return out


def _bareiss(M):
    """In-place fraction-free row echelon form. Returns (rank, sign, last pivot)."""
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    prev = 1
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
            sign = -sign
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                M[i][j] = (M[i][j] * M[r][c] - M[i][c] * M[r][j]) // prev
            M[i][c] = 0
        prev = M[r][c]
        r += 1
    return r, sign, prev


def rank(rows):
    """Exact rank of a rational matrix given as a list of rows."""
    if not rows:
        return 0
    M = _integerize_rows(rows)
    return _bareiss(M)[0]


def det(rows):
    """Exact determinant of a square rational matrix."""
    n = len(rows)
    if n == 0:
        return 1
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    scale = Fraction(1)
    M = []
    for row in rows:
        den = 1
        for v in row:
            if not isinstance(v, int):
                den = lcm(den, Fraction(v).denominator)
        scale /= den
        M.append([int(Fraction(v) * den) for v in row])
    r, sign, last = _bareiss(M)
    if r < n:
        return 0
    value = sign * last * scale
    return int(value) if value.denominator == 1 else value


def solve(A, b):
    """Solve the square system A x = b exactly (Gauss-Jordan over Fraction)."""
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            raise SingularSystem("matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        pv = M[c][c]
        M[c] = [v / pv for v in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [vi - f * vc for vi, vc in zip(M[i], M[c])]
    return [M[i][n] for i in range(n)]


def null_vector(rows):
    """Generalized cross product of (d-1) integer rows in dimension d.

    Returns the integer vector of signed maximal minors; it is zero exactly
    when the rows are linearly dependent.
    """
    d = len(rows) + 1
    out = []
    for j in range(d):
        minor = [[r[k] for k in range(d) if k != j] for r in rows]
        out.append((-1) ** j * det(minor))
    return out
