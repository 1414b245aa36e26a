"""Small exact linear algebra over the rationals.

Matrices are lists of rows.  Entries may be ``int`` or ``Fraction``; results
are ``Fraction`` unless stated otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fraction_matrix(m: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in m]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)] if m else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vecmat(v: Sequence, a: Sequence[Sequence]) -> list:
    return [sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0]))]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def bilinear(u: Sequence, form: Sequence[Sequence], v: Sequence):
    """Return ``u^T form v``."""
    return sum(u[i] * sum(form[i][j] * v[j] for j in range(len(v)) if form[i][j])
               for i in range(len(u)) if u[i])


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a rational matrix."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    den = 1
    for row in m:
        for x in row:
            x = Fraction(x)
            den = den * x.denominator // gcd(den, x.denominator)
    scaled = [[int(Fraction(x) * den) for x in row] for row in m]
    return Fraction(bareiss_det(scaled), den ** n)


def solve(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    """Solve ``a x = b`` for square nonsingular ``a``; ``b`` has one column per rhs.

    Fraction-free (Bareiss) forward elimination on the scaled integer system,
    rational back substitution.
    """
    n = len(a)
    k = len(b[0]) if b else 0
    den = 1
    for row in list(a) + list(b):
        for x in row:
            x = Fraction(x)
            den = den * x.denominator // gcd(den, x.denominator)
    aug = [[int(Fraction(x) * den) for x in a[i]] + [int(Fraction(x) * den) for x in b[i]]
           for i in range(n)]
    prev = 1
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        for r in range(c + 1, n):
            f = aug[r][c]
            row_r, row_c = aug[r], aug[c]
            for j in range(c + 1, n + k):
                row_r[j] = (row_r[j] * piv - f * row_c[j]) // prev
            row_r[c] = 0
        prev = piv
    x = [[Fraction(0)] * k for _ in range(n)]
    for col in range(k):
        for i in range(n - 1, -1, -1):
            s = Fraction(aug[i][n + col])
            for j in range(i + 1, n):
                if aug[i][j]:
                    s -= aug[i][j] * x[j][col]
            x[i][col] = s / aug[i][i]
    return x


def solve_vec(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    return [row[0] for row in solve(a, [[x] for x in b])]


def inverse(a: Sequence[Sequence]) -> Matrix:
    return solve(a, identity(len(a)))


def rank(m: Sequence[Sequence]) -> int:
    a = to_fraction_matrix(m)
    r = 0
    rows = len(a)
    cols = len(a[0]) if a else 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def common_denominator(values) -> int:
    den = 1
    for x in values:
        d = Fraction(x).denominator
        den = den * d // gcd(den, d)
    return den


def is_integral(values) -> bool:
    return all(Fraction(x).denominator == 1 for x in values)
