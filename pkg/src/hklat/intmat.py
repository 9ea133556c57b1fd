"""Integer matrix routines over Python ints.

Matrices are lists of rows.  Nothing here touches floating point; every
routine is exact for arbitrarily large entries.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def content(v: Sequence[int]) -> int:
    g = 0
    for c in v:
        g = gcd(g, c)
    return g


def primitive_part(v: Sequence[int]) -> list[int]:
    g = content(v)
    if g == 0:
        raise ZeroDivisionError("zero vector has no primitive part")
    return [c // g for c in v]


def canonical_sign(v: Sequence[int]) -> list[int]:
    """Flip ``v`` so that its first nonzero coordinate is positive."""
    for c in v:
        if c:
            return list(v) if c > 0 else [-x for x in v]
    return list(v)


def transpose(m: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
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


def rank(m: Sequence[Sequence[int]]) -> int:
    rows = [[Fraction(x) for x in r] for r in m]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def hnf(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form with zero rows dropped.

    Pivots are positive and entries above each pivot are reduced into
    ``[0, pivot)``.  The result depends only on the row span over Z.
    """
    a = [list(r) for r in rows]
    if not a:
        return []
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        # Euclid down column c among rows r..end
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < len(a) and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    return [row for row in a[:r]]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis (rows, HNF) of ``{z in Z^ncols : M z = 0}`` for the matrix ``M``.

    The kernel of an integer matrix is always saturated in Z^ncols.
    """
    if not rows:
        return identity(ncols)
    m = len(rows)
    # row-reduce [M^T | I]; rows whose M^T part vanishes span the kernel
    aug = [[rows[i][j] for i in range(m)] + [int(j == k) for k in range(ncols)]
           for j in range(ncols)]
    r = 0
    for c in range(m):
        while True:
            nz = [i for i in range(r, ncols) if aug[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(aug[i][c]))
            aug[r], aug[p] = aug[p], aug[r]
            done = True
            for i in range(r + 1, ncols):
                if aug[i][c]:
                    q = aug[i][c] // aug[r][c]
                    aug[i] = [x - q * y for x, y in zip(aug[i], aug[r])]
                    if aug[i][c]:
                        done = False
            if done:
                break
        if r < ncols and aug[r][c]:
            r += 1
    return hnf([row[m:] for row in aug[r:]])


def smith_invariants(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    a = [list(r) for r in rows if any(r)]
    out: list[int] = []
    while a and any(any(r) for r in a):
        a = [r for r in a if any(r)]
        ncols = len(a[0])
        while True:
            # bring the smallest nonzero entry to (0, 0)
            i0, j0 = min(((i, j) for i, r in enumerate(a) for j, x in enumerate(r) if x),
                         key=lambda ij: abs(a[ij[0]][ij[1]]))
            a[0], a[i0] = a[i0], a[0]
            for r in a:
                r[0], r[j0] = r[j0], r[0]
            p = a[0][0]
            clean = True
            for i in range(1, len(a)):
                q = a[i][0] // p
                a[i] = [x - q * y for x, y in zip(a[i], a[0])]
                clean = clean and a[i][0] == 0
            for j in range(1, ncols):
                q = a[0][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[0]
                clean = clean and a[0][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(1, len(a)) for j in range(1, ncols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            a[0] = [x + y for x, y in zip(a[0], a[bad[0]])]
        out.append(abs(a[0][0]))
        a = [r[1:] for r in a[1:]]
    return out


def solve_rational(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[Fraction] | None:
    """Coefficients c with sum c_i basis_i = v, or None if v is not in the span."""
    k = len(basis)
    n = len(v)
    # columns are basis vectors; augmented system n x (k + 1)
    a = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
    if any(a[i][k] for i in range(r, n)):
        return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        sol[c] = a[i][k]
    return sol


def complete_to_basis(v: Sequence[int]) -> Matrix:
    """Unimodular matrix whose first row is the primitive vector ``v``."""
    n = len(v)
    if content(v) != 1:
        raise ValueError("vector must be primitive")
    c = list(v)
    m = identity(n)
    # column ops on c; keep m equal to the inverse accumulation so c0 == e1 * m
    while sum(1 for x in c if x) > 1:
        p = min((i for i in range(n) if c[i]), key=lambda i: abs(c[i]))
        for i in range(n):
            if i != p and c[i]:
                q = c[i] // c[p]
                c[i] -= q * c[p]
                m[p] = [x + q * y for x, y in zip(m[p], m[i])]
    p = next(i for i in range(n) if c[i])
    if p:
        c[0], c[p] = c[p], c[0]
        m[0], m[p] = m[p], m[0]
    if c[0] < 0:
        c[0] = -c[0]
        m[0] = [-x for x in m[0]]
    return m
