"""Gaussian elimination over exact scalars (``mpq`` or number-field elements).

Matrices are lists of rows.  Nothing here is clever; the sizes are at most a
few dozen.
"""

from __future__ import annotations

from typing import Sequence

from .fields import mpq, to_rational

__all__ = ["rref", "rank", "nullspace", "solve", "inverse", "det", "matmul", "identity", "as_exact"]


def _exact(x):
    return x if hasattr(x, "field") else to_rational(x)


def as_exact(M: Sequence[Sequence]) -> list[list]:
    return [[_exact(x) for x in row] for row in M]


def identity(n: int) -> list[list]:
    return [[mpq(1) if i == j else mpq(0) for j in range(n)] for i in range(n)]


def matmul(A, B) -> list[list]:
    cols = len(B[0])
    return [[sum((a * B[k][j] for k, a in enumerate(row)), mpq(0)) for j in range(cols)] for row in A]


def rref(M: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = as_exact(M)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M) -> int:
    if not M:
        return 0
    return len(rref(M)[1])


def nullspace(M) -> list[list]:
    """Basis of ``{v : M v = 0}``."""
    A, piv = rref(M)
    cols = len(M[0])
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [mpq(0)] * cols
        v[f] = mpq(1)
        for r, c in enumerate(piv):
            v[c] = -A[r][f]
        basis.append(v)
    return basis


def solve(M, b) -> list | None:
    """One solution of ``M x = b`` or ``None`` when inconsistent."""
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    A, piv = rref(aug)
    cols = len(M[0])
    if cols in piv:
        return None
    x = [mpq(0)] * cols
    for r, c in enumerate(piv):
        x[c] = A[r][cols]
    return x


def inverse(M) -> list[list]:
    n = len(M)
    aug = [list(row) + e for row, e in zip(as_exact(M), identity(n))]
    A, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in A]


def det(M):
    A = as_exact(M)
    n = len(A)
    d = mpq(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return mpq(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d = d * A[c][c]
        inv = 1 / A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d
