"""Dense univariate polynomials over a field, as coefficient lists (low degree first).

Coefficients are any exact field scalars.  These helpers back the univariate
base case of the multivariate GCD and the squarefree tests.
"""

from __future__ import annotations

from .fields import mpq

__all__ = ["trim", "udivmod", "ugcd", "uderiv", "umul", "umonic", "ueval", "usquarefree"]


def trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def umonic(a: list) -> list:
    if not a:
        return a
    inv = 1 / a[-1]
    return [x * inv for x in a]


def udivmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], trim(a)
    q = [mpq(0)] * (len(a) - db)
    inv = 1 / b[-1]
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            c = c * inv
            q[k - db] = c
            for i in range(db + 1):
                a[k - db + i] = a[k - db + i] - c * b[i]
    return trim(q), trim(a[:db])


def ugcd(a: list, b: list) -> list:
    """Monic gcd; the gcd of two zero polynomials is ``[]``."""
    a, b = trim(list(a)), trim(list(b))
    while b:
        _, r = udivmod(a, b)
        a, b = b, umonic(r) if r else r
    return umonic(a)


def uderiv(a: list) -> list:
    return trim([a[k] * k for k in range(1, len(a))])


def umul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return trim(out)


def ueval(a: list, x):
    acc = mpq(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def usquarefree(a: list) -> list:
    """Squarefree part (characteristic zero)."""
    g = ugcd(a, uderiv(a))
    if len(g) <= 1:
        return umonic(trim(list(a)))
    q, r = udivmod(a, g)
    assert not r
    return umonic(q)
