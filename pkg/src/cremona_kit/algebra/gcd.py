"""Multivariate GCD, content and Sylvester resultants.

The GCD recurses on the last variable in use: contents are split off, and the
primitive parts go through the subresultant PRS.  Homogeneous inputs are
dehomogenized at a weight-one variable first and homogenized back, with the
power of that variable handled separately.
"""

from __future__ import annotations

from functools import reduce
from typing import Iterable, Sequence

from .fields import common_field
from .poly import MultiPoly, VariableMismatchError
from .upoly import trim, ugcd

__all__ = [
    "poly_gcd",
    "gcd_many",
    "content_in",
    "primitive_part_in",
    "resultant",
    "sylvester_matrix",
    "bareiss_det",
]


def _check_pair(a: MultiPoly, b: MultiPoly):
    if a.variables != b.variables or a.weights != b.weights:
        raise VariableMismatchError(f"variable sets differ: {a.variables} vs {b.variables}")
    return common_field(a.field, b.field)


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Greatest common divisor, monic under the graded-lexicographic order.

    Raises :class:`VariableMismatchError` for different rings and
    :class:`FieldMismatchError` for different number fields.
    """
    field = _check_pair(a, b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    return _gcd(a, b).with_field(field).monic("grlex")


def gcd_many(polys: Iterable[MultiPoly]) -> MultiPoly:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("gcd of zero polynomials is undefined")
    polys.sort(key=lambda p: (p.total_degree(), len(p.terms)))
    g = polys[0].monic("grlex")
    for p in polys[1:]:
        if g.is_constant():
            return g.one()
        g = poly_gcd(g, p)
    return g


def _var_shift(p: MultiPoly, i: int, k: int) -> MultiPoly:
    if not k:
        return p
    terms = {e[:i] + (e[i] - k,) + e[i + 1 :]: c for e, c in p.terms.items()}
    return MultiPoly._new(p.variables, p.weights, terms, p.field)


def _used_indices(*polys) -> list[int]:
    n = len(polys[0].variables)
    used = [False] * n
    for p in polys:
        for e in p.terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
    return [i for i in range(n) if used[i]]


def _gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.is_constant() or b.is_constant():
        return a.one()
    used = _used_indices(a, b)
    if len(used) == 1:
        return _univariate_gcd(a, b, used[0])

    # common monomial factor first: keeps the PRS inputs free of variable powers
    mono = []
    for i in used:
        k = min(min(e[i] for e in a.terms), min(e[i] for e in b.terms))
        mono.append((i, k))
        a = _var_shift(a, i, min(e[i] for e in a.terms))
        b = _var_shift(b, i, min(e[i] for e in b.terms))
    factor = a.one()
    for i, k in mono:
        if k:
            factor = factor * a.var(a.variables[i]) ** k
    if a.is_constant() or b.is_constant():
        return factor

    used = _used_indices(a, b)
    if len(used) == 1:
        return factor * _univariate_gcd(a, b, used[0])

    if a.is_homogeneous() and b.is_homogeneous():
        hv = [i for i in used if a.weights[i] == 1]
        if hv:
            v = a.variables[hv[-1]]
            g = _gcd(a.subs(**{v: 1}), b.subs(**{v: 1}))
            return factor * g.homogenize(v)

    v = a.variables[used[-1]]
    ca, cb = content_in(a, v), content_in(b, v)
    c = _gcd(ca, cb)
    pa, pb = a.divexact(ca), b.divexact(cb)
    if pa.degree_in(v) == 0 or pb.degree_in(v) == 0:
        return factor * c
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    bound = _degree_bound(pa, pb, v)
    if bound == 0:
        return factor * c
    if bound == pb.degree_in(v) and pb.divides(pa):
        return factor * c * pb
    return factor * c * _subresultant_gcd(pa, pb, v)


def _univariate_gcd(a: MultiPoly, b: MultiPoly, i: int) -> MultiPoly:
    da = _to_dense(a, i)
    db = _to_dense(b, i)
    g = ugcd(da, db)
    return _from_dense(g, a, i)


def _to_dense(p: MultiPoly, i: int) -> list:
    deg = max(e[i] for e in p.terms)
    out = [0] * (deg + 1)
    for e, c in p.terms.items():
        out[e[i]] = c
    return out


def _from_dense(c: list, like: MultiPoly, i: int) -> MultiPoly:
    n = len(like.variables)
    terms = {}
    for k, v in enumerate(c):
        if v:
            e = [0] * n
            e[i] = k
            terms[tuple(e)] = v
    return MultiPoly._new(like.variables, like.weights, terms, like.field)


def _degree_bound(a: MultiPoly, b: MultiPoly, v: str) -> int:
    """Upper bound for the degree in ``v`` of gcd(a, b), by specializing the other variables."""
    i = a.variables.index(v)
    others = [j for j in _used_indices(a, b) if j != i]
    lca = a.coeffs_in(v)[a.degree_in(v)]
    lcb = b.coeffs_in(v)[b.degree_in(v)]
    best = min(a.degree_in(v), b.degree_in(v))
    for trial in range(4):
        point = [0] * len(a.variables)
        for k, j in enumerate(others):
            point[j] = 2 + 3 * k + 7 * trial + (k * k + trial * trial) % 11
        if not lca.evaluate(point) or not lcb.evaluate(point):
            continue
        ua = _specialize_dense(a, i, point)
        ub = _specialize_dense(b, i, point)
        best = min(best, len(ugcd(ua, ub)) - 1)
        if best == 0:
            break
    return best


def _specialize_dense(p: MultiPoly, i: int, point) -> list:
    deg = max(e[i] for e in p.terms)
    out = [0] * (deg + 1)
    for e, c in p.terms.items():
        t = c
        for j, k in enumerate(e):
            if k and j != i:
                t = t * point[j] ** k
        out[e[i]] = out[e[i]] + t
    return trim(out)


def content_in(p: MultiPoly, v: str) -> MultiPoly:
    """GCD of the coefficients of ``p`` viewed as a polynomial in ``v``."""
    coeffs = sorted(p.coeffs_in(v).values(), key=lambda c: (len(c.terms), c.total_degree()))
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = _gcd(g, c)
    if g.is_constant():
        return p.one()
    return g.monic("grlex")


def primitive_part_in(p: MultiPoly, v: str) -> MultiPoly:
    return p.divexact(content_in(p, v))


def _dense_in(p: MultiPoly, v: str) -> list[MultiPoly]:
    parts = p.coeffs_in(v)
    deg = max(parts)
    zero = p.zero()
    return [parts.get(k, zero) for k in range(deg + 1)]


def _undense(coeffs: Sequence[MultiPoly], v: str, like: MultiPoly) -> MultiPoly:
    return MultiPoly.from_coeffs_in(v, {k: c for k, c in enumerate(coeffs) if not c.is_zero()}, like)


def _trim_polys(c: list) -> list:
    while c and c[-1].is_zero():
        c.pop()
    return c


def _prem(A: list, B: list) -> list:
    """Pseudo-remainder of dense coefficient lists (in the main variable)."""
    R = list(A)
    n = len(B) - 1
    b = B[-1]
    e = len(A) - len(B) + 1
    while len(R) - 1 >= n and R:
        c = R[-1]
        shift = len(R) - 1 - n
        newR = [r * b for r in R[:-1]]
        for j in range(n):
            if not B[j].is_zero():
                newR[shift + j] = newR[shift + j] - c * B[j]
        R = _trim_polys(newR)
        e -= 1
    if e > 0 and R:
        f = b**e
        R = [r * f for r in R]
    return R


def _subresultant_gcd(a: MultiPoly, b: MultiPoly, v: str) -> MultiPoly:
    A, B = _dense_in(a, v), _dense_in(b, v)
    if len(A) < len(B):
        A, B = B, A
    one = a.one()
    g = h = one
    while True:
        delta = len(A) - len(B)
        R = _prem(A, B)
        if not R:
            break
        if len(R) == 1:
            return one
        A = B
        div = g * h**delta
        B = [r.divexact(div) for r in R]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g**delta).divexact(h ** (delta - 1))
    last = _undense(B, v, a)
    return primitive_part_in(last, v)


# -- resultants ---------------------------------------------------------


def sylvester_matrix(a: MultiPoly, b: MultiPoly, var: str) -> list[list[MultiPoly]]:
    """Sylvester matrix with the ``a`` rows first, coefficients from the top degree down."""
    m, n = a.degree_in(var), b.degree_in(var)
    ca, cb = a.coeffs_in(var), b.coeffs_in(var)
    zero = a.zero()
    arow = [ca.get(k, zero) for k in range(m, -1, -1)]
    brow = [cb.get(k, zero) for k in range(n, -1, -1)]
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + arow + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + brow + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(matrix: list[list[MultiPoly]]) -> MultiPoly:
    """Fraction-free determinant; entries are polynomials (exact division)."""
    M = [list(r) for r in matrix]
    N = len(M)
    if N == 0:
        raise ValueError("empty matrix")
    sign = 1
    prev = None
    for k in range(N - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, N) if not M[i][k].is_zero()), None)
            if swap is None:
                return M[0][0].zero()
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, N):
            for j in range(k + 1, N):
                val = M[i][j] * pivot - M[i][k] * M[k][j]
                M[i][j] = val if prev is None else val.divexact(prev)
            M[i][k] = pivot.zero()
        prev = pivot
    det = M[N - 1][N - 1]
    return det if sign == 1 else -det


def resultant(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant of ``a`` and ``b`` with respect to ``var``.

    Convention: determinant of :func:`sylvester_matrix`, so for example
    ``res(a*t^2 + b*t + c, 2*a*t + b, t) = a*(4*a*c - b^2)``.
    """
    field = _check_pair(a, b)
    if var not in a.variables:
        raise VariableMismatchError(f"{var!r} is not a ring variable")
    m, n = a.degree_in(var), b.degree_in(var)
    if m <= 0 and n <= 0:
        raise ValueError(f"{var!r} is absent from both inputs")
    if a.is_zero() or b.is_zero():
        return a.zero().with_field(field)
    if n == 0:
        return (b**m).with_field(field)
    if m == 0:
        return (a**n).with_field(field)
    return bareiss_det(sylvester_matrix(a, b, var)).with_field(field)


def lcm_poly(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return (a * b).divexact(poly_gcd(a, b)).monic("grlex")


def product(polys: Iterable[MultiPoly], like: MultiPoly) -> MultiPoly:
    return reduce(lambda x, y: x * y, polys, like.one())
