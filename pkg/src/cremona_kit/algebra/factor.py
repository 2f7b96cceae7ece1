"""Factorization over Q and simple number fields, delegated to sympy.

Only the conversion layer lives here.  sympy's ``factor_list`` does the work
over ``QQ`` or over an algebraic field whose primitive element is the
generator of our :class:`NumberField`; the conversion asserts that the two
defining polynomials agree, so coordinates transfer without rewriting.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import sympy as sp

from .fields import NFElement, NumberField, common_field, mpq, to_rational
from .poly import MultiPoly

__all__ = [
    "BinaryFactorization",
    "factor_binary_form",
    "factor_poly",
    "univariate_factors",
    "univariate_roots",
    "to_sympy",
    "from_sympy",
]


@lru_cache(maxsize=None)
def _sympy_domain(field: NumberField | None):
    if field is None:
        return sp.QQ
    if field.order is not None:
        root = sp.exp(2 * sp.pi * sp.I / field.order)
    else:
        t = sp.Symbol("t")
        modpoly = sp.Poly([sp.Rational(str(c)) for c in reversed(field.modulus)], t)
        root = sp.CRootOf(modpoly, 0)
    K = sp.QQ.algebraic_field(root)
    ours = [sp.Rational(str(c)) for c in reversed(field.modulus)]
    theirs = [sp.Rational(c) for c in K.mod.to_list()]
    if ours != theirs:
        raise ArithmeticError(f"sympy picked a different primitive element for {field!r}")
    return K


def _rat_to_sympy(q) -> sp.Rational:
    q = to_rational(q)
    return sp.Rational(int(q.numerator), int(q.denominator))


def _scalar_to_sympy(c, field: NumberField | None, K):
    if field is None:
        return K.convert(_rat_to_sympy(c))
    if not isinstance(c, NFElement):
        c = field(c)
    coeffs = [_rat_to_sympy(x) for x in reversed(c.coords)]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    return K.dtype(coeffs, K.mod.to_list(), sp.QQ)


def _scalar_from_sympy(c, field: NumberField | None, K):
    if field is None:
        q = K.to_sympy(c)
        return mpq(int(q.p), int(q.q))
    coeffs = [mpq(int(x.numerator), int(x.denominator)) for x in reversed(c.to_list())]
    if not any(coeffs):
        return mpq(0)
    el = field(coeffs)
    r = el.rational_value()
    return el if r is None else r


def to_sympy(p: MultiPoly, field: NumberField | None = None) -> sp.Poly:
    field = common_field(p.field, field)
    K = _sympy_domain(field)
    gens = sp.symbols(p.variables)
    data = {e: _scalar_to_sympy(c, field, K) for e, c in p.terms.items()}
    if not data:
        data = {(0,) * len(gens): K.zero}
    return sp.Poly.from_dict(data, *gens, domain=K)


def from_sympy(q: sp.Poly, like: MultiPoly, field: NumberField | None = None) -> MultiPoly:
    field = common_field(like.field, field)
    K = q.get_domain()
    idx = [like.variables.index(str(g)) for g in q.gens]
    n = len(like.variables)
    terms = {}
    for mono, c in q.rep.to_dict().items():
        e = [0] * n
        for i, k in zip(idx, mono):
            e[i] = k
        v = _scalar_from_sympy(c, field, K)
        if v:
            terms[tuple(e)] = v
    return MultiPoly._new(like.variables, like.weights, terms, field)


def factor_poly(p: MultiPoly, field: NumberField | None = None) -> tuple[object, list[tuple[MultiPoly, int]]]:
    """Irreducible factorization over the coefficient field: ``(unit, [(factor, mult), ...])``.

    Factors are monic under grlex and sorted by (degree, printed form).
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    field = common_field(p.field, field)
    if p.is_constant():
        return p.constant_value(), []
    q = to_sympy(p, field)
    lc, facs = q.factor_list()
    out = []
    unit = _scalar_from_sympy(q.get_domain().convert(lc), field, q.get_domain())
    for f, m in facs:
        mp = from_sympy(f, p, field)
        c = mp.leading_coefficient("grlex")
        unit = unit * c**m
        out.append((mp.monic("grlex"), m))
    out.sort(key=lambda fm: (fm[0].degree(), str(fm[0]), fm[1]))
    return unit, out


@dataclass
class BinaryFactorization:
    """Splitting of a binary form into linear factors plus an irreducible residual."""

    unit: object
    linear: list = dc_field(default_factory=list)
    residual: list = dc_field(default_factory=list)

    def expand(self, like: MultiPoly) -> MultiPoly:
        acc = like.one().scale(self.unit)
        for f, m in self.linear + self.residual:
            acc = acc * f**m
        return acc

    @property
    def splits(self) -> bool:
        return not self.residual

    def linear_count(self, with_multiplicity: bool = False) -> int:
        return sum(m for _, m in self.linear) if with_multiplicity else len(self.linear)


def factor_binary_form(f: MultiPoly, field: NumberField | None = None) -> BinaryFactorization:
    """Factor a form in at most two variables over its coefficient field.

    Linear factors come with multiplicities; every residual factor is
    irreducible over the coefficient field (not necessarily over its closure).
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero form")
    if not f.is_homogeneous():
        raise ValueError("factor_binary_form needs a homogeneous input")
    if len(f.used_variables()) > 2:
        raise ValueError(f"more than two variables in use: {f.used_variables()}")
    unit, facs = factor_poly(f, field)
    out = BinaryFactorization(unit)
    for g, m in facs:
        (out.linear if g.total_degree() == 1 else out.residual).append((g, m))
    return out


def _upoly_to_sympy(coeffs: list, field: NumberField | None):
    K = _sympy_domain(field)
    t = sp.Symbol("t")
    data = [_scalar_to_sympy(c, field, K) for c in reversed(coeffs)]
    return sp.Poly.from_list(data, t, domain=K), K


def univariate_factors(coeffs: list, field: NumberField | None = None) -> list[tuple[list, int]]:
    """Monic irreducible factors of a dense univariate polynomial (low degree first)."""
    while coeffs and not coeffs[-1]:
        coeffs = coeffs[:-1]
    if len(coeffs) <= 1:
        return []
    q, K = _upoly_to_sympy(coeffs, field)
    _, facs = q.factor_list()
    out = []
    for g, m in facs:
        c = [_scalar_from_sympy(x, field, K) for x in reversed(g.rep.to_list())]
        inv = 1 / c[-1]
        out.append(([x * inv for x in c], m))
    out.sort(key=lambda fm: (len(fm[0]), [str(x) for x in fm[0]]))
    return out


def univariate_roots(coeffs: list, field: NumberField | None = None) -> tuple[list, list[list]]:
    """Roots in the field (with multiplicity dropped) and the nonlinear irreducible factors."""
    roots, rest = [], []
    for c, _ in univariate_factors(coeffs, field):
        if len(c) == 2:
            roots.append(-c[0])
        else:
            rest.append(c)
    return roots, rest
