"""Points of zero-dimensional projective schemes over the coefficient field.

Each affine chart ``x_i = 1, x_j = 0 (j < i)`` is solved by a lexicographic
Groebner basis followed by back substitution of univariate roots.  Roots
that do not lie in the field are not adjoined; they are reported as
unresolved factors so callers can decide what that means for them.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .factor import univariate_roots
from .fields import NumberField, common_field, format_scalar, mpq
from .gcd import gcd_many
from .groebner import Ideal, groebner
from .poly import MultiPoly

__all__ = ["PositiveDimensionalError", "ProjectivePoints", "projective_points", "normalize_point"]


class PositiveDimensionalError(ValueError):
    """The scheme has a component of positive dimension."""


@dataclass
class ProjectivePoints:
    points: list = dc_field(default_factory=list)
    unresolved: list = dc_field(default_factory=list)  # (chart, partial assignment, irreducible factor)

    @property
    def complete(self) -> bool:
        return not self.unresolved

    def formatted(self) -> list[list[str]]:
        return [[format_scalar(c) for c in p] for p in self.points]


def normalize_point(p: Sequence) -> tuple:
    """Scale so the first nonzero coordinate is 1."""
    lead = next(c for c in p if c)
    inv = 1 / lead
    out = []
    for c in p:
        v = c * inv
        r = v.rational_value() if hasattr(v, "rational_value") else None
        out.append(r if r is not None else v)
    return tuple(out)


def _affine_solve(polys: list[MultiPoly], variables: tuple, field, ring_weights) -> tuple[list, list]:
    """Solutions of an affine system, as dicts variable -> value."""
    polys = [p for p in polys if not p.is_zero()]
    if any(p.is_constant() for p in polys):
        return [], []
    if not variables:
        return [{}], []
    if not polys:
        raise PositiveDimensionalError(f"free variables {variables}")
    ring = [p.embed(variables, (1,) * len(variables)) for p in polys]
    gb = groebner(Ideal(ring), "lex")
    if any(g.is_constant() for g in gb):
        return [], []
    n = len(variables)
    for i in range(n):
        if not any(e[i] and sum(e) == e[i] for e in gb.leading_exponents()):
            raise PositiveDimensionalError(f"variable {variables[i]} is not bounded")
    last = variables[-1]
    uni = [g for g in gb if set(g.used_variables()) <= {last}]
    u = gcd_many(uni)
    k = variables.index(last)
    dense = [mpq(0)] * (u.degree_in(last) + 1)
    for e, c in u.terms.items():
        dense[e[k]] = c
    roots, rest = univariate_roots(dense, field)
    sols, unresolved = [], [({}, r) for r in rest]
    for r in roots:
        sub = [g.subs(**{last: r}) for g in gb]
        sub = [g.embed(variables[:-1], (1,) * (n - 1)) for g in sub]
        inner, inner_unres = _affine_solve(sub, variables[:-1], field, ring_weights)
        for s in inner:
            s = dict(s)
            s[last] = r
            sols.append(s)
        for partial, fac in inner_unres:
            partial = dict(partial)
            partial[last] = r
            unresolved.append((partial, fac))
    return sols, unresolved


def projective_points(
    polys: Sequence[MultiPoly], field: NumberField | None = None
) -> ProjectivePoints:
    """All points of ``V(polys)`` in projective space that are defined over the field.

    Every generator must be homogeneous with unit weights.  Raises
    :class:`PositiveDimensionalError` if the zero set is not finite.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise PositiveDimensionalError("no equations")
    variables = polys[0].variables
    field = common_field(field, *(p.field for p in polys))
    out = ProjectivePoints()
    n = len(variables)
    for i in range(n):
        values = {variables[i]: 1}
        values.update({variables[j]: 0 for j in range(i)})
        chart = [p.subs(**values) for p in polys]
        free = variables[i + 1 :]
        sols, unres = _affine_solve(chart, free, field, None)
        for s in sols:
            pt = [mpq(0)] * i + [mpq(1)] + [s[v] for v in free]
            out.points.append(normalize_point(pt))
        for partial, fac in unres:
            out.unresolved.append((variables[i], partial, fac))
    return out
