"""Weighted coordinate rings, diagonal cyclic actions and hypersurface quotients.

Actions are stored by their exponents: ``x_i -> zeta^(e_i) x_i`` with
``zeta`` a primitive n-th root of unity.  An action that moves a single
coordinate is kept in the normal form where every other exponent is 0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra.fields import cyclotomic_field
from .algebra.groebner import Ideal, groebner, is_zero_dimensional
from .algebra.parse import parse_poly
from .algebra.poly import MultiPoly
from .algebra.solve import projective_points

__all__ = [
    "WeightedRing",
    "DiagonalAction",
    "HypersurfaceModel",
    "UnsupportedPattern",
    "invariant_generators",
    "InvariantGenerators",
    "quotient_presentation",
    "QuotientPresentation",
    "jacobian_smooth",
    "SmoothnessReport",
    "coordinate_automorphisms_A1",
    "dual_actions_check",
]


class UnsupportedPattern(ValueError):
    """The equation does not have one of the elimination shapes handled here."""


@dataclass(frozen=True)
class WeightedRing:
    variables: tuple[str, ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        if len(self.weights) != len(self.variables) or any(w <= 0 for w in self.weights):
            raise ValueError("one positive weight per variable")

    @classmethod
    def standard(cls, weights: Sequence[int]) -> "WeightedRing":
        names = ("x", "y", "z", "w", "u", "v", "s", "t")
        if len(weights) > len(names):
            raise ValueError("too many variables for default names")
        return cls(names[: len(weights)], tuple(weights))

    def label(self) -> str:
        return "P(" + ",".join(str(w) for w in self.weights) + ")"

    def poly(self, text: str, field=None) -> MultiPoly:
        return parse_poly(text, self.variables, self.weights, field)

    def monomials(self, degree: int):
        """Exponent vectors of weighted degree exactly ``degree``."""
        def rec(i, left):
            if i == len(self.weights) - 1:
                w = self.weights[i]
                if left % w == 0:
                    yield (left // w,)
                return
            for k in range(left // self.weights[i] + 1):
                for rest in rec(i + 1, left - k * self.weights[i]):
                    yield (k,) + rest

        return list(rec(0, degree))


@dataclass(frozen=True)
class DiagonalAction:
    order: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        n = int(self.order)
        if n < 2 or any(n % p == 0 for p in range(2, int(n**0.5) + 1)):
            raise ValueError(f"action order must be prime, got {n}")
        object.__setattr__(self, "exponents", tuple(int(e) % n for e in self.exponents))

    @property
    def trivial(self) -> bool:
        return not any(self.exponents)

    def character(self, exponent: Sequence[int]) -> int:
        return sum(a * e for a, e in zip(self.exponents, exponent)) % self.order

    def normalized(self, weights: Sequence[int] | None = None) -> "DiagonalAction":
        """The equivalent action with as many zero exponents as possible.

        Scalars act on a weighted projective space through ``lambda^w_i``, so
        adding ``c * w_i`` to every exponent gives the same automorphism.  Ties
        are broken by the lexicographically smallest exponent vector.
        """
        n = self.order
        weights = tuple(weights) if weights is not None else (1,) * len(self.exponents)
        if len(weights) != len(self.exponents):
            raise ValueError("weights and exponents differ in length")

        def key(exps):
            return (sum(1 for e in exps if e), exps)

        best = self.exponents
        for c in range(n):
            cand = tuple((e - c * w) % n for e, w in zip(self.exponents, weights))
            if key(cand) < key(best):
                best = cand
        return DiagonalAction(n, best)

    def moving(self) -> list[int]:
        return [i for i, e in enumerate(self.exponents) if e]

    def to_dict(self) -> dict:
        return {"order": self.order, "exponents": list(self.exponents)}


@dataclass
class HypersurfaceModel:
    ring: WeightedRing
    equation: MultiPoly
    action: DiagonalAction | None = None

    def __post_init__(self):
        eq = self.equation
        if eq.variables != self.ring.variables or eq.weights != self.ring.weights:
            eq = eq.embed(self.ring.variables, self.ring.weights)
            self.equation = eq
        if eq.is_zero() or not eq.is_homogeneous():
            raise ValueError("equation must be a nonzero weighted-homogeneous polynomial")
        if self.action is not None:
            if len(self.action.exponents) != len(self.ring.variables):
                raise ValueError("action has the wrong number of exponents")
            if len({self.action.character(e) for e in eq.terms}) != 1:
                raise ValueError("equation is not an eigenvector of the action")
            self.action = self.action.normalized(self.ring.weights)

    @property
    def degree(self) -> int:
        return self.equation.degree()

    @classmethod
    def from_dict(cls, data: dict) -> "HypersurfaceModel":
        weights = tuple(data["weights"])
        variables = tuple(data.get("variables") or WeightedRing.standard(weights).variables)
        ring = WeightedRing(variables, weights)
        field = cyclotomic_field(int(data["field"])) if data.get("field") else None
        eq = parse_poly(data["equation"], variables, weights, field)
        act = data.get("action")
        action = None
        if act is not None:
            if isinstance(act, dict):
                action = DiagonalAction(int(act["order"]), tuple(act["exponents"]))
            else:
                action = DiagonalAction(int(data["order"]), tuple(act))
        return cls(ring, eq, action)

    def to_dict(self) -> dict:
        out = {
            "variables": list(self.ring.variables),
            "weights": list(self.ring.weights),
            "equation": str(self.equation),
        }
        if self.action is not None:
            out["action"] = self.action.to_dict()
        return out


# -- invariant monomials ----------------------------------------------------------


@dataclass
class InvariantGenerators:
    generators: list[tuple[int, ...]]
    bound: int
    checked: int  # invariant monomials up to the bound verified to factor through the generators

    def as_strings(self, ring: WeightedRing) -> list[str]:
        out = []
        for e in self.generators:
            out.append(str(MultiPoly.monomial(e, ring.variables, ring.weights)))
        return out


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def invariant_generators(
    R: WeightedRing, A: DiagonalAction, degree_bound: int | None = None
) -> InvariantGenerators:
    """Minimal monomial generators of the invariant subring, with a completeness certificate.

    By Noether's bound a minimal generator has ordinary degree at most ``n``,
    hence weighted degree at most ``n * max weight``.
    The default bound doubles that, and the certificate re-checks that every
    invariant monomial up to the bound factors through the generators.
    """
    n = A.order
    need = n * max(R.weights)
    bound = 2 * need if degree_bound is None else degree_bound
    if bound < need:
        raise ValueError(f"degree bound {bound} is below {need} = order x max weight")
    if len(A.exponents) != len(R.weights):
        raise ValueError("action and ring have different numbers of variables")
    invariants = []
    for d in range(1, bound + 1):
        invariants.extend(e for e in R.monomials(d) if A.character(e) == 0)
    gens = []
    for e in invariants:  # ascending degree, so proper divisors were seen first
        if not any(_divides(g, e) for g in gens):
            gens.append(e)
    # certificate: peel generators off each invariant monomial
    inv_set = set(invariants)
    checked = 0
    for e in invariants:
        rest = e
        while any(rest):
            g = next((g for g in gens if _divides(g, rest)), None)
            if g is None:
                raise AssertionError(f"invariant monomial {e} does not factor")
            rest = tuple(x - y for x, y in zip(rest, g))
            if any(rest) and rest not in inv_set:
                raise AssertionError(f"quotient {rest} of {e} is not invariant")
        checked += 1
    key = lambda e: (sum(w * x for w, x in zip(R.weights, e)), tuple(-x for x in e))
    return InvariantGenerators(sorted(gens, key=key), bound, checked)


# -- quotients ------------------------------------------------------------------


@dataclass
class QuotientPresentation:
    ring: WeightedRing
    relation: MultiPoly | None
    substitution: dict = dc_field(default_factory=dict)  # new variable -> monomial text
    annotations: dict = dc_field(default_factory=dict)

    def label(self) -> str:
        if self.relation is None:
            return self.ring.label()
        return f"{{{self.relation} = 0}} in {self.ring.label()}"

    def to_dict(self) -> dict:
        return {
            "variables": list(self.ring.variables),
            "weights": list(self.ring.weights),
            "ambient": self.ring.label(),
            "relation": None if self.relation is None else str(self.relation),
            "substitution": self.substitution,
            "annotations": self.annotations,
        }


def _fresh_name(taken) -> str:
    for name in ("u", "v", "s", "t", "u1", "u2"):
        if name not in taken:
            return name
    raise ValueError("no fresh variable name")


def quotient_presentation(X: HypersurfaceModel) -> QuotientPresentation:
    """Presentation of ``X / <sigma>`` when one coordinate ``v`` moves and appears only through ``v^n``.

    The invariant ring is generated by the other coordinates and ``u = v^n``.
    Writing the equation as ``G(others, u)``: if ``G`` is linear in ``u`` with
    a constant coefficient the relation eliminates ``u`` and the quotient is
    the weighted projective space of the other coordinates; otherwise the
    quotient is the hypersurface ``G = 0`` in the enlarged space.
    """
    if X.action is None or X.action.trivial:
        raise UnsupportedPattern("a nontrivial action is required")
    A = X.action
    moving = A.moving()
    if len(moving) != 1:
        raise UnsupportedPattern(f"action moves {len(moving)} coordinates; exactly one is supported")
    i = moving[0]
    n = A.order
    eq = X.equation
    if len({A.character(e) for e in eq.terms}) != 1 or A.character(next(iter(eq.terms))) != 0:
        raise UnsupportedPattern("the action does not fix the equation")
    if any(e[i] % n for e in eq.terms):
        raise UnsupportedPattern(f"{X.ring.variables[i]} occurs with exponents not divisible by {n}")
    others = [k for k in range(len(X.ring.variables)) if k != i]
    v = X.ring.variables[i]
    u = _fresh_name(X.ring.variables)
    new_vars = tuple(X.ring.variables[k] for k in others) + (u,)
    new_weights = tuple(X.ring.weights[k] for k in others) + (n * X.ring.weights[i],)
    terms = {}
    for e, c in eq.terms.items():
        terms[tuple(e[k] for k in others) + (e[i] // n,)] = c
    G = MultiPoly(new_vars, terms, new_weights, eq.field)
    subst = {u: f"{v}^{n}"}
    parts = G.coeffs_in(u)
    lin = parts.get(1)
    if G.degree_in(u) == 1 and lin is not None and lin.is_constant():
        ring = WeightedRing(new_vars[:-1], new_weights[:-1])
        return QuotientPresentation(ring, None, subst)
    ring = WeightedRing(new_vars, new_weights)
    # sign convention: the u-linear term with positive leading coefficient
    rel = G if (lin is None or lin.leading_coefficient("grevlex") > 0) else -G
    notes = {}
    if G.degree_in(u) == 1 and lin is not None and len(lin.terms) == 1:
        # the point where only u is nonzero is the image of the fixed coordinate point
        w = new_weights[-1]
        notes["singular_point"] = {
            "coordinates": {u: 1},
            "label": f"1/{w}(1,{w - 1})" if w == 5 else None,
            "computed": False,
        }
    return QuotientPresentation(ring, rel, subst, notes)


# -- smoothness -----------------------------------------------------------------


@dataclass
class SmoothnessReport:
    smooth: bool
    basis: list[str]
    singular_points: list | None = None
    ambient_strata_met: list = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "smooth": self.smooth,
            "groebner_basis": self.basis,
            "singular_points": self.singular_points,
            "ambient_singular_strata_met": self.ambient_strata_met,
        }


def _ambient_strata(X: HypersurfaceModel) -> list[list[str]]:
    """Coordinate strata of the ambient with a common weight factor that meet X."""
    R = X.ring
    met = []
    n = len(R.weights)
    for size in range(1, n):
        for S in itertools.combinations(range(n), size):
            if math.gcd(*(R.weights[k] for k in S)) == 1:
                continue
            zero = {R.variables[k]: 0 for k in range(n) if k not in S}
            restricted = X.equation.subs(**zero)
            if size > 1 or restricted.is_zero():
                met.append([R.variables[k] for k in S])
    return met


def jacobian_smooth(X: HypersurfaceModel, max_steps: int | None = None) -> SmoothnessReport:
    """Jacobian criterion on the affine cone: smooth iff ``(f, df)`` is primary to the origin.

    Raises :class:`GroebnerBudgetExceeded` when the step budget runs out.
    """
    f = X.equation
    gens = [f] + [f.derivative(v) for v in X.ring.variables]
    gb = groebner(Ideal(gens), "grevlex", max_steps)
    smooth = any(g.is_constant() for g in gb) or is_zero_dimensional(gb)
    points = None
    if not smooth and all(w == 1 for w in X.ring.weights):
        try:
            found = projective_points(list(gb))
            points = found.formatted()
        except ValueError:
            points = None
    return SmoothnessReport(smooth, [str(g) for g in gb], points, _ambient_strata(X))


# -- the automorphism counts ----------------------------------------------------------


def coordinate_automorphisms_A1(F: MultiPoly | HypersurfaceModel) -> list[DiagonalAction]:
    """Order-3 diagonal actions moving one coordinate of a cubic surface and preserving it.

    These are the actions for which the equation reads ``x_i^3 = F(others)``.
    """
    eq = F.equation if isinstance(F, HypersurfaceModel) else F
    if len(eq.variables) != 4 or any(w != 1 for w in eq.weights) or eq.degree() != 3:
        raise ValueError("expected a cubic form in four unweighted variables")
    out = []
    for i in range(4):
        for k in (1, 2):
            A = DiagonalAction(3, tuple(k if j == i else 0 for j in range(4)))
            if len({A.character(e) for e in eq.terms}) == 1:
                out.append(A)
    return out


def dual_actions_check(X: HypersurfaceModel) -> dict:
    """Whether a sextic in P(1,1,2,3) admits the order-3 z-action and the order-5 y-action."""
    if X.ring.weights != (1, 1, 2, 3) or X.degree != 6:
        raise ValueError("expected a sextic in P(1,1,2,3)")
    eq = X.equation
    z_act = DiagonalAction(3, (0, 0, 1, 0))
    y_act = DiagonalAction(5, (0, 1, 0, 0))

    def admits(act: DiagonalAction, idx: int) -> bool:
        chars = {act.character(e) for e in eq.terms}
        return len(chars) == 1 and all(e[idx] % act.order == 0 for e in eq.terms)

    a2 = admits(z_act, 2)
    a3 = admits(y_act, 1)
    # the order-5 case needs y to enter through x*y^5
    a3 = a3 and all(e[1] == 0 or (e[1] == 5 and e[0] == 1) for e in eq.terms)
    return {
        "order3_z_action": {"action": z_act.to_dict(), "admitted": a2},
        "order5_y_action": {"action": y_act.to_dict(), "admitted": a3},
        "both": a2 and a3,
    }
