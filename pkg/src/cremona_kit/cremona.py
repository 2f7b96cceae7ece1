"""Plane Cremona transformations as saturated polynomial triples.

A map is stored as three coprime forms of a common degree in ``x, y, z``.
Composition substitutes and then divides out the common factor, and two
maps are equal when their canonically scaled components coincide.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .algebra.factor import factor_binary_form, factor_poly
from .algebra.fields import NumberField, common_field, format_scalar, mpq
from .algebra.gcd import gcd_many
from .algebra.linalg import det, inverse, matmul, solve
from .algebra.parse import parse_poly
from .algebra.poly import MultiPoly
from .algebra.solve import PositiveDimensionalError, normalize_point, projective_points

VARS = ("x", "y", "z")

__all__ = [
    "VARS",
    "CremonaMap",
    "ProjLinearMap",
    "PlaneCurve",
    "ExceedsBound",
    "compose",
    "power",
    "order_up_to",
    "fixed_curve",
    "conjugate",
    "pgl3_from_frames",
    "frame_permutation_map",
    "dejonquieres",
    "nfc_genus",
    "point_multiplicity",
    "tau_a4",
    "tau_variant",
    "FRAME_POINTS",
    "picard_pullback",
]


def _check_fields(*fields):
    """Common coefficient field; raises ``FieldMismatchError`` for two distinct number fields."""
    return common_field(*fields)


def _canonical(polys: Sequence[MultiPoly]) -> tuple[MultiPoly, ...]:
    first = next(p for p in polys if not p.is_zero())
    c = first.leading_coefficient("grevlex")
    inv = 1 / c
    return tuple(p.scale(inv) for p in polys)


class CremonaMap:
    """Rational self-map of the plane given by three coprime forms of equal degree.

    The constructor saturates by default; pass ``saturate=False`` to insist
    that the components are already coprime (a ``ValueError`` otherwise).
    """

    __slots__ = ("components", "field", "_canon")

    def __init__(self, components: Sequence[MultiPoly], field: NumberField | None = None, saturate: bool = True):
        comps = [c.embed(VARS) if c.variables != VARS else c for c in components]
        if len(comps) != 3:
            raise ValueError("a plane map needs three components")
        if all(c.is_zero() for c in comps):
            raise ValueError("all components are zero")
        degs = {c.degree() for c in comps if not c.is_zero()}
        if len(degs) != 1 or not all(c.is_homogeneous() for c in comps):
            raise ValueError("components must be forms of one common degree")
        field = _check_fields(field, *(c.field for c in comps))
        g = gcd_many(comps)
        if not g.is_constant():
            if not saturate:
                raise ValueError(f"components share the factor {g}")
            comps = [c.divexact(g) for c in comps]
        self.components = _canonical([c.with_field(field) for c in comps])
        self.field = field
        self._canon = self.components

    # -- construction -----------------------------------------------------

    @classmethod
    def parse(cls, text: str, field: NumberField | None = None) -> "CremonaMap":
        """Parse ``"f0; f1; f2"`` in the variables x, y, z."""
        parts = [s for s in text.replace("(x,y,z)->", "").split(";")]
        if len(parts) != 3:
            raise ValueError("expected three components separated by ';'")
        return cls([parse_poly(p, VARS, field=field) for p in parts], field)

    @classmethod
    def identity(cls, field: NumberField | None = None) -> "CremonaMap":
        return cls(MultiPoly.gens(VARS, field=field), field)

    @property
    def degree(self) -> int:
        return next(c.degree() for c in self.components if not c.is_zero())

    def is_identity(self) -> bool:
        if self.degree != 1:
            return False
        x, y, z = MultiPoly.gens(VARS)
        f0, f1, f2 = self.components
        return f0 * y == f1 * x and f0 * z == f2 * x and f1 * z == f2 * y

    def __call__(self, point: Sequence):
        return tuple(c.evaluate(point) for c in self.components)

    def __eq__(self, other):
        return isinstance(other, CremonaMap) and self._canon == other._canon

    def __hash__(self):
        return hash(self._canon)

    def __matmul__(self, other: "CremonaMap") -> "CremonaMap":
        return compose(self, other)

    def __repr__(self):
        return f"CremonaMap({self})"

    def __str__(self):
        return "(" + "; ".join(str(c) for c in self.components) + ")"

    def to_dict(self) -> dict:
        return {
            "components": [str(c) for c in self.components],
            "degree": self.degree,
            "field": None if self.field is None else self.field.to_dict(),
        }


class ProjLinearMap:
    """Element of PGL(3) given by an invertible 3x3 matrix (acting on column vectors)."""

    __slots__ = ("matrix", "field")

    def __init__(self, matrix: Sequence[Sequence], field: NumberField | None = None):
        M = [[c if hasattr(c, "field") else mpq(c) for c in row] for row in matrix]
        if len(M) != 3 or any(len(r) != 3 for r in M):
            raise ValueError("need a 3x3 matrix")
        fields = [getattr(c, "field", None) for r in M for c in r]
        self.field = _check_fields(field, *fields)
        if not det(M):
            raise ValueError("matrix is singular")
        lead = next(c for r in M for c in r if c)
        inv = 1 / lead
        self.matrix = tuple(tuple(_simplify(c * inv) for c in r) for r in M)

    @classmethod
    def identity(cls) -> "ProjLinearMap":
        return cls([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    @classmethod
    def diagonal(cls, a, b, c) -> "ProjLinearMap":
        return cls([[a, 0, 0], [0, b, 0], [0, 0, c]])

    def __matmul__(self, other: "ProjLinearMap") -> "ProjLinearMap":
        return ProjLinearMap(matmul(self.matrix, other.matrix))

    def __eq__(self, other):
        return isinstance(other, ProjLinearMap) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def inverse(self) -> "ProjLinearMap":
        return ProjLinearMap(inverse(self.matrix))

    def apply(self, point: Sequence) -> tuple:
        return normalize_point([sum((a * p for a, p in zip(row, point)), mpq(0)) for row in self.matrix])

    def as_cremona(self) -> CremonaMap:
        x, y, z = MultiPoly.gens(VARS, field=self.field)
        comps = [x.scale(r[0]) + y.scale(r[1]) + z.scale(r[2]) for r in self.matrix]
        return CremonaMap(comps, self.field)

    def __repr__(self):
        return f"ProjLinearMap({self.to_dict()['matrix']})"

    def to_dict(self) -> dict:
        return {"matrix": [[format_scalar(c) for c in r] for r in self.matrix]}


def _simplify(c):
    if hasattr(c, "rational_value"):
        r = c.rational_value()
        return c if r is None else r
    return c


def _as_cremona(f) -> CremonaMap:
    return f.as_cremona() if isinstance(f, ProjLinearMap) else f


# -- composition and iteration ------------------------------------------------


def compose(f: CremonaMap | ProjLinearMap, g: CremonaMap | ProjLinearMap) -> CremonaMap:
    """The saturated composite ``f o g`` (apply ``g`` first)."""
    f, g = _as_cremona(f), _as_cremona(g)
    field = _check_fields(f.field, g.field)
    comps = [c.compose(list(g.components)) for c in f.components]
    return CremonaMap(comps, field)


def power(f: CremonaMap, k: int) -> CremonaMap:
    if k < 0:
        raise ValueError("negative powers need an inverse map")
    acc = CremonaMap.identity(f.field)
    for _ in range(k):
        acc = compose(f, acc)
    return acc


class ExceedsBound(int):
    """Marker returned by :func:`order_up_to` when no power up to the bound is trivial."""

    def __new__(cls, bound: int):
        obj = super().__new__(cls, -1)
        obj.bound = bound
        return obj

    def __repr__(self):
        return f"ExceedsBound({self.bound})"

    def __str__(self):
        return "exceeds bound"


def order_up_to(f: CremonaMap | ProjLinearMap, bound: int):
    """Least ``k <= bound`` with ``f^k`` the identity, else :class:`ExceedsBound`."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    f = _as_cremona(f)
    acc = f
    for k in range(1, bound + 1):
        if acc.is_identity():
            return k
        if k < bound:
            acc = compose(f, acc)
    return ExceedsBound(bound)


def fixed_curve(f: CremonaMap | ProjLinearMap) -> MultiPoly:
    """GCD of the 2x2 minors of ``[[x, y, z], f(x, y, z)]``; the constant 1 if no curve is fixed."""
    f = _as_cremona(f)
    if f.is_identity():
        raise ValueError("the identity fixes every point")
    x, y, z = MultiPoly.gens(VARS, field=f.field)
    f0, f1, f2 = f.components
    minors = [x * f1 - y * f0, x * f2 - z * f0, y * f2 - z * f1]
    return gcd_many(minors)


def conjugate(f: CremonaMap, g: ProjLinearMap) -> CremonaMap:
    """The saturated map ``g o f o g^-1``."""
    _check_fields(f.field, g.field)
    return compose(g, compose(f, g.inverse()))


# -- frames -------------------------------------------------------------------

FRAME_POINTS = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))


def _frame_matrix(pts):
    pts = [[mpq(c) if not hasattr(c, "field") else c for c in p] for p in pts]
    for tri in itertools.combinations(range(4), 3):
        if not det([pts[i] for i in tri]):
            raise ValueError(f"points {tri} of the frame are collinear")
    cols = [[pts[j][i] for j in range(3)] for i in range(3)]
    lam = solve(cols, pts[3])
    return [[cols[i][j] * lam[j] for j in range(3)] for i in range(3)]


def pgl3_from_frames(src: Sequence[Sequence], dst: Sequence[Sequence]) -> ProjLinearMap:
    """The projective map sending ``src[i]`` to ``dst[i]`` for i = 1..4."""
    if len(src) != 4 or len(dst) != 4:
        raise ValueError("a projective frame has four points")
    A = _frame_matrix(src)
    B = _frame_matrix(dst)
    return ProjLinearMap(matmul(B, inverse(A)))


def _parse_cycles(cycles: Iterable[Sequence[int]], n: int = 4) -> list[int]:
    """Image list (0-based) of a permutation given as cycles of 1-based labels."""
    perm = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            perm[a - 1] = b - 1
    return perm


def frame_permutation_map(cycles: Iterable[Sequence[int]]) -> ProjLinearMap:
    """The linear map permuting the standard frame p1..p4 by the given cycles.

    ``[(1, 4, 2, 3)]`` means p1 -> p4 -> p2 -> p3 -> p1.
    """
    perm = _parse_cycles(cycles)
    return pgl3_from_frames(FRAME_POINTS, [FRAME_POINTS[perm[i]] for i in range(4)])


# -- the order-5 maps ---------------------------------------------------------


def tau_a4() -> CremonaMap:
    """(x, y, z) -> (x(z-y), z(x-y), xz)."""
    return CremonaMap.parse("x*(z-y); z*(x-y); x*z")


def tau_variant() -> CremonaMap:
    """(x, y, z) -> (xz, x(z-y), z(x-y))."""
    return CremonaMap.parse("x*z; x*(z-y); z*(x-y)")


# -- curves -------------------------------------------------------------------


@dataclass
class PlaneCurve:
    """A plane curve with its declared singular points ``[(point, multiplicity), ...]``."""

    equation: MultiPoly
    singular_points: list = dc_field(default_factory=list)

    def __post_init__(self):
        eq = self.equation
        if eq.variables != VARS:
            eq = eq.embed(VARS)
        if eq.is_zero() or not eq.is_homogeneous():
            raise ValueError("a plane curve needs a nonzero form in x, y, z")
        self.equation = eq
        pts = []
        for p, m in self.singular_points:
            p = normalize_point([mpq(c) if not hasattr(c, "field") else c for c in p])
            mult, _ = point_multiplicity(eq, p)
            if mult != m:
                raise ValueError(f"declared multiplicity {m} at {p}, found {mult}")
            pts.append((p, m))
        self.singular_points = pts

    @classmethod
    def parse(cls, text: str, singular_points=(), field: NumberField | None = None) -> "PlaneCurve":
        return cls(parse_poly(text, VARS, field=field), list(singular_points))

    @property
    def degree(self) -> int:
        return self.equation.degree()


def _local_expansion(f: MultiPoly, point: Sequence) -> tuple[MultiPoly, int]:
    """``f`` in affine coordinates centred at ``point`` (chart of its first nonzero coordinate)."""
    i = next(k for k, c in enumerate(point) if c)
    p = normalize_point(point)
    images = []
    for k, v in enumerate(f.variables):
        if k == i:
            images.append(f.const(1))
        else:
            images.append(f.var(v) + f.const(p[k]))
    return f.compose(images), i


def point_multiplicity(f: MultiPoly, point: Sequence) -> tuple[int, MultiPoly]:
    """Multiplicity of ``f`` at ``point`` and the tangent cone (lowest local form)."""
    g, _ = _local_expansion(f, point)
    if g.is_zero():
        raise ValueError("the curve contains no isolated information at this point")
    comps = {}
    for e, c in g.terms.items():
        comps.setdefault(sum(e), {})[e] = c
    m = min(comps)
    cone = MultiPoly._new(g.variables, g.weights, comps[m], g.field)
    return m, cone


def _is_ordinary(f: MultiPoly, point) -> bool:
    m, cone = point_multiplicity(f, point)
    if m <= 1:
        return True
    fac = factor_binary_form(cone)
    return all(mult == 1 for _, mult in fac.linear + fac.residual)


def singular_points(C: PlaneCurve | MultiPoly):
    """Singular points of a reduced plane curve that are defined over its field."""
    eq = C.equation if isinstance(C, PlaneCurve) else C
    return projective_points([eq] + [eq.derivative(v) for v in VARS], eq.field)


def nfc_genus(C: PlaneCurve) -> int:
    """Geometric genus of an irreducible plane curve with ordinary singularities.

    Singular points are located exactly (Jacobian ideal), not sampled: any
    singular point missing from the declared list raises ``ValueError``, as
    does a singular point not defined over the coefficient field.
    """
    eq = C.equation
    _, facs = factor_poly(eq)
    if len(facs) != 1 or facs[0][1] != 1:
        raise ValueError("the curve is not irreducible and reduced over its field")
    try:
        found = singular_points(C)
    except PositiveDimensionalError as exc:
        raise ValueError("the curve has a non-reduced component") from exc
    if found.unresolved:
        raise ValueError("singular points outside the coefficient field")
    declared = {p: m for p, m in C.singular_points}
    for p in found.points:
        if p not in declared:
            raise ValueError(f"undeclared singular point {[format_scalar(c) for c in p]}")
    d = C.degree
    g = (d - 1) * (d - 2) // 2
    for p, m in declared.items():
        if m >= 2 and not _is_ordinary(eq, p):
            raise ValueError(f"singular point {[format_scalar(c) for c in p]} is not ordinary")
        g -= m * (m - 1) // 2
    return g


# -- de Jonquieres involutions ---------------------------------------------------


def dejonquieres_coefficients(C: PlaneCurve | MultiPoly) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """Write ``C = a z^2 + b z + c`` with a, b, c forms in x, y."""
    eq = C.equation if isinstance(C, PlaneCurve) else C
    if eq.variables != VARS:
        eq = eq.embed(VARS)
    d = eq.degree()
    if eq.degree_in("z") > 2:
        raise ValueError(f"(0,0,1) is not a point of multiplicity {d - 2}")
    parts = eq.coeffs_in("z")
    zero = eq.zero()
    a, b, c = parts.get(2, zero), parts.get(1, zero), parts.get(0, zero)
    if a.is_zero():
        raise ValueError("coefficient of z^2 vanishes: (0,0,1) has multiplicity above d-2")
    return a, b, c


def dejonquieres(C: PlaneCurve | MultiPoly) -> CremonaMap:
    """Involution sending a point to its harmonic conjugate with respect to C on lines through q.

    Here q = (0, 0, 1) is a point of multiplicity d - 2 on C.  On the line
    through q and (x : y : z) the two residual points of C are the roots
    s of ``a s^2 + b s + c``; the harmonic conjugate of z is
    ``-(b z + 2c) / (2a z + b)``.
    """
    a, b, c = dejonquieres_coefficients(C)
    x, y, z = MultiPoly.gens(VARS, field=a.field)
    den = a * z * 2 + b
    return CremonaMap([x * den, y * den, -(b * z + c * 2)], a.field)


# -- action on the Picard lattice of the blown-up frame --------------------------


def _line_points(p, q):
    """Two distinct points of the line through p and q, other than p and q."""
    return [tuple(a + t * b for a, b in zip(p, q)) for t in (2, 3)]


def picard_pullback(f: CremonaMap, points: Sequence[Sequence] = FRAME_POINTS) -> list[list[int]]:
    """Matrix of ``f^*`` on ``(L, E_1, ..., E_r)`` for a quadratic map with base points among ``points``.

    The three base points contribute ``f^* L = 2L - E_a - E_b - E_c``; the
    exceptional class over ``points[i]`` pulls back either to the line through two
    base points contracted onto it, or to ``E_j`` when ``f`` sends the
    non-base point ``points[j]`` to ``points[i]``.  Columns are pullbacks.
    """
    if f.degree != 2:
        raise ValueError("picard_pullback handles quadratic maps only")
    pts = [normalize_point([mpq(c) for c in p]) for p in points]
    r = len(pts)
    base = [i for i, p in enumerate(pts) if not any(f(p))]
    if len(base) != 3:
        raise ValueError("expected three proper base points among the given points")
    cols = []
    L = [2] + [-1 if i in base else 0 for i in range(r)]
    cols.append(L)
    contracted = {}
    for a, b in itertools.combinations(base, 2):
        imgs = {normalize_point(f(q)) for q in _line_points(pts[a], pts[b])}
        if len(imgs) == 1:
            contracted[imgs.pop()] = (a, b)
    regular = {normalize_point(f(p)): j for j, p in enumerate(pts) if j not in base}
    for i, p in enumerate(pts):
        if p in contracted:
            a, b = contracted[p]
            cols.append([1] + [-1 if k in (a, b) else 0 for k in range(r)])
        elif p in regular:
            j = regular[p]
            cols.append([0] + [1 if k == j else 0 for k in range(r)])
        else:
            raise ValueError(f"the exceptional class over point {i + 1} has no recognised preimage")
    return [[cols[j][i] for j in range(r + 1)] for i in range(r + 1)]
