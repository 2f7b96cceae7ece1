"""Concrete geometry: lines on the Fermat cubic, cubic pencils, Weierstrass forms, Gr(2,5).

Everything is exact.  The Fermat lines live over Q(zeta_3); pencil members
at irrational parameters are examined over the number field cut out by the
corresponding factor of the discriminant.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .algebra.factor import factor_binary_form, factor_poly
from .algebra.fields import NFElement, NumberField, common_field, cyclotomic_field, format_scalar, mpq
from .algebra.gcd import bareiss_det
from .algebra.groebner import GroebnerBudgetExceeded, Ideal, groebner, hilbert_series, is_zero_dimensional
from .algebra.linalg import det, inverse, rank
from .algebra.parse import parse_poly
from .algebra.poly import MultiPoly
from .algebra.solve import PositiveDimensionalError, normalize_point, projective_points
from .cremona import VARS, point_multiplicity
from .lattice import PicIsometry, PicLattice, invariant_rank

__all__ = [
    "LineInP3",
    "fermat_cubic",
    "lines_on_fermat",
    "line_intersections",
    "fermat_line_classes",
    "fermat_sigma_action",
    "FermatSigma",
    "CubicPencil",
    "SingularMember",
    "pencil_singular_members",
    "pencil_discriminant",
    "classify_cubic",
    "EllipticModel",
    "weierstrass_normalize",
    "j_invariant",
    "parse_elliptic_model",
    "plucker_relations",
    "grassmannian_check",
    "grassmannian_smoothness",
    "restricted_plucker_ideal",
]

P3_VARS = ("x", "y", "z", "w")


# -- the 27 lines ---------------------------------------------------------------------


@dataclass(frozen=True)
class LineInP3:
    """Line spanned by two points; ``label`` records the two defining linear forms."""

    p: tuple
    q: tuple
    label: str

    @property
    def plucker(self) -> tuple:
        v = [self.p[i] * self.q[j] - self.p[j] * self.q[i] for i, j in itertools.combinations(range(4), 2)]
        return normalize_point(v)

    def plucker_residual(self):
        p01, p02, p03, p12, p13, p23 = self.plucker
        return p01 * p23 - p02 * p13 + p03 * p12

    def lies_on(self, F: MultiPoly) -> bool:
        """Substitute ``s p + t q`` into F and test for the zero polynomial."""
        s, t = MultiPoly.gens(("s", "t"), field=F.field)
        images = [s.scale(a) + t.scale(b) for a, b in zip(self.p, self.q)]
        return F.compose(images).is_zero()

    def image(self, matrix_diag: Sequence) -> "LineInP3":
        return LineInP3(
            tuple(a * c for a, c in zip(self.p, matrix_diag)),
            tuple(a * c for a, c in zip(self.q, matrix_diag)),
            self.label,
        )


def fermat_cubic(field: NumberField | None = None) -> MultiPoly:
    return parse_poly("x^3+y^3+z^3+w^3", P3_VARS, field=field or cyclotomic_field(3))


def lines_on_fermat() -> list[LineInP3]:
    """The 27 lines ``{x_i + a x_j = 0, x_k + b x_l = 0}`` with ``a^3 = b^3 = 1``.

    Ordered by pairing ``{01|23}, {02|13}, {03|12}`` and then by the cube roots
    ``1, zeta, zeta^2`` for ``a`` and ``b``.
    """
    K = cyclotomic_field(3)
    roots = [K.one(), K.gen, K.gen**2]
    names = ["1", "zeta", "zeta^2"]
    out = []
    for (i, j), (k, l) in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
        for (a, an), (b, bn) in itertools.product(zip(roots, names), repeat=2):
            p = [K.zero()] * 4
            q = [K.zero()] * 4
            p[i], p[j] = -a, K.one()
            q[k], q[l] = -b, K.one()
            label = f"{P3_VARS[i]} + {an}*{P3_VARS[j]} = 0, {P3_VARS[k]} + {bn}*{P3_VARS[l]} = 0"
            out.append(LineInP3(tuple(p), tuple(q), label))
    return out


def _meet(a: LineInP3, b: LineInP3) -> bool:
    return not det([list(a.p), list(a.q), list(b.p), list(b.q)])


def line_intersections(lines: Sequence[LineInP3]) -> np.ndarray:
    """Intersection numbers: -1 on the diagonal, 1 for meeting pairs, 0 otherwise."""
    n = len(lines)
    M = -np.eye(n, dtype=np.int64)
    for i, j in itertools.combinations(range(n), 2):
        if _meet(lines[i], lines[j]):
            M[i, j] = M[j, i] = 1
    return M


def fermat_line_classes(lines=None, M=None) -> np.ndarray:
    """Picard classes of the lines in a basis ``(L, E_1..E_6)`` built from six disjoint lines.

    The lexicographically first set of six mutually disjoint lines serves as
    the ``E_i``; a line with ``b_i = l . E_i`` then has class ``a L - sum b_i E_i``
    with ``a = (1 + sum b_i) / 3``.  The result is checked against the full
    intersection matrix.
    """
    lines = lines or lines_on_fermat()
    M = line_intersections(lines) if M is None else M
    chosen = _first_skew_set(M, 6)
    if chosen is None:
        raise AssertionError("no six disjoint lines found")
    classes = []
    for i in range(len(lines)):
        b = [int(M[i, j]) for j in chosen]
        num = 1 + sum(b)
        if num % 3:
            raise AssertionError("line class is not integral")
        classes.append([num // 3] + [-x for x in b])
    C = np.array(classes, dtype=np.int64)
    G = PicLattice(6).gram
    if not np.array_equal(C @ G @ C.T, M):
        raise AssertionError("line classes do not reproduce the intersection matrix")
    return C


def _first_skew_set(M: np.ndarray, size: int, start: int = 0, chosen=()) -> tuple | None:
    if len(chosen) == size:
        return chosen
    for i in range(start, len(M)):
        if all(M[i, j] == 0 for j in chosen):
            found = _first_skew_set(M, size, i + 1, chosen + (i,))
            if found is not None:
                return found
    return None


@dataclass
class FermatSigma:
    isometry: PicIsometry
    permutation: list[int]
    basis_lines: list[int]
    trace: int
    invariant_rank: int
    order: int

    def to_dict(self) -> dict:
        return {
            "matrix": self.isometry.to_list(),
            "line_permutation": self.permutation,
            "basis_lines": self.basis_lines,
            "trace": self.trace,
            "invariant_rank": self.invariant_rank,
            "order": self.order,
        }


def _line_permutation(lines, diag) -> list[int]:
    index = {l.plucker: i for i, l in enumerate(lines)}
    perm = []
    for l in lines:
        img = l.image(diag).plucker
        if img not in index:
            raise AssertionError("image of a line is not a line of the surface")
        perm.append(index[img])
    return perm


def fermat_sigma_action(coordinate: int = 0) -> FermatSigma:
    """Picard action of ``x_i -> zeta_3 x_i`` on the Fermat cubic, as a rank-7 isometry.

    The map is solved on the first seven lines (in list order) whose classes are
    independent and then confirmed on all 27.
    """
    K = cyclotomic_field(3)
    lines = lines_on_fermat()
    M = line_intersections(lines)
    C = fermat_line_classes(lines, M)
    diag = [K.one()] * 4
    diag[coordinate] = K.gen
    perm = _line_permutation(lines, diag)
    P = np.zeros((27, 27), dtype=np.int64)
    for i, j in enumerate(perm):
        P[j, i] = 1
    if not np.array_equal(P @ M @ P.T, M):
        raise AssertionError("sigma does not preserve the intersection matrix")
    basis = []
    for i in range(27):
        if rank([C[j].tolist() for j in basis + [i]]) > len(basis):
            basis.append(i)
        if len(basis) == 7:
            break
    if len(basis) != 7:
        raise AssertionError("line classes do not span the lattice")
    A = [[mpq(int(C[j][k])) for j in basis] for k in range(7)]
    B = [[mpq(int(C[perm[j]][k])) for j in basis] for k in range(7)]
    Ainv = inverse(A)
    Mq = [[sum((B[i][k] * Ainv[k][j] for k in range(7)), mpq(0)) for j in range(7)] for i in range(7)]
    if any(x.denominator != 1 for row in Mq for x in row):
        raise AssertionError("sigma action is not integral")
    Mi = np.array([[int(x) for x in row] for row in Mq], dtype=np.int64)
    for i in range(27):
        if not np.array_equal(Mi @ C[i], C[perm[i]]):
            raise AssertionError("sigma action disagrees on some line")
    iso = PicIsometry(PicLattice(6), Mi)
    return FermatSigma(iso, perm, basis, int(np.trace(Mi)), invariant_rank(iso), iso.order())


# -- cubic pencils ---------------------------------------------------------------------


@dataclass
class CubicPencil:
    """The pencil ``s A + t B`` of plane cubics; the affine parameter is ``lambda = t / s``."""

    A: MultiPoly
    B: MultiPoly

    def __post_init__(self):
        self.A = self.A if self.A.variables == VARS else self.A.embed(VARS)
        self.B = self.B if self.B.variables == VARS else self.B.embed(VARS)
        for F in (self.A, self.B):
            if F.is_zero() or not F.is_homogeneous() or F.degree() != 3:
                raise ValueError("pencil members must be plane cubics")
        if self.A.monic() == self.B.monic():
            raise ValueError("the two cubics are proportional")

    @property
    def field(self):
        return common_field(self.A.field, self.B.field)

    @classmethod
    def parse(cls, a: str, b: str, field: NumberField | None = None) -> "CubicPencil":
        return cls(parse_poly(a, VARS, field=field), parse_poly(b, VARS, field=field))

    def member(self, s, t) -> MultiPoly:
        return self.A.scale(s) + self.B.scale(t)


def _quadric_coefficients(Q: MultiPoly, ring_st: MultiPoly) -> list[MultiPoly]:
    """Coefficients of a form in x, y, z (with s, t coefficients) on the six quadratic monomials."""
    monos = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    out = {m: {} for m in monos}
    for e, c in Q.terms.items():
        key = e[:3]
        out[key][e[3:]] = out[key].get(e[3:], 0) + c
    return [MultiPoly._new(ring_st.variables, ring_st.weights, {k: v for k, v in out[m].items() if v}, Q.field) for m in monos]


def pencil_discriminant(P: CubicPencil) -> MultiPoly:
    """Discriminant of ``s A + t B`` as a binary form of degree 12 in (s, t).

    This is Sylvester's determinant for the resultant of the three partial
    derivatives: the 6x6 coefficient matrix of the partials and of the
    partials of their Jacobian determinant (a constant multiple of the
    resultant, which is irrelevant for locating roots).
    """
    ring = ("x", "y", "z", "s", "t")
    s, t = MultiPoly.variable("s", ring, field=P.field), MultiPoly.variable("t", ring, field=P.field)
    F = P.A.embed(ring) * s + P.B.embed(ring) * t
    Q = [F.derivative(v) for v in VARS]
    H = [[q.derivative(v) for v in VARS] for q in Q]
    J = (
        H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1])
        - H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0])
        + H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0])
    )
    rows = Q + [J.derivative(v) for v in VARS]
    st = MultiPoly(("s", "t"), {}, None, P.field)
    matrix = [_quadric_coefficients(r, st) for r in rows]
    return bareiss_det(matrix)


@dataclass
class SingularMember:
    parameter: str  # "lambda = c", "lambda = oo", or "root of <poly>"
    factor: str
    multiplicity: int  # multiplicity of the factor in the discriminant
    degree: int  # degree of the factor (number of conjugate parameters)
    member: str
    kind: str  # triangle / irreducible nodal / cuspidal / other
    singular_points: list = dc_field(default_factory=list)
    field: dict | None = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def classify_cubic(F: MultiPoly) -> tuple[str, list]:
    """Plane-member type of a cubic: smooth, triangle, irreducible nodal, cuspidal, or other."""
    field = F.field
    try:
        sing = projective_points([F.derivative(v) for v in VARS] + [F], field)
    except PositiveDimensionalError:
        return "other", []
    pts = sing.formatted()
    _, facs = factor_poly(F)
    degrees = sorted(g.degree() for g, m in facs for _ in range(m))
    if degrees == [1, 1, 1] and all(m == 1 for _, m in facs):
        if len(sing.points) == 3:
            return "triangle", pts
        return "other", pts  # concurrent lines
    if degrees == [3]:
        if not sing.points and not sing.unresolved:
            return "smooth", pts
        if len(sing.points) != 1 or sing.unresolved:
            return "other", pts
        m, cone = point_multiplicity(F, sing.points[0])
        if m != 2:
            return "other", pts
        fac = factor_binary_form(cone)
        if all(mult == 1 for _, mult in fac.linear + fac.residual):
            return "irreducible nodal", pts
        return "cuspidal", pts
    return "other", pts


def _lambda_poly(coeffs: list) -> str:
    """Monic polynomial in lambda from low-first coefficients."""
    lc = coeffs[-1]
    terms = {(k,): c / lc for k, c in enumerate(coeffs) if c}
    return str(MultiPoly(("lambda",), terms))


def pencil_singular_members(P: CubicPencil) -> dict:
    """Singular members of a cubic pencil, grouped by irreducible factors of the discriminant."""
    disc = pencil_discriminant(P)
    if disc.is_zero():
        raise ValueError("every member of the pencil is singular")
    fac = factor_binary_form(disc)
    members = []
    base_field = P.field
    for g, mult in fac.linear + fac.residual:
        # g(s, t) = 0; parameter lambda = t / s
        deg = g.total_degree()
        if deg == 1:
            cs = g.terms.get((1, 0), 0)
            ct = g.terms.get((0, 1), 0)
            s_val, t_val = (-ct, cs) if (ct or cs) else (0, 0)
            # g = cs*s + ct*t vanishes at (s, t) = (-ct, cs)
            if s_val:
                lam = t_val / s_val
                param = f"lambda = {format_scalar(lam)}"
                F = P.member(1, lam)
            else:
                param = "lambda = oo"
                F = P.member(0, 1)
            kind, pts = classify_cubic(F)
            members.append(
                SingularMember(param, str(g), mult, 1, str(F.monic()), kind, pts)
            )
            continue
        if base_field is not None:
            members.append(SingularMember(f"root of {g}", str(g), mult, deg, "", "other (not classified over an extension)", []))
            continue
        # residual factor over Q: adjoin a root theta of g(1, lambda)
        coeffs = [mpq(0)] * (g.degree_in("t") + 1)
        for e, c in g.terms.items():
            coeffs[e[1]] = coeffs[e[1]] + c
        if g.degree_in("t") != deg:
            raise AssertionError("residual factor vanishes at infinity")
        lc = coeffs[-1]
        Kf = NumberField([c / lc for c in coeffs], name="theta")
        theta = Kf.gen
        F = P.A.with_field(Kf) + P.B.with_field(Kf).scale(theta)
        kind, pts = classify_cubic(F)
        members.append(
            SingularMember(f"root of {_lambda_poly(coeffs)}", str(g), mult, deg, str(F), kind, pts, Kf.to_dict())
        )
    base = projective_points([P.A, P.B], base_field)
    total = sum(m.multiplicity * m.degree for m in members)
    return {
        "discriminant": str(disc),
        "discriminant_degree": disc.degree(),
        "members": [m.to_dict() for m in members],
        "multiplicity_total": total,
        "base_points": base.formatted(),
        "base_points_unresolved": len(base.unresolved),
    }


# -- Weierstrass forms -------------------------------------------------------------------


@dataclass
class EllipticModel:
    """``w'^2 = z'^3 + A z' + B`` with A, B polynomials in the parameters (constants if none)."""

    A: MultiPoly
    B: MultiPoly

    @property
    def parameters(self) -> tuple[str, ...]:
        return self.A.variables

    def discriminant(self) -> MultiPoly:
        return self.A**3 * 4 + self.B**2 * 27

    def to_dict(self) -> dict:
        j = j_invariant(self)
        return {
            "A": str(self.A),
            "B": str(self.B),
            "parameters": list(self.parameters),
            "discriminant": str(self.discriminant()),
            "j": j if isinstance(j, str) else format_scalar(j),
        }


def weierstrass_normalize(
    f: MultiPoly, z: str = "z", w: str = "w", smooth: bool = False
) -> EllipticModel:
    """Reduce ``alpha w^2 + w (b1 z + b0) + g3 z^3 + g2 z^2 + g1 z + g0`` to Weierstrass form.

    ``alpha`` and ``g3`` must be nonzero constants; the remaining coefficients
    may be polynomials in any further variables (parameters).  Completing the
    square in w, scaling z to make the cubic monic, and completing the cube
    give ``A = b - a^2/3`` and ``B = c - ab/3 + 2a^3/27`` for the monic cubic
    ``Z^3 + a Z^2 + b Z + c``.
    """
    params = tuple(v for v in f.variables if v not in (z, w))
    if f.degree_in(w) != 2 or f.degree_in(z) > 3:
        raise ValueError("expected degree 2 in w and at most 3 in z")

    def coeff(i: int, k: int) -> MultiPoly:
        part = f.coeffs_in(w).get(i)
        if part is None:
            return MultiPoly(params, {}, None, f.field)
        c = part.coeffs_in(z).get(k)
        if c is None:
            return MultiPoly(params, {}, None, f.field)
        return c.embed(params) if params else MultiPoly.constant(c.constant_value(), (), None)

    top = f.coeffs_in(w)[2]
    if not top.is_constant():
        raise ValueError("the w^2 coefficient must be a nonzero constant")
    alpha = top.constant_value()
    b1, b0 = coeff(1, 1), coeff(1, 0)
    if f.coeffs_in(w).get(1) is not None and f.coeffs_in(w)[1].degree_in(z) > 1:
        raise ValueError("the w-linear part may be at most linear in z")
    g = [coeff(0, k) for k in range(4)]
    if not g[3].is_constant() or g[3].is_zero():
        raise ValueError("the z^3 coefficient must be a nonzero constant")
    al = alpha
    # alpha W^2 = R(z) with R = (b1 z + b0)^2 / (4 alpha) - g(z)
    R = [
        b0 * b0 / (4 * al) - g[0],
        b0 * b1 / (2 * al) - g[1],
        b1 * b1 / (4 * al) - g[2],
        -g[3],
    ]
    c = [r / al for r in R]  # W^2 = c3 z^3 + c2 z^2 + c1 z + c0
    c3 = c[3].constant_value()
    a = c[2]
    b = c[1] * c3
    cc = c[0] * c3 * c3
    A = b - a * a / 3
    B = cc - a * b / 3 + a * a * a * mpq(2, 27)
    model = EllipticModel(A, B)
    if smooth and model.discriminant().is_zero():
        raise ValueError("the curve is singular (4A^3 + 27B^2 = 0)")
    return model


def j_invariant(E: EllipticModel):
    """``1728 * 4A^3 / (4A^3 + 27B^2)``: a scalar, or a string ``num/den`` when parameters remain."""
    disc = E.discriminant()
    if disc.is_zero():
        raise ValueError("singular model: the j-invariant is undefined")
    num = E.A**3 * (4 * 1728)
    if num.is_zero():
        return mpq(0)
    if num.is_constant() and disc.is_constant():
        return num.constant_value() / disc.constant_value()
    return f"({num})/({disc})"


def parse_elliptic_model(text: str, z: str = "z", w: str = "w", field=None) -> MultiPoly:
    """Parse an equation in z, w; every other identifier becomes a parameter."""
    if "=" in text:
        lhs, rhs = text.split("=", 1)
        text = f"({lhs}) - ({rhs})"
    names = sorted(set(re.findall(r"[A-Za-z_][A-Za-z0-9_]*", text)) - {z, w, "zeta"})
    return parse_poly(text, (z, w) + tuple(names), field=field)


# -- Gr(2,5) -----------------------------------------------------------------------------

PLUCKER_INDEX = tuple(itertools.combinations(range(5), 2))
PLUCKER_VARS = tuple(f"p{i}{j}" for i, j in PLUCKER_INDEX)
P_SUBSTITUTION = {"p01": "p24", "p02": "p34", "p03": "p12", "p04": "p13"}


def plucker_relations() -> list[MultiPoly]:
    """The quadrics ``p_ij p_kl - p_ik p_jl + p_il p_jk`` for i < j < k < l."""
    g = dict(zip(PLUCKER_INDEX, MultiPoly.gens(PLUCKER_VARS)))
    out = []
    for i, j, k, l in itertools.combinations(range(5), 4):
        out.append(g[(i, j)] * g[(k, l)] - g[(i, k)] * g[(j, l)] + g[(i, l)] * g[(j, k)])
    return out


def _wedge_check(rels) -> bool:
    names = tuple(f"u{i}" for i in range(5)) + tuple(f"v{i}" for i in range(5))
    gens = MultiPoly.gens(names)
    u, v = gens[:5], gens[5:]
    images = [u[i] * v[j] - u[j] * v[i] for i, j in PLUCKER_INDEX]
    return all(r.compose(images).is_zero() for r in rels)


def restricted_plucker_ideal() -> tuple[list[MultiPoly], tuple[str, ...]]:
    """The Pluecker quadrics restricted to the linear subspace P, with P's coordinates."""
    p_vars = tuple(v for v in PLUCKER_VARS if v not in P_SUBSTITUTION)
    gens = dict(zip(p_vars, MultiPoly.gens(p_vars)))
    images = [gens[P_SUBSTITUTION.get(v, v)] for v in PLUCKER_VARS]
    restricted = [r.compose(images) for r in plucker_relations()]
    return [r for r in restricted if not r.is_zero()], p_vars


def grassmannian_smoothness(max_steps: int | None = None) -> dict:
    """Jacobian smoothness test for ``P cap Gr(2,5)``; ``pass`` is None when the budget runs out."""
    rels, p_vars = restricted_plucker_ideal()
    return _smoothness(rels, p_vars, max_steps)


def grassmannian_check(max_steps: int | None = None, smoothness: bool = True) -> dict:
    """Verify the order-5 construction on ``P cap Gr(2,5)``.

    Returns a report with entries ``wedge``, ``binomials``, ``order``,
    ``hilbert`` and ``smoothness``; the last is marked skipped when the
    Groebner budget runs out.
    """
    rels = plucker_relations()
    report: dict = {"relation_count": len(rels), "wedge": {"pass": _wedge_check(rels)}}

    expo = {f"p{i}{j}": (i + j) % 5 for i, j in PLUCKER_INDEX}
    pairs = [
        {"binomial": f"{a} - {b}", "exponents": [expo[a], expo[b]], "equal": expo[a] == expo[b]}
        for a, b in P_SUBSTITUTION.items()
    ]
    report["binomials"] = {"pairs": pairs, "pass": all(p["equal"] for p in pairs)}

    # coordinates of P and the induced action
    p_vars = tuple(v for v in PLUCKER_VARS if v not in P_SUBSTITUTION)
    p_expo = [expo[v] for v in p_vars]
    eigen_dims = {}
    for k in range(1, 5):
        classes = {}
        for e in p_expo:
            classes[(k * e) % 5] = classes.get((k * e) % 5, 0) + 1
        eigen_dims[k] = max(classes.values()) - 1  # largest eigenspace of sigma^k, projective dimension
    report["order"] = {
        "coordinates": list(p_vars),
        "exponents": p_expo,
        "largest_eigenspace_dim": eigen_dims,
        "order": 5,
        "pass": all(d < 2 for d in eigen_dims.values()),
    }

    restricted, _ = restricted_plucker_ideal()
    ideal = Ideal(restricted)
    try:
        hs = hilbert_series(ideal, "grevlex", max_steps)
        report["hilbert"] = {
            "series": str(hs),
            "projective_dimension": hs.projective_dimension,
            "degree": str(hs.degree),
            "pass": hs.projective_dimension == 2 and hs.degree == 5,
        }
    except GroebnerBudgetExceeded as exc:
        report["hilbert"] = {"skipped": str(exc), "pass": None}

    if smoothness:
        report["smoothness"] = _smoothness(restricted, p_vars, max_steps)
    else:
        report["smoothness"] = {"skipped": "not requested", "pass": None}
    return report


def _smoothness(rels: list[MultiPoly], variables, max_steps) -> dict:
    """Jacobian criterion for the codimension-3 cone: ``I + (3x3 minors)`` must be primary to the origin."""
    J = [[r.derivative(v) for v in variables] for r in rels]
    minors = []
    for rows in itertools.combinations(range(len(rels)), 3):
        for cols in itertools.combinations(range(len(variables)), 3):
            m = bareiss_det([[J[i][j] for j in cols] for i in rows])
            if not m.is_zero():
                minors.append(m)
    try:
        gb = groebner(Ideal(list(rels) + minors), "grevlex", max_steps)
    except GroebnerBudgetExceeded as exc:
        return {"skipped": str(exc), "pass": None}
    smooth = any(g.is_constant() for g in gb) or is_zero_dimensional(gb)
    return {"minors": len(minors), "basis_size": len(gb), "pass": smooth}
