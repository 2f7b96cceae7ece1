"""Fermat lines, cubic pencils, Weierstrass forms and the Gr(2,5) construction."""

import numpy as np
import pytest
import sympy as sp
from hypothesis import assume, given, strategies as st

from cremona_kit.algebra.fields import cyclotomic_field, mpq
from cremona_kit.algebra.poly import MultiPoly
from cremona_kit.lattice import PicIsometry
from cremona_kit.surfaces import (
    CubicPencil,
    EllipticModel,
    classify_cubic,
    fermat_cubic,
    fermat_sigma_action,
    grassmannian_check,
    j_invariant,
    line_intersections,
    lines_on_fermat,
    parse_elliptic_model,
    pencil_discriminant,
    pencil_singular_members,
    plucker_relations,
    weierstrass_normalize,
)


# -- the 27 lines --------------------------------------------------------------------------


@pytest.fixture(scope="module")
def lines():
    return lines_on_fermat()


def test_27_lines(lines):
    F = fermat_cubic()
    assert len(lines) == 27
    assert all(l.lies_on(F) for l in lines)
    assert all(l.plucker_residual() == 0 for l in lines)
    assert len({l.plucker for l in lines}) == 27
    M = line_intersections(lines)
    assert np.array_equal(M, M.T)
    assert set((M == 1).sum(axis=1)) == {10}
    assert set(np.diag(M)) == {-1}


def test_sigma_action(lines):
    s = fermat_sigma_action(0)
    M = line_intersections(lines)
    P = np.zeros((27, 27), dtype=np.int64)
    for i, j in enumerate(s.permutation):
        P[j, i] = 1
    assert np.array_equal(P @ M @ P.T, M)
    # the isometry re-validates under the lattice constructor
    PicIsometry(s.isometry.lattice, s.isometry.matrix)
    assert (s.trace, s.invariant_rank, s.order) == (-2, 1, 3)


# -- pencils ------------------------------------------------------------------------------------


def test_z5511_pencil():
    P = CubicPencil.parse("y*(x - y)*(x - z)", "x*z*(y - z)")
    rep = pencil_singular_members(P)
    assert rep["discriminant_degree"] == 12 and rep["multiplicity_total"] == 12
    kinds = {m["parameter"]: m["kind"] for m in rep["members"]}
    assert kinds["lambda = 0"] == "triangle" and kinds["lambda = oo"] == "triangle"
    others = [m for m in rep["members"] if m["kind"] != "triangle"]
    assert sum(m["degree"] for m in others) == 2
    assert all(m["kind"] == "irreducible nodal" for m in others)
    assert len(rep["base_points"]) == 5


def test_hesse_pencil():
    K = cyclotomic_field(3)
    P = CubicPencil.parse("x^3 + y^3 + z^3", "x*y*z", K)
    rep = pencil_singular_members(P)
    triangles = [m for m in rep["members"] if m["kind"] == "triangle"]
    assert len(triangles) == 4
    assert rep["multiplicity_total"] == 12


def test_classify_cubic():
    V = ("x", "y", "z")
    from cremona_kit.algebra.parse import parse_poly

    assert classify_cubic(parse_poly("x^3 + y^3 + z^3", V))[0] == "smooth"
    assert classify_cubic(parse_poly("y^2*z - x^3 - x^2*z", V))[0] == "irreducible nodal"
    assert classify_cubic(parse_poly("y^2*z - x^3", V))[0] == "cuspidal"
    assert classify_cubic(parse_poly("x*y*z", V))[0] == "triangle"


# -- Weierstrass forms ------------------------------------------------------------------------


def tate_j(alpha, b1, b0, g3, g2, g1, g0):
    """j from Tate's formulas for alpha w^2 + w (b1 z + b0) + g3 z^3 + g2 z^2 + g1 z + g0 = 0."""
    R = sp.Rational
    alpha, b1, b0, g3, g2, g1, g0 = map(R, (alpha, b1, b0, g3, g2, g1, g0))
    a1, a3 = b1 / alpha, b0 / alpha
    e, a2, a4, a6 = -g3 / alpha, -g2 / alpha, -g1 / alpha, -g0 / alpha
    # make the cubic monic: x = X / e, y = Y / e
    a3, a4, a6 = a3 * e, a4 * e, a6 * e * e
    b2 = a1**2 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3**2 + 4 * a6
    b8 = a1**2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3**2 - a4**2
    c4 = b2**2 - 24 * b4
    disc = -(b2**2) * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6
    return None if disc == 0 else c4**3 / disc


nonzero = st.integers(-5, 5).filter(bool)


@given(nonzero, st.integers(-3, 3), st.integers(-3, 3), nonzero, st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_weierstrass_j_matches_tate(alpha, b1, b0, g3, g2, g1, g0):
    oracle = tate_j(alpha, b1, b0, g3, g2, g1, g0)
    assume(oracle is not None)
    text = f"({alpha})*w^2 + w*(({b1})*z + ({b0})) + ({g3})*z^3 + ({g2})*z^2 + ({g1})*z + ({g0})"
    E = weierstrass_normalize(parse_elliptic_model(text))
    j = j_invariant(E)
    assert sp.Rational(int(j.numerator), int(j.denominator)) == oracle


@given(st.integers(-6, 6), st.integers(-6, 6).filter(bool), st.integers(-4, 4).filter(bool))
def test_j_invariant_under_rescaling(a, b, u):
    assume(4 * a**3 + 27 * b**2 != 0)
    E1 = EllipticModel(MultiPoly.constant(a, ()), MultiPoly.constant(b, ()))
    E2 = EllipticModel(MultiPoly.constant(a * u**4, ()), MultiPoly.constant(b * u**6, ()))
    assert j_invariant(E1) == j_invariant(E2)


def test_weierstrass_examples():
    E = weierstrass_normalize(parse_elliptic_model("w^2 = z^3 + 1"))
    assert str(E.A) == "0" and str(E.B) == "1" and j_invariant(E) == 0
    E = weierstrass_normalize(parse_elliptic_model("w^2 + z^3 + 1 = t^5"))
    assert E.A.is_zero() and j_invariant(E) == 0
    E = weierstrass_normalize(parse_elliptic_model("3*z^3 - w^2 + 5*z*w - z^2 + w + 2*z + 1 = t^5"))
    assert E.A.is_constant() and E.B.degree_in("t") == 5
    with pytest.raises(ValueError):
        j_invariant(weierstrass_normalize(parse_elliptic_model("w^2 = z^3")))


# -- Gr(2,5) ------------------------------------------------------------------------------------


def test_grassmannian():
    assert len(plucker_relations()) == 5
    rep = grassmannian_check(smoothness=True)
    assert rep["wedge"]["pass"] and rep["binomials"]["pass"] and rep["order"]["pass"]
    pair = next(p for p in rep["binomials"]["pairs"] if p["binomial"] == "p01 - p24")
    assert pair["exponents"] == [1, 1]
    assert rep["hilbert"]["projective_dimension"] == 2 and rep["hilbert"]["degree"] == "5"
    assert rep["smoothness"]["pass"] is True


def test_grassmannian_budget_is_skipped_not_failed():
    rep = grassmannian_check(max_steps=3, smoothness=True)
    assert rep["smoothness"]["pass"] is None and "skipped" in rep["smoothness"]
