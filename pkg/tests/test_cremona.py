"""Plane Cremona maps: composition, orders, fixed curves, frames, de Jonquieres involutions."""

import pytest
from hypothesis import assume, given, strategies as st

from cremona_kit.algebra.fields import cyclotomic_field, mpq
from cremona_kit.algebra.gcd import gcd_many
from cremona_kit.algebra.linalg import det
from cremona_kit.algebra.parse import parse_poly
from cremona_kit.cremona import (
    FRAME_POINTS,
    VARS,
    CremonaMap,
    ExceedsBound,
    PlaneCurve,
    ProjLinearMap,
    compose,
    conjugate,
    dejonquieres,
    fixed_curve,
    frame_permutation_map,
    nfc_genus,
    order_up_to,
    pgl3_from_frames,
    power,
    tau_a4,
    tau_variant,
)

from conftest import XY, polys


def P(text, field=None):
    return parse_poly(text, VARS, field=field)


@st.composite
def invertible_matrices(draw):
    M = draw(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=3, max_size=3))
    assume(det([[mpq(c) for c in row] for row in M]) != 0)
    return ProjLinearMap(M)


@st.composite
def dejonquieres_curves(draw, d=None):
    d = d or draw(st.integers(3, 4))
    a = draw(polys(XY, homogeneous_degree=d - 2, nonzero=True)).embed(VARS)
    b = draw(polys(XY, homogeneous_degree=d - 1)).embed(VARS)
    c = draw(polys(XY, homogeneous_degree=d)).embed(VARS)
    assume(gcd_many([a, b, c]).is_constant())
    assume(not (b * b - a * c * 4).is_zero())
    z = P("z")
    return a * z * z + b * z + c, d


# -- composition --------------------------------------------------------------------


def test_identity_is_neutral():
    tau = tau_a4()
    I = CremonaMap.identity()
    assert compose(I, tau) == tau and compose(tau, I) == tau


def test_tau_has_order_five():
    for tau in (tau_a4(), tau_variant()):
        assert power(tau, 5).is_identity()
        assert all(not power(tau, k).is_identity() for k in range(1, 5))
        assert order_up_to(tau, 10) == 5
        assert order_up_to(tau, 4) == ExceedsBound(4)
        assert str(order_up_to(tau, 4)) == "exceeds bound"


def test_square_of_tau_is_saturated():
    tau = tau_a4()
    raw = [c.compose(list(tau.components)) for c in tau.components]
    assert max(r.degree() for r in raw) == 4
    sq = compose(tau, tau)
    assert sq.degree < 4
    assert gcd_many(list(sq.components)).is_constant()


@given(invertible_matrices(), invertible_matrices())
def test_composition_is_associative(g, h):
    f = tau_a4()
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


# -- orders and conjugation -------------------------------------------------------


def test_linear_orders():
    K5 = cyclotomic_field(5)
    z = K5.gen
    assert order_up_to(ProjLinearMap.diagonal(1, z, z**2), 10) == 5
    assert order_up_to(ProjLinearMap([[0, 0, 1], [1, 0, 0], [0, 1, 0]]), 10) == 3


@given(invertible_matrices())
def test_order_is_conjugation_invariant(g):
    assert order_up_to(conjugate(tau_a4(), g), 8) == 5
    assert order_up_to(conjugate(ProjLinearMap.diagonal(1, 1, -1).as_cremona(), g), 8) == 2


def test_conjugate_by_identity():
    tau = tau_a4()
    assert conjugate(tau, ProjLinearMap.identity()) == tau


def test_conjugate_of_diagonal_keeps_order():
    K3 = cyclotomic_field(3)
    f = ProjLinearMap.diagonal(1, 1, K3.gen).as_cremona()
    g = ProjLinearMap([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert order_up_to(conjugate(f, g), 6) == 3


def test_conjugacy_by_frame_permutations():
    tau = tau_a4()
    results = {}
    for name, cycles in {"e": [(1, 4, 2, 3)], "f": [(1, 3, 2, 4)], "p": [(1, 2), (3, 4)]}.items():
        conj = conjugate(tau, frame_permutation_map(cycles))
        results[name] = next(k for k in range(1, 5) if conj == power(tau, k))
    assert sorted(results.values()) == [2, 3, 4]


# -- fixed curves -------------------------------------------------------------------


def test_fixed_curves():
    assert fixed_curve(ProjLinearMap.diagonal(1, 1, -1)) == P("z")
    assert fixed_curve(tau_a4()).is_constant()
    with pytest.raises(ValueError):
        fixed_curve(CremonaMap.identity())


@given(invertible_matrices())
def test_fixed_curve_transforms_under_conjugation(g):
    C = P("z*x^2 + z*y^2 + z^2*y + x^3 + 2*y^3")
    J = dejonquieres(C)
    F = fixed_curve(J)
    moved = fixed_curve(conjugate(J, g))
    ginv = g.inverse().as_cremona()
    expected = F.compose(list(ginv.components))
    assert moved.divides(expected) and expected.divides(moved)


# -- frames -----------------------------------------------------------------------------


def test_frames():
    assert pgl3_from_frames(FRAME_POINTS, FRAME_POINTS) == ProjLinearMap.identity()
    g = frame_permutation_map([(1, 2), (3, 4)])
    assert g == ProjLinearMap([[0, 1, -1], [1, 0, -1], [0, 0, -1]])
    B = [(1, 2, 0), (0, 1, 3), (1, 0, 1), (2, 1, 1)]
    assert pgl3_from_frames(FRAME_POINTS, B) @ pgl3_from_frames(B, FRAME_POINTS) == ProjLinearMap.identity()
    with pytest.raises(ValueError):
        pgl3_from_frames(FRAME_POINTS, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])


# -- de Jonquieres ---------------------------------------------------------------------


def test_dejonquieres_example_with_harmonic_sign():
    J = dejonquieres(P("z^2*x + z*y^2 + x^3"))
    assert J == CremonaMap([P("x*(2*x*z + y^2)"), P("y*(2*x*z + y^2)"), P("-(y^2*z + 2*x^3)")])
    assert compose(J, J).is_identity()
    unsigned = CremonaMap([P("x*(2*x*z + y^2)"), P("y*(2*x*z + y^2)"), P("y^2*z + 2*x^3")])
    assert not compose(unsigned, unsigned).is_identity()


def test_dejonquieres_rejects_degenerate_input():
    with pytest.raises(ValueError):
        dejonquieres(P("z*(x^2 + y^2) + x^3"))  # a = 0
    with pytest.raises(ValueError):
        dejonquieres(P("z^3 + x^3 + y^3"))


def test_dejonquieres_degree_four_has_order_two():
    C = PlaneCurve.parse("z^2*x*y + z*(x^3 + y^3) + x^4 + 2*y^4 + x*y^3", [((0, 0, 1), 2)])
    J = dejonquieres(C)
    assert order_up_to(J, 4) == 2 and J.degree == 4
    assert C.equation.divides(fixed_curve(J))
    assert nfc_genus(C) == 2


def test_dejonquieres_quintic_with_triple_point():
    C = PlaneCurve.parse("z^2*(x^3 + y^3) + z*(x^4 - y^4) + x^5 + 2*y^5 + x^2*y^3", [((0, 0, 1), 3)])
    J = dejonquieres(C)
    assert compose(J, J).is_identity() and J.degree == 5
    assert C.equation.divides(fixed_curve(J))
    assert nfc_genus(C) == 3


@given(dejonquieres_curves())
def test_dejonquieres_is_an_involution_of_degree_d(data):
    C, d = data
    J = dejonquieres(C)
    assert compose(J, J).is_identity()
    assert J.degree == d
    assert C.divides(fixed_curve(J))


# -- genus ---------------------------------------------------------------------------------


def test_nfc_genus():
    assert nfc_genus(PlaneCurve.parse("x^3 + y^3 + z^3")) == 1
    # quartic with an ordinary node at (0,0,1)
    assert nfc_genus(PlaneCurve.parse("x*y*z^2 + x^4 + y^4", [((0, 0, 1), 2)])) == 2
    with pytest.raises(ValueError):
        nfc_genus(PlaneCurve.parse("x*y*z^2 + x^4 + y^4"))  # node not declared
    with pytest.raises(ValueError):
        nfc_genus(PlaneCurve.parse("y^2*z - x^3", [((0, 0, 1), 2)]))  # cusp is not ordinary
    with pytest.raises(ValueError):
        nfc_genus(PlaneCurve.parse("x*y*z"))  # reducible
    with pytest.raises(ValueError):
        PlaneCurve.parse("x^3 + y^3 + z^3", [((0, 0, 1), 2)])  # wrong declared multiplicity
