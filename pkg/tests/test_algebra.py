"""Exact algebra: fields, polynomials, gcd, resultants, factoring, Groebner bases, point solving."""

import pytest
import sympy as sp
from hypothesis import assume, given, strategies as st

from cremona_kit.algebra.factor import factor_binary_form, factor_poly
from cremona_kit.algebra.fields import FieldMismatchError, NumberField, cyclotomic_field, mpq
from cremona_kit.algebra.gcd import poly_gcd, resultant
from cremona_kit.algebra.groebner import (
    GroebnerBudgetExceeded,
    Ideal,
    groebner,
    hilbert_series,
    is_zero_dimensional,
)
from cremona_kit.algebra.parse import PolyParseError, parse_poly
from cremona_kit.algebra.poly import MultiPoly
from cremona_kit.algebra.solve import PositiveDimensionalError, projective_points

from conftest import XY, XYZ, polys, to_sympy_expr

x, y, z = sp.symbols("x y z")


def P(text, variables=XYZ, **kw):
    return parse_poly(text, variables, **kw)


# -- number fields ------------------------------------------------------------------


def test_cyclotomic_relations():
    K = cyclotomic_field(5)
    z5 = K.gen
    assert K.degree == 4
    assert z5**5 == K.one()
    assert sum((z5**k for k in range(5)), K.zero()) == K.zero()


@given(
    st.lists(st.integers(-5, 5), min_size=4, max_size=4),
    st.lists(st.integers(-5, 5), min_size=4, max_size=4),
)
def test_zeta5_arithmetic_matches_sympy(a, b):
    K = cyclotomic_field(5)
    t = sp.Symbol("t")
    mod = t**4 + t**3 + t**2 + t + 1
    prod = K(a) * K(b)
    oracle = sp.Poly(sp.rem(sp.expand(sum(c * t**i for i, c in enumerate(a)) * sum(c * t**i for i, c in enumerate(b))), mod, t), t)
    expected = [oracle.coeff_monomial(t**i) for i in range(4)]
    assert [sp.Rational(int(c.numerator), int(c.denominator)) for c in prod.coords] == expected
    if any(a):
        assert K(a) * K(a) ** -1 == K.one()


def test_fields_do_not_mix():
    with pytest.raises(FieldMismatchError):
        cyclotomic_field(3).gen + cyclotomic_field(5).gen
    with pytest.raises(FieldMismatchError):
        P("zeta*x", field=cyclotomic_field(3)) + P("zeta*x", field=cyclotomic_field(5))


def test_number_field_from_modulus():
    K = NumberField([mpq(-2), mpq(0), mpq(1)], name="r")  # r^2 = 2
    assert K.gen * K.gen == K.one() * 2


# -- polynomials -----------------------------------------------------------------------


@given(polys(), polys())
def test_ring_operations_match_sympy(a, b):
    assert to_sympy_expr(a + b) == sp.expand(to_sympy_expr(a) + to_sympy_expr(b))
    assert to_sympy_expr(a * b) == sp.expand(to_sympy_expr(a) * to_sympy_expr(b))
    assert to_sympy_expr(a - b) == sp.expand(to_sympy_expr(a) - to_sympy_expr(b))


@given(polys())
def test_parse_print_round_trip(a):
    assert P(str(a), XY) == a


@given(polys(nonzero=True), polys(nonzero=True))
def test_exact_division(a, b):
    assert (a * b).divexact(b) == a
    assert b.divides(a * b)


def test_parse_errors():
    with pytest.raises(PolyParseError):
        P("x + ")
    with pytest.raises(PolyParseError):
        P("q*x")


def test_compose_and_homogenize():
    f = P("x^2 + y")
    g = f.compose([P("y"), P("x*z"), P("z")])
    assert g == P("y^2 + x*z")
    assert P("x^2 + y", XYZ).homogenize("z") == P("x^2 + y*z")


# -- gcd and resultants ------------------------------------------------------------------


def test_gcd_examples():
    assert poly_gcd(P("x^2 - y^2"), P("x^2 + 2*x*y + y^2")) == P("x + y")
    f = P("3*x^2 + 6*y")
    assert poly_gcd(f, f.zero()) == P("x^2 + 2*y")
    g = poly_gcd(P("x*z*(x - y)"), P("z*(x - y)*(y - z)"))
    assert g == P("z*(x - y)") or g == P("-z*(x - y)")


@given(polys(XYZ, homogeneous_degree=2), polys(XYZ, homogeneous_degree=2), polys(XYZ, homogeneous_degree=1, nonzero=True))
def test_gcd_contains_common_factor(a, b, c):
    assume(not (a.is_zero() and b.is_zero()))
    g = poly_gcd(a * c, b * c)
    assert c.divides(g)
    oracle = sp.gcd(to_sympy_expr(a * c), to_sympy_expr(b * c))
    assert sp.simplify(to_sympy_expr(g) / oracle).is_number


@given(polys(XY, max_deg=2), polys(XY, max_deg=2))
def test_gcd_matches_sympy(a, b):
    assume(not (a.is_zero() and b.is_zero()))
    g = poly_gcd(a, b)
    oracle = sp.gcd(to_sympy_expr(a), to_sympy_expr(b))
    if oracle == 0:
        assert g.is_zero()
    else:
        assert sp.simplify(to_sympy_expr(g) / oracle).is_number


def test_resultant_examples():
    R = ("t", "x")
    assert resultant(P("t^2 - x", R), P("t - 1", R), "t") == P("1 - x", R)
    abc = ("t", "a", "b", "c")
    r = resultant(P("a*t^2 + b*t + c", abc), P("2*a*t + b", abc), "t")
    assert to_sympy_expr(r) == sp.expand(sp.resultant(sp.sympify("a*t**2+b*t+c"), sp.sympify("2*a*t+b"), sp.Symbol("t")))
    assert sp.factor(to_sympy_expr(r)) in (sp.factor(sp.sympify("a*(4*a*c-b**2)")), sp.factor(sp.sympify("-a*(4*a*c-b**2)")))
    assert resultant(P("x + y"), P("x - y"), "x") in (P("-2*y"), P("2*y"))


@given(polys(XY, max_deg=2), polys(XY, max_deg=2))
def test_resultant_vanishes_iff_common_factor(a, b):
    assume(a.degree_in("x") > 0 and b.degree_in("x") > 0)
    r = resultant(a, b, "x")
    assert to_sympy_expr(r) == sp.expand(sp.resultant(to_sympy_expr(a), to_sympy_expr(b), x))
    assert r.is_zero() == (poly_gcd(a, b).degree_in("x") > 0)


# -- factoring --------------------------------------------------------------------------


def test_binary_factorisations():
    f = factor_binary_form(P("x^2 - y^2", XY))
    assert sorted(str(g) for g, _ in f.linear) == ["x + y", "x - y"]
    f = factor_binary_form(P("x^2 + y^2", XY))
    assert not f.linear and [str(g) for g, _ in f.residual] == ["x^2 + y^2"]
    f = factor_binary_form(P("y*(x - y)*x", XY))
    assert f.linear_count() == 3 and f.splits
    K = cyclotomic_field(3)
    f = factor_binary_form(P("x^3 + y^3", XY, field=K), K)
    assert f.linear_count() == 3


@given(polys(XY, homogeneous_degree=4, nonzero=True))
def test_factor_binary_form_expands_back(f):
    fac = factor_binary_form(f)
    assert fac.expand(f) == f


def test_factor_poly_matches_sympy():
    f = P("(x - y)^2*(x^2 + y*z)*(z + 1)")
    unit, factors = factor_poly(f)
    oracle = sp.factor_list(to_sympy_expr(f))
    assert sorted(m for _, m in factors) == sorted(m for _, m in oracle[1])


# -- Groebner bases and Hilbert series ----------------------------------------------------


def test_groebner_examples():
    gb = Ideal([P("x"), P("y")]).groebner()
    assert set(map(str, gb)) == {"x", "y"}
    I = Ideal([P("x^2 - y"), P("x^3 - z")])
    assert I.contains(P("z - x*y")) and I.contains(P("y^2 - x*z"))
    oracle = sp.groebner([x**2 - y, x**3 - z], x, y, z, order="grevlex")
    assert oracle.contains(z - x * y) and oracle.contains(y**2 - x * z)


def test_x0_jacobian_ideal_is_zero_dimensional():
    V = ("x", "y", "z", "w")
    gens = [P(t, V) for t in ("6*x^5 + y^5", "5*x*y^4", "3*z^2", "2*w", "x^6 + x*y^5 + z^3 + w^2")]
    assert is_zero_dimensional(Ideal(gens).groebner())


@given(st.lists(polys(XYZ, homogeneous_degree=2, nonzero=True), min_size=1, max_size=3), st.randoms())
def test_groebner_invariant_under_permutation_and_repetition(gens, rnd):
    base = {str(g) for g in Ideal(gens).groebner()}
    shuffled = list(gens) + list(gens[:1])
    rnd.shuffle(shuffled)
    assert {str(g) for g in Ideal(shuffled).groebner()} == base


@given(polys(XYZ, homogeneous_degree=2, nonzero=True), polys(XYZ, homogeneous_degree=2, nonzero=True), polys(XYZ, max_deg=3))
def test_membership_matches_sympy(a, b, c):
    I = Ideal([a, b])
    oracle = sp.groebner([to_sympy_expr(a), to_sympy_expr(b)], x, y, z, order="grevlex")
    assert I.contains(c) == oracle.contains(to_sympy_expr(c))


def test_groebner_budget():
    gens = [P("x^3 - y*z^2 + x*y"), P("y^3 - x^2*z + z"), P("z^3 - x*y^2 + y")]
    with pytest.raises(GroebnerBudgetExceeded):
        groebner(Ideal(gens), "grevlex", max_steps=2)


def test_hilbert_series_examples():
    hs = hilbert_series(Ideal([], variables=XYZ))
    assert str(hs) == "1/((1 - t)^3)" or hs.numerator == (1,)
    hs = hilbert_series(Ideal([P("x*y", XY)]))
    assert hs.coefficients(6) == [1, 2, 2, 2, 2, 2]
    assert hs.krull_dimension == 1


@given(st.integers(1, 3), st.integers(1, 4), st.data())
def test_hilbert_series_of_hypersurface(k, d, data):
    variables = ("a", "b", "c")[:k]
    f = data.draw(polys(variables, homogeneous_degree=d, nonzero=True))
    hs = hilbert_series(Ideal([f]))
    assert list(hs.numerator) == [1] + [0] * (d - 1) + [-1]
    assert hs.weights == (1,) * k


# -- point solving ------------------------------------------------------------------------


def test_projective_points():
    pts = projective_points([P("x*y"), P("y*z"), P("x*z")])
    assert sorted(pts.formatted()) == [["0", "0", "1"], ["0", "1", "0"], ["1", "0", "0"]]
    with pytest.raises(PositiveDimensionalError):
        projective_points([P("x*y")])
    pts = projective_points([P("x^2 + y^2"), P("z")])
    assert not pts.complete
