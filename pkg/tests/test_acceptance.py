"""The thirteen acceptance criteria, each computed directly from the toolkit modules.

Every test prints one ``ACCEPTANCE <n> PASS|FAIL`` line; the lines are
repeated in the terminal summary (see ``conftest.pytest_terminal_summary``).
"""

import time

import numpy as np
import pytest

from cremona_kit.algebra.parse import parse_poly
from cremona_kit.cremona import (
    PlaneCurve,
    compose,
    conjugate,
    dejonquieres,
    fixed_curve,
    frame_permutation_map,
    nfc_genus,
    order_up_to,
    power,
    tau_a4,
    tau_variant,
)
from cremona_kit.lattice import (
    PicLattice,
    bertini,
    check_ro1_divisibility,
    geiser,
    invariant_rank,
    isometry_from_cycle,
    minimal_pair_check,
    minus_one_classes,
    orbit_decomposition,
    order5_isometries,
    pentagon_splittings,
    standard_pentagon,
)
from cremona_kit.surfaces import (
    CubicPencil,
    fermat_cubic,
    fermat_sigma_action,
    grassmannian_check,
    grassmannian_smoothness,
    j_invariant,
    lines_on_fermat,
    parse_elliptic_model,
    pencil_singular_members,
    weierstrass_normalize,
)
from cremona_kit.weighted import (
    DiagonalAction,
    HypersurfaceModel,
    WeightedRing,
    coordinate_automorphisms_A1,
    dual_actions_check,
    invariant_generators,
    jacobian_smooth,
    quotient_presentation,
)

RESULTS: dict[int, str] = {}


def record(n: int, title: str, ok: bool, seconds: float, limit: float, detail: str = ""):
    ok = ok and seconds < limit
    line = f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'} {title} ({seconds:.2f}s, limit {limit:g}s){' - ' + detail if detail else ''}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def test_criterion_01_order_five():
    t0 = time.perf_counter()
    ok = True
    for tau in (tau_a4(), tau_variant()):
        ok &= order_up_to(tau, 10) == 5
        ok &= all(not power(tau, k).is_identity() for k in range(1, 5))
    record(1, "order(tau) = 5 for both order-5 quadratic maps", ok, time.perf_counter() - t0, 5)


def test_criterion_02_dejonquieres():
    t0 = time.perf_counter()
    curves = [
        ("z*x^2 + z*y^2 + z^2*y + x^3 + 2*y^3", 3, []),
        ("z^2*x*y + z*(x^3 + y^3) + x^4 + 2*y^4 + x*y^3", 4, [((0, 0, 1), 2)]),
        ("z^2*(x^3 + y^3) + z*(x^4 - y^4) + x^5 + 2*y^5 + x^2*y^3", 5, [((0, 0, 1), 3)]),
    ]
    ok = True
    for text, d, pts in curves:
        C = PlaneCurve.parse(text, pts)
        J = dejonquieres(C)
        ok &= compose(J, J).is_identity()
        ok &= J.degree == d
        ok &= C.equation.divides(fixed_curve(J))
        ok &= nfc_genus(C) == d - 2
    record(2, "de Jonquieres involutions for d = 3, 4, 5 with genus d-2", ok, time.perf_counter() - t0, 30)


def test_criterion_03_minus_one_counts():
    t0 = time.perf_counter()
    counts = [len(minus_one_classes(r)) for r in range(1, 9)]
    record(3, "(-1)-class counts for r = 1..8", counts == [1, 3, 6, 10, 16, 27, 56, 240], time.perf_counter() - t0, 60, str(counts))


def test_criterion_04_geiser_bertini():
    t0 = time.perf_counter()
    ok = True
    details = []
    for name, M in (("geiser", geiser()), ("bertini", bertini())):
        L = M.lattice
        G = L.gram
        sums_ok = all(list(o["sum"]) == list(-L.K) for o in orbit_decomposition(M, minus_one_classes(L)))
        parts = {
            "order2": M.order() == 2,
            "gram": bool(np.array_equal(M.matrix.T @ G @ M.matrix, G)),
            "fixes_K": bool(np.array_equal(M(L.K), L.K)),
            "rank1": invariant_rank(M) == 1,
            "orbit_sums_-K": sums_ok,
            "minimal_pair": minimal_pair_check(M)[0],
        }
        failed = [k for k, v in parts.items() if not v]
        if failed:
            details.append(f"{name} fails {failed}")
        ok &= not failed
    record(4, "Geiser and Bertini lattice involutions", ok, time.perf_counter() - t0, 5, "; ".join(details))


def test_criterion_05_fermat():
    t0 = time.perf_counter()
    F = fermat_cubic()
    lines = lines_on_fermat()
    sigma = fermat_sigma_action(0)
    ok = len(lines) == 27 and all(l.lies_on(F) for l in lines)
    ok &= sigma.trace == -2 and sigma.invariant_rank == 1
    record(5, "27 lines on the Fermat cubic, sigma trace -2 and invariant rank 1", ok, time.perf_counter() - t0, 30)


def test_criterion_06_prop_d_counts():
    t0 = time.perf_counter()
    R = WeightedRing.standard((1, 1, 1, 1))
    n_fermat = len(coordinate_automorphisms_A1(fermat_cubic()))
    n_other = len(coordinate_automorphisms_A1(R.poly("x^3 - (y*z*w + y^3 + z^3 + w^3)")))
    n_split = len(pentagon_splittings())
    n_iso = len(order5_isometries())
    ok = (n_fermat, n_other, n_split, n_iso) == (8, 2, 6, 24)
    record(6, "case-A1 actions 8/2, pentagon splittings 6, order-5 isometries 24", ok, time.perf_counter() - t0, 120,
           f"{n_fermat}, {n_other}, {n_split}, {n_iso}")


def test_criterion_07_quotients():
    t0 = time.perf_counter()
    R = WeightedRing.standard((1, 1, 2, 3))
    F = "x^6 + 2*x^4*z - x^2*z^2 + 3*z^3 + x^3*w + 5*x*z*w - w^2"
    A = DiagonalAction(5, (0, 1, 0, 0))
    gens = sorted(invariant_generators(R, A).as_strings(R))
    Q = quotient_presentation(HypersurfaceModel(R, R.poly(f"x*y^5 - ({F})"), A))
    expected = parse_poly(f"x*u - ({F})", Q.ring.variables, Q.ring.weights)
    ok = gens == sorted(["x", "y^5", "z", "w"])
    ok &= Q.ring.weights == (1, 2, 3, 5) and Q.relation in (expected, -expected)
    Q2 = quotient_presentation(
        HypersurfaceModel(R, R.poly("z^3 - (x^6 + x*y^5 + 2*y^6 + x^3*w - y^3*w + w^2)"), DiagonalAction(3, (0, 0, 1, 0)))
    )
    ok &= Q2.relation is None and Q2.ring.label() == "P(1,1,3)"
    R1 = WeightedRing.standard((1, 1, 1, 1))
    Q1 = quotient_presentation(HypersurfaceModel(R1, R1.poly("x^3 - (y^3 + z^3 + w^3 + y*z*w)"), DiagonalAction(3, (1, 0, 0, 0))))
    ok &= Q1.relation is None and Q1.ring.label() == "P(1,1,1)"
    record(7, "invariant generators and quotients P(1,2,3,5), P(1,1,3), P^2", ok, time.perf_counter() - t0, 10)


def test_criterion_08_x0():
    t0 = time.perf_counter()
    R = WeightedRing.standard((1, 1, 2, 3))
    X = HypersurfaceModel(R, R.poly("x^6 + x*y^5 + z^3 + w^2"))
    ok = jacobian_smooth(X).smooth and dual_actions_check(X)["both"]
    record(8, "X0 is smooth and admits both the order-3 and order-5 actions", ok, time.perf_counter() - t0, 60)


def test_criterion_09_j_invariant():
    t0 = time.perf_counter()
    fam = weierstrass_normalize(parse_elliptic_model("w^2 + z^3 + 1 = t^5"))
    gen = weierstrass_normalize(parse_elliptic_model("3*z^3 - w^2 + 5*z*w - z^2 + w + 2*z + 1 = t^5"))
    ok = fam.A.is_zero() and j_invariant(fam) == 0
    ok &= gen.A.degree_in("t") <= 0 and not gen.A.is_zero()
    record(9, "A = 0 on the X0 family; A independent of t on a generic case-A3 sample", ok, time.perf_counter() - t0, 10)


def test_criterion_10_pencil():
    t0 = time.perf_counter()
    rep = pencil_singular_members(CubicPencil.parse("y*(x - y)*(x - z)", "x*z*(y - z)"))
    triangles = sorted(m["parameter"] for m in rep["members"] if m["kind"] == "triangle")
    others = [m for m in rep["members"] if m["kind"] != "triangle"]
    ok = triangles == ["lambda = 0", "lambda = oo"]
    ok &= sum(m["degree"] for m in others) == 2 and all(m["kind"] == "irreducible nodal" for m in others)
    record(10, "Z5511 pencil: two triangles and two irreducible nodal members", ok, time.perf_counter() - t0, 30)


def test_criterion_11_grassmannian():
    t0 = time.perf_counter()
    rep = grassmannian_check(smoothness=False)
    ok = all(rep[k]["pass"] for k in ("wedge", "binomials", "order"))
    ok &= rep["hilbert"]["pass"] is True
    ok &= rep["hilbert"]["projective_dimension"] == 2 and rep["hilbert"]["degree"] == "5"
    smooth = grassmannian_smoothness()
    # a budget-limited smoothness run is reported as skipped (None), never as passed
    status = {True: "pass", None: "skipped", False: "fail"}[smooth["pass"]]
    ok &= status != "fail"
    record(11, "P cap Gr(2,5): wedges, binomials, order 5, dimension 2 and degree 5", ok, time.perf_counter() - t0, 600,
           f"smoothness {status}")


def test_criterion_12_conjugacy():
    t0 = time.perf_counter()
    tau = tau_a4()
    generators = {"epsilon": [(1, 4, 2, 3)], "phi": [(1, 3, 2, 4)], "psi": [(1, 2), (3, 4)]}
    witnesses = {}
    for name, cycles in generators.items():
        conj = conjugate(tau, frame_permutation_map(cycles))
        for k in (2, 3, 4):
            if conj == power(tau, k):
                witnesses.setdefault(k, name)
    ok = set(witnesses) == {2, 3, 4}
    record(12, "tau^2, tau^3, tau^4 are frame-permutation conjugates of tau", ok, time.perf_counter() - t0, 60,
           ", ".join(f"k={k}: {v}" for k, v in sorted(witnesses.items())))


def test_criterion_13_ro1():
    t0 = time.perf_counter()
    L4 = PicLattice(4)
    corpus = [
        (PicLattice(7), geiser()),
        (PicLattice(8), bertini()),
        (L4, isometry_from_cycle(L4, standard_pentagon(L4))),
        (PicLattice(6), fermat_sigma_action(0).isometry),
    ]
    ok = all(check_ro1_divisibility(L, M)["pass"] for L, M in corpus)
    record(13, "orbit sums a(-K) with n = a(9-r) for Geiser, Bertini, pentagon, Fermat sigma", ok, time.perf_counter() - t0, 10)
