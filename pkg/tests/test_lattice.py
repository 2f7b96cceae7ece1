"""Picard lattices of blown-up planes and their isometries."""

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cremona_kit.algebra.linalg import rank
from cremona_kit.lattice import (
    IsometryError,
    PicIsometry,
    PicLattice,
    bertini,
    check_ro1_divisibility,
    class_name,
    complementary_pentagon,
    count_order5_isometries,
    geiser,
    invariant_rank,
    isometry_from_cycle,
    minimal_pair_check,
    minus_one_classes,
    orbit_decomposition,
    order5_isometries,
    parse_class,
    pentagon_splittings,
    power_relation,
    relabelling,
    standard_pentagon,
    trace,
)


def brute_force_minus_one(r):
    """Independent enumeration: a^2 - sum b^2 = -1, 3a - sum b = 1, in a box |b| <= a + 1, 0 <= a <= 6."""
    out = set()
    for a in range(0, 7):
        for bs in itertools.product(range(-1, a + 2), repeat=r):
            if a * a - sum(b * b for b in bs) == -1 and 3 * a - sum(bs) == 1:
                out.add((a,) + tuple(-b for b in bs))
    return out


@pytest.mark.parametrize("r,count", [(1, 1), (2, 3), (3, 6), (4, 10), (5, 16), (6, 27)])
def test_minus_one_counts_against_brute_force(r, count):
    classes = {tuple(int(t) for t in c) for c in minus_one_classes(r)}
    assert len(classes) == count
    assert classes == brute_force_minus_one(r)


def test_minus_one_counts_large_r():
    assert [len(minus_one_classes(r)) for r in (7, 8)] == [56, 240]
    L = PicLattice(8)
    assert all(L.dot(E, E) == -1 and L.dot(E, L.K) == -1 for E in minus_one_classes(L))


def test_class_names_round_trip():
    L = PicLattice(4)
    for c in minus_one_classes(L):
        assert np.array_equal(parse_class(class_name(c), 4), c)
    assert np.array_equal(parse_class("L'12", 4), L.L() - L.E(1) - L.E(2))


# -- random Weyl group elements ------------------------------------------------------------


def simple_roots(L):
    roots = [L.E(i) - L.E(i + 1) for i in range(1, L.r)]
    if L.r >= 3:
        roots.append(L.L() - L.E(1) - L.E(2) - L.E(3))
    return roots


def reflection(L, D):
    n = L.rank
    G = L.gram
    cols = []
    for k in range(n):
        v = np.eye(n, dtype=np.int64)[k]
        cols.append(v + int(v @ G @ D) * D)
    return np.column_stack(cols)


@st.composite
def weyl_elements(draw, r):
    L = PicLattice(r)
    roots = simple_roots(L)
    word = draw(st.lists(st.integers(0, len(roots) - 1), max_size=8))
    M = np.eye(L.rank, dtype=np.int64)
    for i in word:
        M = reflection(L, roots[i]) @ M
    return PicIsometry(L, M)


@given(st.integers(3, 8).flatmap(weyl_elements))
def test_weyl_elements_are_isometries_permuting_classes(M):
    L = M.lattice
    G = L.gram
    assert np.array_equal(M.matrix.T @ G @ M.matrix, G)
    assert np.array_equal(M(L.K), L.K)
    classes = {tuple(int(t) for t in c) for c in minus_one_classes(L)}
    assert {tuple(int(t) for t in M(c)) for c in classes} == classes


@given(st.integers(3, 6).flatmap(weyl_elements))
def test_rank_nullity(M):
    n = M.lattice.rank
    image_rank = rank((M.matrix - np.eye(n, dtype=np.int64)).tolist())
    assert invariant_rank(M) + image_rank == n


@given(weyl_elements(7), weyl_elements(4))
def test_conjugates_keep_ro1_divisibility(W7, W4):
    for base, W in ((geiser(), W7), (isometry_from_cycle(PicLattice(4), standard_pentagon()), W4)):
        M = W @ base @ W.inverse()
        rep = check_ro1_divisibility(M.lattice, M)
        assert rep["pass"]
        assert all(o["a"] * rep["d"] == rep["n"] for o in rep["orbits"])


# -- constructors and validation --------------------------------------------------------------


def test_isometry_validation():
    L = PicLattice(2)
    with pytest.raises(IsometryError):
        PicIsometry(L, np.diag([1, 1, 2]))
    swap = np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    assert PicIsometry(L, swap).order() == 2
    with pytest.raises(IsometryError):
        PicIsometry(L, np.array([[1, 0, 0], [0, -1, 0], [0, 0, 1]]))  # preserves the form, moves K


def test_geiser():
    G = geiser()
    L = G.lattice
    assert np.array_equal(G(L.K), L.K)
    E = minus_one_classes(L)[0]
    assert np.array_equal(G(E), -E - L.K)
    assert G.order() == 2 and invariant_rank(G) == 1 and trace(G) == -6
    orbits = orbit_decomposition(G, minus_one_classes(L))
    assert len(orbits) == 28 and all(list(o["sum"]) == list(-L.K) for o in orbits)
    ok, witnesses = minimal_pair_check(G)
    assert ok and all(w["k"] == 1 for w in witnesses)
    assert check_ro1_divisibility(L, G)["pass"]


def test_bertini():
    B = bertini()
    L = B.lattice
    assert B.order() == 2 and invariant_rank(B) == 1 and trace(B) == -7
    orbits = orbit_decomposition(B, minus_one_classes(L))
    assert len(orbits) == 120
    # E + B(E) = -2K, so every orbit sum is 2(-K), matching n = a d with n = 2, d = 1
    assert all(list(o["sum"]) == list(-2 * L.K) for o in orbits)
    assert check_ro1_divisibility(L, B)["pass"]
    assert minimal_pair_check(B)[0]


def test_identity_properties():
    L = PicLattice(6)
    I = PicIsometry.identity(L)
    assert invariant_rank(I) == 7 and trace(I) == 7
    assert all(len(o["members"]) == 1 for o in orbit_decomposition(I, minus_one_classes(L)))
    assert not minimal_pair_check(I)[0]


# -- the pentagon on r = 4 ------------------------------------------------------------------------


def test_pentagon_isometry():
    L = PicLattice(4)
    D1 = standard_pentagon(L)
    assert list(sum(D1)) == list(-L.K)
    s = isometry_from_cycle(L, D1)
    assert s.order() == 5 and invariant_rank(s) == 1
    D2 = complementary_pentagon(L)
    images = [tuple(int(t) for t in s(c)) for c in D2]
    keys = [tuple(int(t) for t in c) for c in D2]
    assert set(images) == set(keys) and images != keys
    orbits = orbit_decomposition(s, minus_one_classes(L))
    assert sorted(len(o["members"]) for o in orbits) == [5, 5]
    assert all(list(o["sum"]) == list(-L.K) for o in orbits)
    rep = check_ro1_divisibility(L, s)
    assert rep["pass"] and {o["a"] for o in rep["orbits"]} == {1}
    ok, witnesses = minimal_pair_check(s)
    assert ok
    with pytest.raises(IsometryError):
        isometry_from_cycle(L, D1[:3])


def test_ro1_precondition():
    L = PicLattice(4)
    with pytest.raises(ValueError):
        check_ro1_divisibility(L, relabelling(L, [2, 1, 3, 4]))  # invariant rank 4


def test_order5_counts():
    assert count_order5_isometries() == 24
    splits = pentagon_splittings()
    assert len(splits) == 6
    classes = minus_one_classes(4)
    keys = [tuple(int(t) for t in c) for c in classes]
    per = {}
    for M in order5_isometries():
        halves = tuple(
            sorted(tuple(sorted(keys.index(tuple(m)) for m in o["members"])) for o in orbit_decomposition(M, classes))
        )
        per[halves] = per.get(halves, 0) + 1
    assert sorted(per.values()) == [4] * 6


def test_power_relation_with_relabelling():
    L = PicLattice(4)
    s = isometry_from_cycle(L, standard_pentagon(L))
    assert power_relation(s**3, s) == {"m": 3, "relabelling": [1, 2, 3, 4]}
    P = relabelling(L, [2, 3, 1, 4])
    rel = power_relation(P.inverse() @ s @ P, s)
    assert rel is not None
    Q = relabelling(L, rel["relabelling"])
    assert Q @ (P.inverse() @ s @ P) @ Q.inverse() == s ** rel["m"]
