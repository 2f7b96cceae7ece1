"""Picard lattices of plane blowups and their isometries.

Coordinates are taken in the basis ``(L, E_1, ..., E_r)`` with intersection
form ``diag(1, -1, ..., -1)`` and canonical class ``K = -3L + E_1 + ... + E_r``.
Isometries act on column vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .algebra.fields import mpq
from .algebra.linalg import inverse, nullspace, rank

__all__ = [
    "PicLattice",
    "PicIsometry",
    "IsometryError",
    "minus_one_classes",
    "geiser",
    "bertini",
    "isometry_from_cycle",
    "invariant_rank",
    "orbit_decomposition",
    "check_ro1_divisibility",
    "minimal_pair_check",
    "count_order5_isometries",
    "order5_isometries",
    "pentagon_splittings",
    "pentagon_cycles",
    "standard_pentagon",
    "complementary_pentagon",
    "trace",
    "class_name",
    "parse_class",
    "relabelling",
    "power_relation",
]


class IsometryError(ValueError):
    pass


@dataclass(frozen=True)
class PicLattice:
    """``Z^(1+r)`` with the form ``diag(1, -1, ..., -1)``."""

    r: int

    def __post_init__(self):
        if not 1 <= self.r <= 8:
            raise ValueError(f"r must lie in 1..8, got {self.r}")

    @property
    def rank(self) -> int:
        return 1 + self.r

    @property
    def gram(self) -> np.ndarray:
        return np.diag([1] + [-1] * self.r).astype(np.int64)

    @property
    def K(self) -> np.ndarray:
        return np.array([-3] + [1] * self.r, dtype=np.int64)

    @property
    def degree(self) -> int:
        return 9 - self.r

    def dot(self, a, b) -> int:
        a, b = np.asarray(a), np.asarray(b)
        return int(a[0] * b[0] - np.dot(a[1:], b[1:]))

    def L(self) -> np.ndarray:
        v = np.zeros(self.rank, dtype=np.int64)
        v[0] = 1
        return v

    def E(self, i: int) -> np.ndarray:
        v = np.zeros(self.rank, dtype=np.int64)
        v[i] = 1
        return v

    def line(self, i: int, j: int) -> np.ndarray:
        """Strict transform of the line through p_i and p_j: ``L - E_i - E_j``."""
        return self.L() - self.E(i) - self.E(j)


class PicIsometry:
    """Integer matrix preserving the form and fixing ``K``."""

    __slots__ = ("lattice", "matrix")

    def __init__(self, lattice: PicLattice, matrix):
        M = np.array(matrix, dtype=np.int64)
        n = lattice.rank
        if M.shape != (n, n):
            raise IsometryError(f"expected a {n}x{n} matrix")
        G = lattice.gram
        if not np.array_equal(M.T @ G @ M, G):
            raise IsometryError("matrix does not preserve the intersection form")
        if not np.array_equal(M @ lattice.K, lattice.K):
            raise IsometryError("matrix does not fix K")
        self.lattice = lattice
        self.matrix = M

    @classmethod
    def identity(cls, lattice: PicLattice) -> "PicIsometry":
        return cls(lattice, np.eye(lattice.rank, dtype=np.int64))

    def __call__(self, v) -> np.ndarray:
        return self.matrix @ np.asarray(v, dtype=np.int64)

    def __matmul__(self, other: "PicIsometry") -> "PicIsometry":
        return PicIsometry(self.lattice, self.matrix @ other.matrix)

    def __pow__(self, k: int) -> "PicIsometry":
        if k < 0:
            return self.inverse() ** (-k)
        return PicIsometry(self.lattice, np.linalg.matrix_power(self.matrix, k))

    def __eq__(self, other):
        return isinstance(other, PicIsometry) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def inverse(self) -> "PicIsometry":
        # M^-1 = G M^T G for an isometry of a diagonal +-1 form
        G = self.lattice.gram
        return PicIsometry(self.lattice, G @ self.matrix.T @ G)

    def is_identity(self) -> bool:
        return np.array_equal(self.matrix, np.eye(self.lattice.rank, dtype=np.int64))

    def order(self, bound: int = 200) -> int:
        M = self.matrix
        P = M.copy()
        for k in range(1, bound + 1):
            if np.array_equal(P, np.eye(len(M), dtype=np.int64)):
                return k
            P = P @ M
        raise ValueError(f"order exceeds {bound}")

    def determinant(self) -> int:
        return int(round(np.linalg.det(self.matrix)))

    def to_list(self) -> list[list[int]]:
        return self.matrix.tolist()

    def __repr__(self):
        return f"PicIsometry(r={self.lattice.r}, {self.to_list()})"


# -- (-1)-classes -------------------------------------------------------------


def _a_range(r: int) -> range:
    """Values of ``a`` allowed by ``(1 - 3a)^2 <= r (a^2 + 1)`` (Cauchy-Schwarz)."""
    lo = hi = None
    for a in range(-10, 11):
        if (9 - r) * a * a - 6 * a + (1 - r) <= 0:
            lo = a if lo is None else lo
            hi = a
    return range(lo, hi + 1)


def _vectors(r: int, total: int, norm: int, lo: int = None) -> Iterable[tuple]:
    """Non-increasing integer r-tuples with given sum and sum of squares."""
    if r == 0:
        if total == 0 and norm == 0:
            yield ()
        return
    bound = int(norm**0.5)
    top = bound if lo is None else min(bound, lo)
    for c in range(top, -bound - 1, -1):
        rest_norm = norm - c * c
        rest_total = total - c
        if rest_norm < 0:
            continue
        # remaining r-1 entries, each <= c
        if rest_total * rest_total > (r - 1) * rest_norm:
            continue
        if rest_total > (r - 1) * c:
            continue
        yield from ((c,) + t for t in _vectors(r - 1, rest_total, rest_norm, c))


@lru_cache(maxsize=None)
def _minus_one_cached(r: int) -> tuple[tuple[int, ...], ...]:
    found = set()
    for a in _a_range(r):
        for sorted_c in _vectors(r, 1 - 3 * a, a * a + 1):
            for perm in set(itertools.permutations(sorted_c)):
                found.add((a,) + perm)
    return tuple(sorted(found, key=lambda v: (v[0], tuple(-x for x in v[1:]))))


def minus_one_classes(L: PicLattice | int) -> list[np.ndarray]:
    """All classes with ``E^2 = -1`` and ``E.K = -1``, in a fixed deterministic order.

    Writing ``E = a L + sum c_i E_i`` the conditions read ``sum c_i = 1 - 3a`` and
    ``sum c_i^2 = a^2 + 1``; Cauchy-Schwarz confines ``a`` to a finite interval
    for ``r <= 8``, and the ``c_i`` are then bounded by ``sqrt(a^2 + 1)``.
    """
    if isinstance(L, int):
        L = PicLattice(L)
    return [np.array(v, dtype=np.int64) for v in _minus_one_cached(L.r)]


def class_name(v: Sequence[int]) -> str:
    """Readable form such as ``2L - E1 - E2 - E3 - E4 - E5``."""
    v = [int(x) for x in v]
    parts = []
    a = v[0]
    if a:
        parts.append(("" if a == 1 else "-" if a == -1 else str(a)) + "L")
    for i, c in enumerate(v[1:], start=1):
        if not c:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        sign = "+" if c > 0 else "-"
        if not parts:
            parts.append(("" if c > 0 else "-") + f"{mag}E{i}")
        else:
            parts.append(f"{sign} {mag}E{i}")
    return " ".join(parts) if parts else "0"


def parse_class(text: str, r: int) -> np.ndarray:
    """Inverse of :func:`class_name`; also accepts ``L'12`` for ``L - E1 - E2``."""
    import re

    text = text.replace(" ", "")
    m = re.fullmatch(r"L'(\d)(\d)", text)
    if m:
        return PicLattice(r).line(int(m.group(1)), int(m.group(2)))
    v = np.zeros(1 + r, dtype=np.int64)
    for sign, coef, name, idx in re.findall(r"([+-]?)(\d*)(L|E)(\d*)", text):
        c = int(coef) if coef else 1
        c = -c if sign == "-" else c
        if name == "L":
            v[0] += c
        else:
            i = int(idx)
            if not 1 <= i <= r:
                raise ValueError(f"E{i} out of range for r={r}")
            v[i] += c
    return v


# -- Geiser, Bertini, cycles ---------------------------------------------------


def _reflection_type(L: PicLattice, coeff: int) -> PicIsometry:
    G = L.gram
    K = L.K.reshape(-1, 1)
    M = -np.eye(L.rank, dtype=np.int64) + coeff * (K @ K.T @ G)
    return PicIsometry(L, M)


def geiser(L: PicLattice | None = None) -> PicIsometry:
    """``D -> -D + (D.K) K`` on the degree-2 lattice (r = 7)."""
    L = L or PicLattice(7)
    if L.r != 7:
        raise ValueError("the Geiser action lives on r = 7")
    return _reflection_type(L, 1)


def bertini(L: PicLattice | None = None) -> PicIsometry:
    """``D -> -D + 2(D.K) K`` on the degree-1 lattice (r = 8)."""
    L = L or PicLattice(8)
    if L.r != 8:
        raise ValueError("the Bertini action lives on r = 8")
    return _reflection_type(L, 2)


def isometry_from_cycle(L: PicLattice, cycle: Sequence[Sequence[int]]) -> PicIsometry:
    """The linear map sending ``cycle[i]`` to ``cycle[i+1]`` (indices mod length)."""
    C = [list(map(int, c)) for c in cycle]
    if rank(C) < L.rank:
        raise IsometryError("the classes of the cycle do not span the lattice")
    images = C[1:] + C[:1]
    # pick a spanning subset
    chosen = []
    for i in range(len(C)):
        if rank([C[j] for j in chosen + [i]]) > len(chosen):
            chosen.append(i)
        if len(chosen) == L.rank:
            break
    A = [[mpq(C[j][k]) for j in chosen] for k in range(L.rank)]  # columns = chosen classes
    B = [[mpq(images[j][k]) for j in chosen] for k in range(L.rank)]
    Ainv = inverse(A)
    M = [[sum((B[i][k] * Ainv[k][j] for k in range(L.rank)), mpq(0)) for j in range(L.rank)] for i in range(L.rank)]
    if any(x.denominator != 1 for row in M for x in row):
        raise IsometryError("the cyclic shift is not integral")
    Mi = np.array([[int(x) for x in row] for row in M], dtype=np.int64)
    for c, im in zip(C, images):
        if not np.array_equal(Mi @ np.array(c), np.array(im)):
            raise IsometryError("the cyclic shift is not consistent with a linear map")
    return PicIsometry(L, Mi)


def invariant_rank(M: PicIsometry) -> int:
    """Rank of ``ker(M - I)`` over Q."""
    n = M.lattice.rank
    D = (M.matrix - np.eye(n, dtype=np.int64)).tolist()
    return len(nullspace(D))


def trace(M: PicIsometry) -> int:
    return int(np.trace(M.matrix))


def _key(v) -> tuple:
    return tuple(int(x) for x in v)


def orbit_decomposition(M: PicIsometry, classes: Sequence) -> list[dict]:
    """Partition ``classes`` into orbits of ``M``; each entry lists members and their sum."""
    keys = [_key(c) for c in classes]
    pool = set(keys)
    for k in keys:
        if _key(M(k)) not in pool:
            raise IsometryError(f"image of {class_name(k)} leaves the class set")
    seen = set()
    orbits = []
    for k in keys:
        if k in seen:
            continue
        orbit = [k]
        seen.add(k)
        nxt = _key(M(k))
        while nxt != k:
            orbit.append(nxt)
            seen.add(nxt)
            nxt = _key(M(nxt))
        total = np.sum(np.array(orbit, dtype=np.int64), axis=0)
        orbits.append({"members": orbit, "sum": _key(total)})
    return orbits


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


def check_ro1_divisibility(L: PicLattice, M: PicIsometry) -> dict:
    """Check that every orbit sum of (-1)-classes is ``a(-K)`` with ``n = a d``."""
    if invariant_rank(M) != 1:
        raise ValueError("invariant rank is not 1")
    n = M.order()
    if not _is_prime(n):
        raise ValueError(f"order {n} is not prime")
    d = L.degree
    minusK = -L.K
    rows = []
    ok = True
    for orb in orbit_decomposition(M, minus_one_classes(L)):
        s = np.array(orb["sum"])
        ratios = {mpq(int(x), int(y)) for x, y in zip(s, minusK)}
        a = ratios.pop() if len(ratios) == 1 else None
        good = a is not None and a.denominator == 1 and a > 0 and n == a * d
        ok = ok and good
        rows.append(
            {
                "orbit": [class_name(c) for c in orb["members"]],
                "size": len(orb["members"]),
                "a": None if a is None else int(a) if a.denominator == 1 else str(a),
                "ok": bool(good),
            }
        )
    return {"n": n, "d": d, "orbits": rows, "pass": ok}


def minimal_pair_check(M: PicIsometry, L: PicLattice | None = None) -> tuple[bool, list[dict]]:
    """For each (-1)-class E look for ``k >= 1`` with ``M^k E != E`` and ``E . M^k E >= 1``."""
    L = L or M.lattice
    n = M.order()
    witnesses = []
    ok = True
    for E in minus_one_classes(L):
        found = None
        img = E
        for k in range(1, n):
            img = M(img)
            if not np.array_equal(img, E) and L.dot(E, img) >= 1:
                found = k
                break
        witnesses.append({"class": class_name(E), "k": found})
        ok = ok and found is not None
    return ok, witnesses


# -- order 5 on the quintic del Pezzo -----------------------------------------


def _isometry_from_images(L: PicLattice, images: Sequence[np.ndarray]) -> PicIsometry | None:
    """Isometry sending E_i to images[i-1], with L fixed by K-preservation; None if not integral."""
    s = np.sum(np.array(images), axis=0) - L.K
    if np.any(s % 3):
        return None
    Limg = s // 3
    M = np.column_stack([Limg] + list(images)).astype(np.int64)
    try:
        return PicIsometry(L, M)
    except IsometryError:
        return None


def order5_isometries(L: PicLattice | None = None) -> list[PicIsometry]:
    """All isometries of order 5 fixing K on the r = 4 lattice."""
    L = L or PicLattice(4)
    if L.r != 4:
        raise ValueError("order-5 counting is implemented for r = 4")
    classes = minus_one_classes(L)
    out = []
    for choice in itertools.permutations(range(len(classes)), 4):
        imgs = [classes[i] for i in choice]
        if any(L.dot(imgs[i], imgs[j]) for i in range(4) for j in range(i + 1, 4)):
            continue
        M = _isometry_from_images(L, imgs)
        if M is None or M.is_identity():
            continue
        if np.array_equal(np.linalg.matrix_power(M.matrix, 5), np.eye(5, dtype=np.int64)):
            out.append(M)
    return out


def count_order5_isometries(L: PicLattice | None = None) -> int:
    return len(order5_isometries(L))


def _intersection_graph(L: PicLattice, classes) -> dict[int, set[int]]:
    adj = {i: set() for i in range(len(classes))}
    for i, j in itertools.combinations(range(len(classes)), 2):
        if L.dot(classes[i], classes[j]) > 0:
            adj[i].add(j)
            adj[j].add(i)
    return adj


def _is_induced_cycle(sub: Sequence[int], adj) -> bool:
    s = set(sub)
    if any(len(adj[v] & s) != 2 for v in s):
        return False
    # connected 2-regular graph on 5 vertices is a 5-cycle
    start = sub[0]
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v] & s:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == s


def pentagon_splittings(L: PicLattice | None = None) -> list[tuple[tuple, tuple]]:
    """Unordered splittings of the ten (-1)-classes into two induced pentagons.

    A pentagon is a set of five classes whose intersection graph is a 5-cycle
    (each member meets exactly its two neighbours and is disjoint from the
    other two).  Returned as pairs of sorted index tuples into
    :func:`minus_one_classes`.
    """
    L = L or PicLattice(4)
    if L.r != 4:
        raise ValueError("pentagon splittings are defined for r = 4")
    classes = minus_one_classes(L)
    adj = _intersection_graph(L, classes)
    out = []
    for half in itertools.combinations(range(10), 5):
        if 0 not in half:
            continue
        other = tuple(i for i in range(10) if i not in half)
        if _is_induced_cycle(half, adj) and _is_induced_cycle(other, adj):
            out.append((half, other))
    return out


def pentagon_cycles(L: PicLattice, half: Sequence[int]) -> list[int]:
    """Order the indices of an induced pentagon cyclically, starting from its smallest index."""
    classes = minus_one_classes(L)
    adj = _intersection_graph(L, classes)
    s = set(half)
    cyc = [min(half)]
    prev = None
    while len(cyc) < 5:
        nxt = min(w for w in adj[cyc[-1]] & s if w != prev and w not in cyc)
        prev = cyc[-1]
        cyc.append(nxt)
    return cyc


def standard_pentagon(L: PicLattice | None = None) -> list[np.ndarray]:
    """``[L'12, E1, L'14, L'23, E2]``: a cyclically meeting chain summing to ``-K``."""
    L = L or PicLattice(4)
    return [L.line(1, 2), L.E(1), L.line(1, 4), L.line(2, 3), L.E(2)]


def complementary_pentagon(L: PicLattice | None = None) -> list[np.ndarray]:
    """``[L'34, L'13, E4, E3, L'24]``."""
    L = L or PicLattice(4)
    return [L.line(3, 4), L.line(1, 3), L.E(4), L.E(3), L.line(2, 4)]


def relabelling(L: PicLattice, perm: Sequence[int]) -> PicIsometry:
    """The isometry ``E_i -> E_perm[i-1]`` (1-based labels) fixing ``L``."""
    if sorted(perm) != list(range(1, L.r + 1)):
        raise ValueError("not a permutation of the point labels")
    M = np.zeros((L.rank, L.rank), dtype=np.int64)
    M[0, 0] = 1
    for i, j in enumerate(perm, start=1):
        M[j, i] = 1
    return PicIsometry(L, M)


def power_relation(M: PicIsometry, sigma: PicIsometry, relabel: bool = True) -> dict | None:
    """Find ``m`` and a point relabelling ``P`` with ``P M P^-1 = sigma^m``.

    The identity relabelling is tried first, then the others in lexicographic
    order.  Returns ``None`` when no pair exists.
    """
    L = M.lattice
    n = sigma.order()
    powers = [(m, sigma**m) for m in range(1, n)]
    perms = itertools.permutations(range(1, L.r + 1)) if relabel else [tuple(range(1, L.r + 1))]
    for perm in perms:
        P = relabelling(L, perm)
        conj = P @ M @ P.inverse()
        for m, S in powers:
            if conj == S:
                return {"m": m, "relabelling": list(perm)}
    return None
