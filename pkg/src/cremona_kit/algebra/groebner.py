"""Buchberger's algorithm (sugar selection, Gebauer-Moeller pair criteria) and Hilbert series.

Scope is desk-sized ideals: a handful of variables and degrees up to ~10.
Term orders are ``grevlex`` (default), ``grlex`` and ``lex``; graded orders
use the ring weights.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .fields import common_field, mpq
from .poly import MultiPoly, VariableMismatchError, order_key

__all__ = [
    "Ideal",
    "GroebnerBudgetExceeded",
    "groebner",
    "normal_form",
    "hilbert_series",
    "HilbertSeries",
    "is_zero_dimensional",
]


class GroebnerBudgetExceeded(RuntimeError):
    """Raised when a Groebner computation needs more S-pair reductions than allowed."""

    def __init__(self, steps: int, basis_size: int):
        super().__init__(f"Groebner step budget of {steps} exhausted (basis size {basis_size})")
        self.steps = steps
        self.basis_size = basis_size


class Ideal:
    """Finitely generated ideal; ``order`` is set when the generators form a reduced basis."""

    def __init__(
        self,
        generators: Iterable[MultiPoly],
        variables: Sequence[str] | None = None,
        weights: Sequence[int] | None = None,
        order: str | None = None,
    ):
        gens = tuple(g for g in generators if not g.is_zero())
        if gens:
            ring = gens[0]
            for g in gens[1:]:
                if g.variables != ring.variables or g.weights != ring.weights:
                    raise VariableMismatchError("generators live in different rings")
            variables, weights = ring.variables, ring.weights
            self.field = common_field(*(g.field for g in gens))
        else:
            if variables is None:
                raise ValueError("an ideal without generators needs explicit variables")
            variables = tuple(variables)
            weights = tuple(weights) if weights else (1,) * len(variables)
            self.field = None
        self.generators = gens
        self.variables = tuple(variables)
        self.weights = tuple(weights)
        self.order = order

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"Ideal([{', '.join(str(g) for g in self.generators)}])"

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def groebner(self, order: str = "grevlex", max_steps: int | None = None) -> "Ideal":
        if self.order == order:
            return self
        return groebner(self, order, max_steps)

    def contains(self, f: MultiPoly, order: str = "grevlex") -> bool:
        gb = self.groebner(order)
        return normal_form(f, gb.generators, order).is_zero()

    def leading_exponents(self) -> list[tuple]:
        if self.order is None:
            raise ValueError("leading exponents need a Groebner basis")
        return [g.leading_exponent(self.order) for g in self.generators]


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    return not any(x and y for x, y in zip(a, b))


class _Basis:
    """Working storage: monic polynomials as term dicts with cached leading data."""

    def __init__(self, key, weights):
        self.key = key
        self.weights = weights
        self.terms: list[dict] = []
        self.lm: list[tuple] = []
        self.sugar: list[int] = []

    def wdeg(self, e) -> int:
        return sum(w * x for w, x in zip(self.weights, e))

    def add(self, terms: dict, sugar: int) -> int:
        lm = max(terms, key=self.key)
        inv = 1 / terms[lm]
        self.terms.append({e: c * inv for e, c in terms.items()})
        self.lm.append(lm)
        self.sugar.append(sugar)
        return len(self.terms) - 1


def _reduce(terms: dict, basis: _Basis, active: Sequence[int], key) -> dict:
    """Full normal form of ``terms`` modulo the active basis elements."""
    p = dict(terms)
    heap = [tuple(-k for k in key(e)) + (e,) for e in p]
    heapq.heapify(heap)
    rem = {}
    lms = [(basis.lm[i], i) for i in active]
    while heap:
        e = heapq.heappop(heap)[-1]
        c = p.pop(e, None)
        if c is None or not c:
            continue
        red = None
        for lm, i in lms:
            if _divides(lm, e):
                red = i
                break
        if red is None:
            rem[e] = c
            continue
        lm = basis.lm[red]
        shift = tuple(x - y for x, y in zip(e, lm))
        for e2, c2 in basis.terms[red].items():
            if e2 == lm:
                continue
            t = tuple(x + y for x, y in zip(shift, e2))
            v = p.get(t)
            if v is None:
                p[t] = -c * c2
                heapq.heappush(heap, tuple(-k for k in key(t)) + (t,))
            else:
                p[t] = v - c * c2
    return rem


def normal_form(f: MultiPoly, basis: Sequence[MultiPoly], order: str = "grevlex") -> MultiPoly:
    """Remainder of ``f`` on division by ``basis`` (fully reduced)."""
    key = order_key(order, f.weights)
    store = _Basis(key, f.weights)
    active = [store.add(dict(g.terms), 0) for g in basis if not g.is_zero()]
    rem = _reduce(f.terms, store, active, key)
    field = common_field(f.field, *(g.field for g in basis))
    return MultiPoly._new(f.variables, f.weights, rem, field)


def _spoly(basis: _Basis, i: int, j: int) -> tuple[dict, int]:
    lm_i, lm_j = basis.lm[i], basis.lm[j]
    lcm = _lcm(lm_i, lm_j)
    si = tuple(x - y for x, y in zip(lcm, lm_i))
    sj = tuple(x - y for x, y in zip(lcm, lm_j))
    out: dict = {}
    for e, c in basis.terms[i].items():
        out[tuple(x + y for x, y in zip(e, si))] = c
    for e, c in basis.terms[j].items():
        t = tuple(x + y for x, y in zip(e, sj))
        v = out.get(t)
        out[t] = -c if v is None else v - c
    out = {e: c for e, c in out.items() if c}
    sugar = max(basis.sugar[i] + basis.wdeg(si), basis.sugar[j] + basis.wdeg(sj))
    return out, sugar


def _update(basis: _Basis, G: list[int], B: list[tuple[int, int]], h: int):
    lm_h = basis.lm[h]
    C = list(G)
    D: list[int] = []
    while C:
        g1 = C.pop(0)
        l1 = _lcm(basis.lm[g1], lm_h)
        if _coprime(basis.lm[g1], lm_h):
            D.append(g1)
            continue
        redundant = any(_divides(_lcm(basis.lm[g2], lm_h), l1) for g2 in C) or any(
            _divides(_lcm(basis.lm[g2], lm_h), l1) for g2 in D
        )
        if not redundant:
            D.append(g1)
    E = [g for g in D if not _coprime(basis.lm[g], lm_h)]
    B_new = []
    for g1, g2 in B:
        l12 = _lcm(basis.lm[g1], basis.lm[g2])
        if (
            _divides(lm_h, l12)
            and _lcm(basis.lm[g1], lm_h) != l12
            and _lcm(basis.lm[g2], lm_h) != l12
        ):
            continue
        B_new.append((g1, g2))
    B_new.extend((g, h) for g in E)
    G_new = [g for g in G if not _divides(lm_h, basis.lm[g])]
    G_new.append(h)
    return G_new, B_new


def groebner(ideal: Ideal, order: str = "grevlex", max_steps: int | None = None) -> Ideal:
    """Reduced Groebner basis, sorted by decreasing leading monomial.

    ``max_steps`` bounds the number of S-pair reductions; exceeding it raises
    :class:`GroebnerBudgetExceeded`.
    """
    if not ideal.generators:
        raise ValueError("Groebner basis of an empty generator list")
    key = order_key(order, ideal.weights)
    basis = _Basis(key, ideal.weights)
    G: list[int] = []
    B: list[tuple[int, int]] = []
    gens = sorted(ideal.generators, key=lambda g: key(g.leading_exponent(order)))
    for g in gens:
        rem = _reduce(g.terms, basis, G, key)
        if rem:
            h = basis.add(rem, g.degree())
            G, B = _update(basis, G, B, h)
    steps = 0
    while B:
        best = min(
            range(len(B)),
            key=lambda k: (
                max(
                    basis.sugar[B[k][0]] + basis.wdeg(_lcm(basis.lm[B[k][0]], basis.lm[B[k][1]]))
                    - basis.wdeg(basis.lm[B[k][0]]),
                    basis.sugar[B[k][1]] + basis.wdeg(_lcm(basis.lm[B[k][0]], basis.lm[B[k][1]]))
                    - basis.wdeg(basis.lm[B[k][1]]),
                ),
                key(_lcm(basis.lm[B[k][0]], basis.lm[B[k][1]])),
            ),
        )
        i, j = B.pop(best)
        s, sugar = _spoly(basis, i, j)
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise GroebnerBudgetExceeded(max_steps, len(G))
        if not s:
            continue
        rem = _reduce(s, basis, G, key)
        if rem:
            h = basis.add(rem, sugar)
            G, B = _update(basis, G, B, h)

    # minimal basis, then interreduce
    G = [g for g in G if not any(h != g and _divides(basis.lm[h], basis.lm[g]) for h in G)]
    final = []
    for g in G:
        others = [h for h in G if h != g]
        rem = _reduce(basis.terms[g], basis, others, key)
        lm = max(rem, key=key)
        inv = 1 / rem[lm]
        final.append({e: c * inv for e, c in rem.items()})
    final.sort(key=lambda t: key(max(t, key=key)), reverse=True)
    polys = [MultiPoly._new(ideal.variables, ideal.weights, t, ideal.field) for t in final]
    return Ideal(polys, ideal.variables, ideal.weights, order=order)


def is_zero_dimensional(gb: Ideal) -> bool:
    """For a Groebner basis: each variable has a pure power among the leading monomials."""
    lms = gb.leading_exponents()
    n = len(gb.variables)
    for i in range(n):
        if not any(e[i] > 0 and sum(e) == e[i] for e in lms):
            return False
    return True


# -- Hilbert series ---------------------------------------------------------


def _poly_add(a: dict, b: dict, sign: int = 1, shift: int = 0) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k + shift] = out.get(k + shift, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def _minimalize(gens: Iterable[tuple]) -> tuple:
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return tuple(sorted(out))


@lru_cache(maxsize=4096)
def _numerator(gens: tuple, weights: tuple) -> tuple:
    if not gens:
        return ((0, 1),)
    if any(not any(g) for g in gens):
        return ()
    # pairwise coprime generators: product of (1 - t^deg)
    support_seen = set()
    coprime = True
    for g in gens:
        s = {i for i, x in enumerate(g) if x}
        if s & support_seen:
            coprime = False
            break
        support_seen |= s
    if coprime:
        poly = {0: 1}
        for g in gens:
            d = sum(w * x for w, x in zip(weights, g))
            poly = _poly_add(poly, poly, -1, d)
        return tuple(sorted(poly.items()))
    # pivot on the variable occurring in most generators
    counts = [sum(1 for g in gens if g[i]) for i in range(len(weights))]
    i = max(range(len(weights)), key=lambda k: counts[k])
    p = tuple(1 if k == i else 0 for k in range(len(weights)))
    with_p = _minimalize(gens + (p,))
    colon = _minimalize(tuple(tuple(max(x - y, 0) for x, y in zip(g, p)) for g in gens))
    a = dict(_numerator(with_p, weights))
    b = dict(_numerator(colon, weights))
    return tuple(sorted(_poly_add(a, b, 1, weights[i]).items()))


@dataclass(frozen=True)
class HilbertSeries:
    """Hilbert series ``numerator(t) / prod(1 - t^w)`` of a graded quotient ring."""

    numerator: tuple[int, ...]
    weights: tuple[int, ...]

    def _reduced(self) -> tuple[list, int]:
        num = list(self.numerator)
        k = 0
        while num and sum(num) == 0:
            # synthetic division by (1 - t)
            q = []
            acc = 0
            for c in num[:-1]:
                acc += c
                q.append(acc)
            num = q
            k += 1
            while num and num[-1] == 0:
                num.pop()
        return num, k

    @property
    def krull_dimension(self) -> int:
        _, k = self._reduced()
        return len(self.weights) - k

    @property
    def projective_dimension(self) -> int:
        return self.krull_dimension - 1

    @property
    def degree(self) -> Fraction:
        """``lim_{t->1} (1-t)^dim * HS(t)``; the usual degree under standard grading."""
        num, _ = self._reduced()
        denom = 1
        for w in self.weights:
            denom *= w
        return Fraction(sum(num), denom)

    def reduced_numerator(self) -> tuple[int, ...]:
        return tuple(self._reduced()[0])

    def coefficients(self, n: int) -> list[int]:
        """First ``n`` coefficients of the power series (dimensions of graded pieces)."""
        series = [0] * n
        for k, c in enumerate(self.numerator):
            if k < n:
                series[k] += c
        for w in self.weights:
            for k in range(w, n):
                series[k] += series[k - w]
        return series

    def __str__(self):
        terms = []
        for k, c in enumerate(self.numerator):
            if not c:
                continue
            mono = "1" if k == 0 else ("t" if k == 1 else f"t^{k}")
            coef = "" if abs(c) == 1 and k else f"{abs(c)}*" if k else str(abs(c))
            body = mono if k and not coef else (coef + mono if k else coef)
            terms.append(("-" if c < 0 else "+", body))
        num = "0" if not terms else ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for s, b in terms[1:]:
            num += f" {s} {b}"
        den = []
        from collections import Counter

        for w, m in sorted(Counter(self.weights).items()):
            f = "(1 - t)" if w == 1 else f"(1 - t^{w})"
            den.append(f if m == 1 else f"{f}^{m}")
        return f"({num})/({'*'.join(den) or '1'})"

    def to_dict(self) -> dict:
        return {
            "numerator": list(self.numerator),
            "weights": list(self.weights),
            "text": str(self),
            "krull_dimension": self.krull_dimension,
            "degree": str(self.degree),
        }


def hilbert_series(ideal: Ideal, order: str = "grevlex", max_steps: int | None = None) -> HilbertSeries:
    """Hilbert series of ``R/I`` from the leading-term ideal of a Groebner basis."""
    if not ideal.is_homogeneous():
        raise ValueError("Hilbert series needs weighted-homogeneous generators")
    if order == "lex":
        raise ValueError("Hilbert series needs a graded term order")
    if ideal.generators:
        gb = ideal.groebner(order, max_steps)
        lms = _minimalize(gb.leading_exponents())
    else:
        lms = ()
    num = dict(_numerator(lms, ideal.weights))
    top = max(num, default=0)
    return HilbertSeries(tuple(num.get(k, 0) for k in range(top + 1)), ideal.weights)
