"""Sparse multivariate polynomials with exact coefficients.

A :class:`MultiPoly` lives in a ring fixed by an ordered tuple of variable
names and positive integer weights.  Terms are stored as a dict from exponent
tuples to nonzero scalars (``mpq`` or :class:`NFElement`).  Values are treated
as immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

import heapq
from typing import Callable, Iterable, Mapping, Sequence

from .fields import (
    NFElement,
    NumberField,
    common_field,
    format_scalar,
    is_scalar,
    mpq,
    scalar_field,
    to_rational,
)

__all__ = [
    "MultiPoly",
    "VariableMismatchError",
    "NotDivisibleError",
    "order_key",
    "TERM_ORDERS",
]


class VariableMismatchError(ValueError):
    """Polynomials from different rings were combined."""


class NotDivisibleError(ArithmeticError):
    """Exact division failed."""


def _grevlex(weights):
    def key(e):
        return (sum(w * x for w, x in zip(weights, e)),) + tuple(-x for x in reversed(e))

    return key


def _grlex(weights):
    def key(e):
        return (sum(w * x for w, x in zip(weights, e)),) + tuple(e)

    return key


def _lex(weights):
    return tuple


TERM_ORDERS: dict[str, Callable] = {"grevlex": _grevlex, "grlex": _grlex, "lex": _lex}


def order_key(order: str, weights: Sequence[int]) -> Callable:
    """Flat integer sort key for exponent tuples; larger key means larger monomial."""
    try:
        return TERM_ORDERS[order](tuple(weights))
    except KeyError:
        raise ValueError(f"unknown term order {order!r}") from None


def _coerce_scalar(c):
    return c if isinstance(c, NFElement) else to_rational(c)


class MultiPoly:
    __slots__ = ("variables", "weights", "terms", "field", "_hash")

    def __init__(
        self,
        variables: Sequence[str],
        terms: Mapping[tuple, object] | None = None,
        weights: Sequence[int] | None = None,
        field: NumberField | None = None,
    ):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        weights = tuple(weights) if weights is not None else (1,) * len(variables)
        if len(weights) != len(variables) or any(int(w) != w or w <= 0 for w in weights):
            raise ValueError("weights must be positive integers, one per variable")
        clean = {}
        fields = [field]
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != len(variables) or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for variables {variables}")
            c = _coerce_scalar(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                fields.append(scalar_field(c))
        self.variables = variables
        self.weights = weights
        self.terms = {e: c for e, c in clean.items() if c}
        self.field = common_field(*fields)
        self._hash = None

    @classmethod
    def _new(cls, variables, weights, terms, field):
        obj = object.__new__(cls)
        obj.variables = variables
        obj.weights = weights
        obj.terms = terms
        obj.field = field
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, c, variables, weights=None, field=None) -> "MultiPoly":
        n = len(variables)
        return cls(variables, {(0,) * n: c}, weights, field)

    @classmethod
    def variable(cls, name: str, variables, weights=None, field=None) -> "MultiPoly":
        variables = tuple(variables)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1}, weights, field)

    @classmethod
    def gens(cls, variables, weights=None, field=None) -> tuple["MultiPoly", ...]:
        return tuple(cls.variable(v, variables, weights, field) for v in variables)

    @classmethod
    def monomial(cls, exponents, variables, weights=None, coeff=1, field=None) -> "MultiPoly":
        return cls(variables, {tuple(exponents): coeff}, weights, field)

    def zero(self) -> "MultiPoly":
        return MultiPoly._new(self.variables, self.weights, {}, self.field)

    def one(self) -> "MultiPoly":
        return self.const(1)

    def const(self, c) -> "MultiPoly":
        c = _coerce_scalar(c)
        terms = {(0,) * len(self.variables): c} if c else {}
        return MultiPoly._new(
            self.variables, self.weights, terms, common_field(self.field, scalar_field(c))
        )

    def var(self, name: str) -> "MultiPoly":
        return MultiPoly.variable(name, self.variables, self.weights, self.field)

    def with_field(self, field: NumberField | None) -> "MultiPoly":
        return MultiPoly._new(
            self.variables, self.weights, self.terms, common_field(self.field, field)
        )

    def embed(self, variables: Sequence[str], weights: Sequence[int] | None = None) -> "MultiPoly":
        """Re-express in a ring whose variables contain every variable used here."""
        variables = tuple(variables)
        used = set(self.used_variables())
        idx = []
        for v in self.variables:
            if v in variables:
                idx.append(variables.index(v))
            elif v in used:
                raise VariableMismatchError(f"variable {v!r} missing from target ring")
            else:
                idx.append(None)
        if weights is None:
            wmap = dict(zip(self.variables, self.weights))
            weights = tuple(wmap.get(v, 1) for v in variables)
        terms = {}
        n = len(variables)
        for e, c in self.terms.items():
            ne = [0] * n
            for i, x in zip(idx, e):
                if x:
                    ne[i] = x
            terms[tuple(ne)] = c
        return MultiPoly._new(variables, tuple(weights), terms, self.field)

    # -- ring plumbing ------------------------------------------------

    def _same_ring(self, other: "MultiPoly"):
        if other.variables != self.variables or other.weights != self.weights:
            raise VariableMismatchError(
                f"ring mismatch: {self.variables}/{self.weights} vs {other.variables}/{other.weights}"
            )
        return common_field(self.field, other.field)

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            return other
        if is_scalar(other):
            return self.const(other)
        return None

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        field = self._same_ring(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e)
            if v is None:
                terms[e] = c
            else:
                s = v + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return MultiPoly._new(self.variables, self.weights, terms, field)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._new(
            self.variables, self.weights, {e: -c for e, c in self.terms.items()}, self.field
        )

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "MultiPoly":
        c = _coerce_scalar(c)
        if not c:
            return self.zero()
        field = common_field(self.field, scalar_field(c))
        return MultiPoly._new(
            self.variables, self.weights, {e: v * c for e, v in self.terms.items()}, field
        )

    def __mul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        field = self._same_ring(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        bitems = list(b.items())
        for e1, c1 in a.items():
            for e2, c2 in bitems:
                e = tuple([x + y for x, y in zip(e1, e2)])
                v = get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly._new(
            self.variables, self.weights, {e: c for e, c in out.items() if c}, field
        )

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if is_scalar(other):
            c = _coerce_scalar(other)
            if not c:
                raise ZeroDivisionError("division of polynomial by zero")
            return self.scale(1 / c)
        if isinstance(other, MultiPoly):
            if other.is_constant():
                return self / other.constant_value()
            return self.divexact(other)
        return NotImplemented

    def divexact(self, other: "MultiPoly") -> "MultiPoly":
        """Exact quotient ``self / other``; raises :class:`NotDivisibleError`."""
        field = self._same_ring(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return self.zero()
        lm = max(other.terms)
        lc_inv = 1 / other.terms[lm]
        rest = [(e, c) for e, c in other.terms.items() if e != lm]
        rem = dict(self.terms)
        heap = [tuple(-x for x in e) for e in rem]
        heapq.heapify(heap)
        q = {}
        while rem:
            while True:
                e = tuple(-x for x in heapq.heappop(heap))
                if e in rem:
                    break
            c = rem.pop(e)
            shift = tuple(x - y for x, y in zip(e, lm))
            if any(s < 0 for s in shift):
                raise NotDivisibleError("polynomial is not divisible")
            qc = c * lc_inv
            q[shift] = qc
            for e2, c2 in rest:
                t = tuple(x + y for x, y in zip(shift, e2))
                v = rem.get(t)
                if v is None:
                    rem[t] = -qc * c2
                    heapq.heappush(heap, tuple(-x for x in t))
                else:
                    v = v - qc * c2
                    if v:
                        rem[t] = v
                    else:
                        del rem[t]
        return MultiPoly._new(self.variables, self.weights, q, field)

    def divides(self, other: "MultiPoly") -> bool:
        """True if ``self`` divides ``other``."""
        try:
            other.divexact(self)
        except NotDivisibleError:
            return False
        return True

    # -- comparison ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return (
                self.variables == other.variables
                and self.weights == other.weights
                and self.terms == other.terms
            )
        if is_scalar(other):
            if not other:
                return not self.terms
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, self.weights, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        return self.terms.get((0,) * len(self.variables), mpq(0))

    # -- degrees --------------------------------------------------------

    def _wdeg(self, e) -> int:
        return sum(w * x for w, x in zip(self.weights, e))

    def degree(self) -> int:
        """Weighted total degree; ``-1`` for the zero polynomial."""
        return max((self._wdeg(e) for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = self.variables.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def min_degree_in(self, var: str) -> int:
        i = self.variables.index(var)
        return min((e[i] for e in self.terms), default=0)

    def used_variables(self) -> tuple[str, ...]:
        used = [False] * len(self.variables)
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def is_homogeneous(self) -> bool:
        return len({self._wdeg(e) for e in self.terms}) <= 1

    def homogeneous_components(self) -> dict[int, "MultiPoly"]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(self._wdeg(e), {})[e] = c
        return {
            d: MultiPoly._new(self.variables, self.weights, t, self.field)
            for d, t in sorted(parts.items())
        }

    # -- term order data ----------------------------------------------------

    def leading_exponent(self, order: str = "grevlex") -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=order_key(order, self.weights))

    def leading_coefficient(self, order: str = "grevlex"):
        return self.terms[self.leading_exponent(order)]

    def monic(self, order: str = "grlex") -> "MultiPoly":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def sorted_terms(self, order: str = "grevlex") -> list[tuple[tuple, object]]:
        key = order_key(order, self.weights)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    # -- calculus and substitution ---------------------------------------

    def derivative(self, var: str) -> "MultiPoly":
        i = self.variables.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return MultiPoly._new(self.variables, self.weights, terms, self.field)

    def coeffs_in(self, var: str) -> dict[int, "MultiPoly"]:
        """Split as ``sum_k c_k * var^k``; each ``c_k`` stays in this ring."""
        i = self.variables.index(var)
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1 :]
            parts.setdefault(k, {})[ne] = c
        return {
            k: MultiPoly._new(self.variables, self.weights, t, self.field)
            for k, t in parts.items()
        }

    @staticmethod
    def from_coeffs_in(var: str, coeffs: Mapping[int, "MultiPoly"], like: "MultiPoly") -> "MultiPoly":
        i = like.variables.index(var)
        terms: dict = {}
        fields = [like.field]
        for k, c in coeffs.items():
            fields.append(c.field)
            for e, v in c.terms.items():
                ne = e[:i] + (e[i] + k,) + e[i + 1 :]
                terms[ne] = v
        return MultiPoly._new(like.variables, like.weights, terms, common_field(*fields))

    def evaluate(self, point: Sequence):
        """Value at a point given as one scalar per variable."""
        total = mpq(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x**k
            total = total + t
        return total

    def compose(
        self,
        images: Sequence,
        variables: Sequence[str] | None = None,
        weights: Sequence[int] | None = None,
    ) -> "MultiPoly":
        """Substitute ``images[i]`` for the i-th variable.

        Images are polynomials in one common target ring or scalars.  When no
        image is a polynomial the target ring must be given explicitly.
        """
        if len(images) != len(self.variables):
            raise ValueError("need one image per variable")
        ring = next((im for im in images if isinstance(im, MultiPoly)), None)
        if ring is None:
            if variables is None:
                raise ValueError("target ring unknown: pass variables")
            ring = MultiPoly(variables, {}, weights)
        imgs = [im if isinstance(im, MultiPoly) else ring.const(im) for im in images]
        for im in imgs:
            ring._same_ring(im)
        powers: list[dict[int, MultiPoly]] = [{0: ring.one()} for _ in imgs]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                j = max(x for x in cache if x < k)
                base = cache[j]
                for m in range(j + 1, k + 1):
                    base = base * imgs[i]
                    cache[m] = base
            return cache[k]

        acc: dict = {}
        fields = [self.field, ring.field] + [im.field for im in imgs]
        for e, c in self.terms.items():
            t = None
            for i, k in enumerate(e):
                if k:
                    p = power(i, k)
                    t = p if t is None else t * p
            if t is None:
                t = ring.one()
            for te, tc in t.terms.items():
                v = acc.get(te)
                acc[te] = tc * c if v is None else v + tc * c
        return MultiPoly._new(
            ring.variables, ring.weights, {e: c for e, c in acc.items() if c}, common_field(*fields)
        )

    def subs(self, **values) -> "MultiPoly":
        """Partial substitution within the same ring: ``p.subs(z=1)``."""
        images = []
        for v in self.variables:
            if v in values:
                val = values[v]
                images.append(val if isinstance(val, MultiPoly) else self.const(val))
            else:
                images.append(self.var(v))
        return self.compose(images)

    def homogenize(self, var: str, degree: int | None = None) -> "MultiPoly":
        """Homogenize with a weight-one variable up to ``degree`` (default: own degree)."""
        i = self.variables.index(var)
        if self.weights[i] != 1:
            raise ValueError("homogenizing variable must have weight 1")
        d = self.degree() if degree is None else degree
        terms = {}
        for e, c in self.terms.items():
            k = d - self._wdeg(e)
            if k < 0:
                raise ValueError("target degree below polynomial degree")
            terms[e[:i] + (e[i] + k,) + e[i + 1 :]] = c
        return MultiPoly._new(self.variables, self.weights, terms, self.field)

    def map_coefficients(self, fn) -> "MultiPoly":
        return MultiPoly(self.variables, {e: fn(c) for e, c in self.terms.items()}, self.weights)

    # -- text ---------------------------------------------------------

    def _mono_str(self, e) -> str:
        parts = []
        for v, k in zip(self.variables, e):
            if k == 1:
                parts.append(v)
            elif k:
                parts.append(f"{v}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms("grevlex"):
            mono = self._mono_str(e)
            if isinstance(c, NFElement) and c.rational_value() is None:
                body = f"({format_scalar(c)})"
                sign = "+"
                if mono:
                    body += "*" + mono
            else:
                r = c.rational_value() if isinstance(c, NFElement) else c
                sign = "-" if r < 0 else "+"
                a = abs(r)
                if not mono:
                    body = str(a)
                elif a == 1:
                    body = mono
                else:
                    body = f"{a}*{mono}"
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, variables={self.variables})"

    def ring_dict(self) -> dict:
        return {"variables": list(self.variables), "weights": list(self.weights)}


def lcm_exponent(a: Iterable[int], b: Iterable[int]) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))
