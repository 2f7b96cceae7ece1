"""Exact scalars: rationals (gmpy2 ``mpq``) and simple algebraic number fields.

A number field is ``Q[t]/(m(t))`` for a monic irreducible ``m``.  Cyclotomic
fields ``Q(zeta_n)`` (``n`` prime) are the instances used by the geometry
modules; other fields only show up when a pencil parameter is a root of an
irreducible polynomial.

Rationals coerce into any number field.  Combining elements of two different
number fields raises :class:`FieldMismatchError`.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

__all__ = [
    "mpq",
    "FieldMismatchError",
    "NumberField",
    "NFElement",
    "cyclotomic_field",
    "to_rational",
    "scalar_field",
    "common_field",
    "is_scalar",
    "format_scalar",
]


class FieldMismatchError(ValueError):
    """Raised when scalars from two different number fields meet."""


def to_rational(value) -> mpq:
    if isinstance(value, mpq):
        return value
    if isinstance(value, (int, Fraction)) or isinstance(value, numbers.Rational):
        return mpq(value.numerator, value.denominator) if not isinstance(value, int) else mpq(value)
    if isinstance(value, str):
        return mpq(value.strip())
    raise TypeError(f"cannot convert {value!r} to a rational")


def _is_rational(value) -> bool:
    return isinstance(value, (int, mpq, Fraction)) and not isinstance(value, bool)


def is_scalar(value) -> bool:
    return _is_rational(value) or isinstance(value, NFElement)


# -- dense univariate helpers over Q (low degree first), used for reduction and inverses --


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _divmod_q(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [mpq(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    db = len(b) - 1
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv
        if c:
            q[k - db] = c
            for i, bi in enumerate(b):
                a[k - db + i] -= c * bi
    return _trim(q), _trim(a[:db])


def _xgcd_q(a: list, b: list) -> tuple[list, list]:
    """Return (g, s) with s*a = g mod b, g monic gcd."""
    r0, r1 = _trim(list(a)), _trim(list(b))
    s0, s1 = [mpq(1)], []
    while r1:
        q, r = _divmod_q(r0, r1)
        qs = _mul_q(q, s1)
        s_new = [x - y for x, y in _zip_pad(s0, qs)]
        r0, r1 = r1, r
        s0, s1 = s1, _trim(s_new)
    lc = r0[-1]
    return [c / lc for c in r0], [c / lc for c in s0]


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _mul_q(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


class NumberField:
    """The field ``Q[t]/(modulus)``; ``modulus`` is monic, listed low degree first."""

    __slots__ = ("modulus", "name", "order", "_hash")

    def __init__(self, modulus, name: str = "zeta", order: int | None = None):
        mod = [to_rational(c) for c in modulus]
        _trim(mod)
        if len(mod) < 2:
            raise ValueError("modulus must have positive degree")
        lc = mod[-1]
        self.modulus = tuple(c / lc for c in mod)
        self.name = name
        self.order = order
        self._hash = hash(("NumberField", self.modulus))

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.order is not None:
            return f"Q(zeta_{self.order})"
        return f"NumberField({[str(c) for c in self.modulus]})"

    def __call__(self, coords) -> "NFElement":
        if _is_rational(coords):
            coords = [coords]
        return NFElement(self, coords)

    @property
    def gen(self) -> "NFElement":
        if self.degree == 1:
            return NFElement(self, [-self.modulus[0]])
        return NFElement(self, [0, 1])

    def zero(self) -> "NFElement":
        return NFElement(self, [])

    def one(self) -> "NFElement":
        return NFElement(self, [1])

    def reduce(self, coeffs: list) -> tuple:
        """Reduce a low-first coefficient list modulo the defining polynomial."""
        c = [to_rational(x) for x in coeffs]
        m = self.modulus
        d = self.degree
        for k in range(len(c) - 1, d - 1, -1):
            top = c[k]
            if top:
                for i in range(d):
                    c[k - d + i] -= top * m[i]
            c[k] = mpq(0)
        c = c[:d]
        c += [mpq(0)] * (d - len(c))
        return tuple(c)

    def to_dict(self) -> dict:
        if self.order is not None:
            return {"cyclotomic": self.order}
        return {"modulus": [str(c) for c in self.modulus]}


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


@lru_cache(maxsize=None)
def cyclotomic_field(n: int) -> NumberField:
    """``Q(zeta_n)`` for prime ``n``; the basis is ``1, zeta, ..., zeta^(n-2)``."""
    if not _is_prime(n):
        raise ValueError(f"cyclotomic order must be prime, got {n}")
    return NumberField([1] * n, name="zeta", order=n)


class NFElement:
    """Element of a :class:`NumberField`, stored as reduced coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords):
        self.field = field
        self.coords = field.reduce(list(coords))

    @classmethod
    def _raw(cls, field, coords):
        obj = object.__new__(cls)
        obj.field = field
        obj.coords = coords
        return obj

    def _coerce(self, other):
        if isinstance(other, NFElement):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine {self.field!r} and {other.field!r}")
            return other.coords
        if _is_rational(other):
            c = [mpq(0)] * self.field.degree
            c[0] = to_rational(other)
            return tuple(c)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement._raw(self.field, tuple(a + b for a, b in zip(self.coords, o)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement._raw(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement._raw(self.field, tuple(a - b for a, b in zip(self.coords, o)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement._raw(self.field, tuple(b - a for a, b in zip(self.coords, o)))

    def __mul__(self, other):
        if _is_rational(other):
            r = to_rational(other)
            return NFElement._raw(self.field, tuple(a * r for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement._raw(self.field, self.field.reduce(_mul_q(list(self.coords), list(o))))

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        if not self:
            raise ZeroDivisionError("inverse of zero in number field")
        a = _trim(list(self.coords))
        if len(a) == 1:
            return self.field(((1 / a[0]),))
        g, s = _xgcd_q(a, list(self.field.modulus))
        if len(g) != 1:
            raise ArithmeticError("defining polynomial is not irreducible")
        return NFElement(self.field, s)

    def __truediv__(self, other):
        if _is_rational(other):
            r = to_rational(other)
            return NFElement._raw(self.field, tuple(a / r for a in self.coords))
        if isinstance(other, NFElement):
            self._coerce(other)
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_rational(other):
            return self.inverse() * to_rational(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, NFElement):
            return self.field == other.field and self.coords == other.coords
        if _is_rational(other):
            return self.coords[0] == other and not any(self.coords[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.coords[1:]):
            return hash(self.coords[0])
        return hash((self.field, self.coords))

    def rational_value(self) -> mpq | None:
        """The rational this element equals, or ``None``."""
        return None if any(self.coords[1:]) else self.coords[0]

    def __repr__(self):
        return f"NFElement({format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


def scalar_field(value) -> NumberField | None:
    return value.field if isinstance(value, NFElement) else None


def common_field(*fields):
    """Join of field tags, where ``None`` stands for Q."""
    out = None
    for f in fields:
        if f is None:
            continue
        if out is None:
            out = f
        elif out != f:
            raise FieldMismatchError(f"cannot combine {out!r} and {f!r}")
    return out


def _format_rational(q: mpq) -> str:
    return str(q)


def format_scalar(value, name: str | None = None) -> str:
    """Text form used by the polynomial printer; ``zeta`` powers for field elements."""
    if not isinstance(value, NFElement):
        return _format_rational(to_rational(value))
    gen = name or value.field.name
    parts = []
    for k in range(len(value.coords) - 1, -1, -1):
        c = value.coords[k]
        if not c:
            continue
        if k == 0:
            body = _format_rational(abs(c))
        else:
            mono = gen if k == 1 else f"{gen}^{k}"
            body = mono if abs(c) == 1 else f"{_format_rational(abs(c))}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f"{sign}{body}"
    return text
