"""Text grammar for polynomials.

Terms are joined by ``+``/``-``; a monomial is written ``x^2*y*z^3``.
Parentheses, integer powers and division by constants are accepted, so
``(1-zeta)*x^2*y`` and ``3/2*x*w`` both parse.  The name of the field
generator (``zeta`` by default) is only legal when a number field is given.
"""

from __future__ import annotations

import re
from typing import Sequence

from .fields import NumberField, mpq
from .poly import MultiPoly

__all__ = ["parse_poly", "PolyParseError"]

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class PolyParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, tokens, ring: MultiPoly, field: NumberField | None):
        self.tokens = tokens
        self.i = 0
        self.ring = ring
        self.field = field

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise PolyParseError(f"expected {value or kind}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self) -> MultiPoly:
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> MultiPoly:
        acc = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            f = self.unary()
            if op == "*":
                acc = acc * f
            else:
                if not f.is_constant() or f.is_zero():
                    raise PolyParseError("division only by nonzero constants")
                acc = acc / f.constant_value()
        return acc

    def unary(self) -> MultiPoly:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            k = self.take("num")[1]
            if not k.isdigit():
                raise PolyParseError(f"exponent must be a non-negative integer, got {k}")
            base = base ** int(k)
        return base

    def atom(self) -> MultiPoly:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return self.ring.const(mpq(val))
        if kind == "name":
            self.take()
            if val in self.ring.variables:
                return self.ring.var(val)
            if self.field is not None and val == self.field.name:
                return self.ring.const(self.field.gen)
            raise PolyParseError(f"unknown symbol {val!r}")
        if (kind, val) == ("op", "("):
            self.take()
            e = self.expr()
            self.take("op", ")")
            return e
        raise PolyParseError(f"unexpected token {val!r}")


def parse_poly(
    text: str,
    variables: Sequence[str],
    weights: Sequence[int] | None = None,
    field: NumberField | None = None,
) -> MultiPoly:
    """Parse ``text`` into a polynomial over Q or ``field``."""
    ring = MultiPoly(variables, {}, weights, field)
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError("empty polynomial text")
    p = _Parser(tokens, ring, field)
    out = p.expr()
    if p.i != len(tokens):
        raise PolyParseError(f"trailing input at token {p.tokens[p.i][1]!r}")
    return out
