"""Literal grammar for field elements and rational functions.

Grammar (whitespace insensitive):

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | power
    power  := atom ('^' INT)?
    atom   := INT | 'z' | 's1'..'sK' | 'i' | '(' expr ')'

Element literals are the constant subset (no 'z').  Rendering produces
canonical strings that reparse to identical objects.
"""

from __future__ import annotations

import re
from typing import Sequence

from .errors import ProblemFormatError
from .fields import FieldElement, FieldTower, render_element
from .ratfun import PartialFraction, Poly, RationalFn

_TOKEN = re.compile(r"\s*(?:(\d+)|(s\d+)|([zi])|([()+\-*/^]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ProblemFormatError("unexpected character %r at column %d"
                                     % (stripped[0], pos + 1))
        if m.group(1):
            out.append(("int", int(m.group(1)), pos))
        elif m.group(2):
            out.append(("root", int(m.group(2)[1:]), pos))
        elif m.group(3):
            out.append((m.group(3), None, pos))
        else:
            out.append((m.group(4), None, pos))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, tower: FieldTower, allow_z: bool):
        self.tokens = tokens
        self.i = 0
        self.tower = tower
        self.allow_z = allow_z

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, -1)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, message: str):
        _, _, pos = self.peek()
        where = "end of input" if pos < 0 else "column %d" % (pos + 1)
        raise ProblemFormatError("%s at %s" % (message, where))

    def expr(self) -> RationalFn:
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RationalFn:
        value = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    self.fail("division by zero")
                value = value / rhs
        return value

    def factor(self) -> RationalFn:
        if self.peek()[0] == "-":
            self.take()
            return -self.factor()
        return self.power()

    def power(self) -> RationalFn:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            kind, value, _ = self.take()
            if kind != "int":
                self.fail("expected integer exponent")
            base = base ** value
        return base

    def atom(self) -> RationalFn:
        kind, value, _ = self.take()
        if kind == "int":
            return RationalFn.constant(self.tower.from_rational(value))
        if kind == "root":
            if value < 1 or value > self.tower.levels:
                self.fail("tower has no root s%d" % value)
            return RationalFn.constant(self.tower.root(value))
        if kind == "i":
            if not self.tower.gaussian:
                self.fail("field has no imaginary unit")
            return RationalFn.constant(self.tower.imag_unit())
        if kind == "z":
            if not self.allow_z:
                self.fail("variable z not allowed in an element literal")
            return RationalFn.z(self.tower)
        if kind == "(":
            value = self.expr()
            if self.peek()[0] != ")":
                self.fail("expected ')'")
            self.take()
            return value
        self.fail("expected a value")


def parse_ratfn(text: str, tower: FieldTower) -> RationalFn:
    """Parse a rational-function literal over the given tower."""
    tokens = _tokenize(text)
    if not tokens:
        raise ProblemFormatError("empty expression")
    p = _Parser(tokens, tower, allow_z=True)
    value = p.expr()
    if p.i != len(tokens):
        p.fail("trailing input")
    return value


def parse_element(text: str, tower: FieldTower) -> FieldElement:
    """Parse an element literal (constant expression) over the tower."""
    tokens = _tokenize(text)
    if not tokens:
        raise ProblemFormatError("empty expression")
    p = _Parser(tokens, tower, allow_z=False)
    value = p.expr()
    if p.i != len(tokens):
        p.fail("trailing input")
    return value.constant_value()


def build_tower(radicands: Sequence[str], gaussian: bool = False) -> FieldTower:
    """Build a tower from radicand expressions, each over the levels
    already adjoined (e.g. ["5", "3-s1"])."""
    tower = FieldTower.rationals()
    for expr in radicands:
        tower = tower.extend(parse_element(expr, tower))
    return tower.with_gaussian() if gaussian else tower


# ----------------------------------------------------------------------
# rendering

def _coeff_str(c: FieldElement, wrap: bool = True) -> str:
    s = render_element(c)
    if wrap and any(op in s[1:] for op in "+-*/"):
        return "(%s)" % s
    return s


def render_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if c.is_zero():
            continue
        if k == 0:
            parts.append(_coeff_str(c))
        else:
            zk = "z" if k == 1 else "z^%d" % k
            if c.is_one():
                parts.append(zk)
            elif (-c).is_one():
                parts.append("-%s" % zk)
            else:
                parts.append("%s*%s" % (_coeff_str(c), zk))
    out = parts[0]
    for part in parts[1:]:
        out += part if part.startswith("-") else "+" + part
    return out


def render_ratfn(f: RationalFn) -> str:
    if f.is_polynomial():
        return render_poly(f.num)
    return "(%s)/(%s)" % (render_poly(f.num), render_poly(f.den))


def render_partial_fraction(p: PartialFraction) -> str:
    parts = []
    if not p.entire.is_zero():
        parts.append(render_poly(p.entire))
    for pole, coeffs in p.terms:
        for l, c in enumerate(coeffs, start=1):
            if c.is_zero():
                continue
            denom = "(z-(%s))" % render_element(pole)
            if l > 1:
                denom += "^%d" % l
            parts.append("(%s)/%s" % (render_element(c), denom))
    if not parts:
        return "0"
    return " + ".join(parts)


def render_matrix(rows) -> list[list[str]]:
    return [[render_ratfn(entry) for entry in row] for row in rows]
