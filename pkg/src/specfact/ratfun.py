"""Polynomials and rational functions over a field tower.

RationalFn keeps the canonical coprime form with a monic denominator, so
equality of rational functions is coordinate equality.  Laurent data is
represented through z-power denominators; no separate exponent offset is
needed because the canonical quotient already encodes it uniquely.

The tilde involution f~(z) = conj(f(1/conj(z))), Taylor coefficients at a
point, principal parts at in-disk poles, and the R+ (+) R- splitting live
here.  Pole locations are always caller-supplied; nothing in this module
locates roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Sequence, Union

from .errors import FieldError, PoleDataError
from .fields import FieldElement, FieldTower, in_open_disk

Scalar = Union[int, Fraction, FieldElement]


# ----------------------------------------------------------------------
# integer subresultant PRS, used as a gcd fast path over plain Q

def _ideg(p) -> int:
    return len(p) - 1


def _iprim(p):
    g = 0
    for c in p:
        g = _int_gcd(g, abs(c))
    if g in (0, 1):
        return list(p)
    return [c // g for c in p]


def _iprem(a, b):
    """Pseudo-remainder of integer polynomials (ascending coefficients)."""
    a = list(a)
    db, lb = _ideg(b), b[-1]
    while _ideg(a) >= db and any(a):
        da = _ideg(a)
        coef = a[-1]
        a = [c * lb for c in a]
        for i, bc in enumerate(b):
            a[da - db + i] -= coef * bc
        while a and a[-1] == 0:
            a.pop()
        if not a:
            break
    return a


def _int_poly_gcd(a, b):
    a, b = _iprim(a), _iprim(b)
    if _ideg(a) < _ideg(b):
        a, b = b, a
    g, h = 1, 1
    while True:
        d = _ideg(a) - _ideg(b)
        r = _iprem(a, b)
        if not r:
            return _iprim(b)
        if _ideg(r) == 0:
            return [1]
        a, b = b, [c // (g * h**d) for c in r]
        g = a[-1]
        h = h if d == 0 else g**d // h ** (d - 1)


# ----------------------------------------------------------------------

class Poly:
    """Dense polynomial with ascending FieldElement coefficients; trailing
    zeros stripped, zero polynomial has empty coefficient tuple."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: FieldTower, coeffs: Iterable[Scalar]):
        self.tower = tower
        cs = [c if isinstance(c, FieldElement) else tower.from_rational(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def zero(tower: FieldTower) -> "Poly":
        return Poly(tower, ())

    @staticmethod
    def one(tower: FieldTower) -> "Poly":
        return Poly(tower, (1,))

    @staticmethod
    def x_minus(a: FieldElement) -> "Poly":
        return Poly(a.tower, (-a, a.tower.one()))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> FieldElement:
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs and self.tower == other.tower

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.tower, out)

    def __neg__(self) -> "Poly":
        return Poly(self.tower, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, FieldElement):
            return Poly(self.tower, tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return Poly.zero(self.tower)
        out = [self.tower.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.tower, out)

    def __rmul__(self, other):
        if isinstance(other, FieldElement):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "Poly":
        result = Poly.one(self.tower)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by z^k, k >= 0."""
        if self.is_zero():
            return self
        return Poly(self.tower, (self.tower.zero(),) * k + self.coeffs)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = other.leading().inverse()
        quot = [self.tower.zero()] * max(0, len(rem) - db)
        while len(rem) - 1 >= db and rem:
            q = rem[-1] * inv_lead
            pos = len(rem) - 1 - db
            quot[pos] = q
            for i, c in enumerate(other.coeffs):
                rem[pos + i] = rem[pos + i] - q * c
            while rem and rem[-1].is_zero():
                rem.pop()
        return Poly(self.tower, quot), Poly(self.tower, rem)

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise FieldError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.leading().inverse()
        return Poly(self.tower, tuple(c * inv for c in self.coeffs))

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd: integer subresultant PRS over plain Q, monic Euclid
        over proper towers."""
        if self.is_zero():
            return other.monic()
        if other.is_zero():
            return self.monic()
        if self.tower.is_rational:
            a = _to_int_coeffs(self)
            b = _to_int_coeffs(other)
            g = _int_poly_gcd(a, b)
            return Poly(self.tower, [Fraction(c) for c in g]).monic()
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
            if not b.is_zero():
                b = b.monic()
        return a.monic()

    def evaluate(self, a: FieldElement) -> FieldElement:
        acc = a.tower.zero()
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def shifted(self, a: FieldElement) -> "Poly":
        """Coefficients of p in powers of (z - a), by synthetic division."""
        cur = list(self.coeffs)
        out = []
        for _ in range(len(self.coeffs)):
            carry = cur[-1]
            quot = [None] * (len(cur) - 1)
            for i in range(len(cur) - 2, -1, -1):
                quot[i] = carry
                carry = cur[i] + carry * a
            out.append(carry)
            cur = quot
            if not cur:
                break
        return Poly(self.tower, out)

    def conj_coeffs(self) -> "Poly":
        return Poly(self.tower, tuple(c.conj() for c in self.coeffs))

    def multiplicity_at(self, a: FieldElement) -> int:
        """Multiplicity of a as a root, by repeated exact division."""
        m = 0
        p = self
        lin = Poly.x_minus(a)
        while not p.is_zero() and p.evaluate(a).is_zero():
            p = p.exact_div(lin)
            m += 1
        return m

    def __repr__(self) -> str:
        from .expressions import render_poly
        return "Poly(%s)" % render_poly(self)


def _to_int_coeffs(p: Poly):
    den = 1
    for c in p.coeffs:
        den = den * c.coords[0].denominator // _int_gcd(den, c.coords[0].denominator)
    return [int(c.coords[0] * den) for c in p.coeffs]


# ----------------------------------------------------------------------

class RationalFn:
    """Quotient of polynomials in canonical form: gcd(num, den) = 1 and
    den monic.  Arithmetic re-canonicalizes, so equality is syntactic."""

    __slots__ = ("num", "den", "tower")

    def __init__(self, num: Poly, den: Poly, _canonical: bool = False):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.tower = num.tower
        if not _canonical:
            if num.is_zero():
                num, den = Poly.zero(self.tower), Poly.one(self.tower)
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num, den = num.exact_div(g), den.exact_div(g)
                lead = den.leading()
                if not lead.is_one():
                    inv = lead.inverse()
                    num, den = num * inv, den * inv
        self.num = num
        self.den = den

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(tower: FieldTower) -> "RationalFn":
        return RationalFn(Poly.zero(tower), Poly.one(tower), _canonical=True)

    @staticmethod
    def one(tower: FieldTower) -> "RationalFn":
        return RationalFn(Poly.one(tower), Poly.one(tower), _canonical=True)

    @staticmethod
    def from_poly(p: Poly) -> "RationalFn":
        return RationalFn(p, Poly.one(p.tower), _canonical=True)

    @staticmethod
    def constant(c: FieldElement) -> "RationalFn":
        return RationalFn.from_poly(Poly(c.tower, (c,)))

    @staticmethod
    def z(tower: FieldTower) -> "RationalFn":
        return RationalFn.from_poly(Poly(tower, (0, 1)))

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def constant_value(self) -> FieldElement:
        if not self.is_constant():
            raise FieldError("rational function is not constant")
        return self.num.coeffs[0] if self.num.coeffs else self.tower.zero()

    def __eq__(self, other) -> bool:
        return (isinstance(other, RationalFn) and self.num == other.num
                and self.den == other.den)

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, Poly):
            return RationalFn.from_poly(other)
        if isinstance(other, FieldElement):
            return RationalFn.constant(other)
        if isinstance(other, (int, Fraction)):
            return RationalFn.constant(self.tower.from_rational(other))
        return None

    @staticmethod
    def _reduced(num: Poly, den: Poly) -> "RationalFn":
        """Wrap an already-coprime pair, normalizing the denominator."""
        if num.is_zero():
            return RationalFn.zero(num.tower)
        lead = den.leading()
        if not lead.is_one():
            inv = lead.inverse()
            num, den = num * inv, den * inv
        return RationalFn(num, den, _canonical=True)

    # Arithmetic uses Henrici's reduced algorithms: with both operands in
    # lowest terms, only the small structured gcds below are needed and
    # the results are again in lowest terms.

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        g = self.den.gcd(o.den)
        if g.is_one():
            return RationalFn._reduced(self.num * o.den + o.num * self.den,
                                       self.den * o.den)
        d1g = self.den.exact_div(g)
        d2g = o.den.exact_div(g)
        t = self.num * d2g + o.num * d1g
        if t.is_zero():
            return RationalFn.zero(self.tower)
        h = t.gcd(g)
        if not h.is_one():
            t = t.exact_div(h)
            g = g.exact_div(h)
        return RationalFn._reduced(t, d1g * d2g * g)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RationalFn.zero(self.tower)
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        num1 = self.num if g1.is_one() else self.num.exact_div(g1)
        den2 = o.den if g1.is_one() else o.den.exact_div(g1)
        num2 = o.num if g2.is_one() else o.num.exact_div(g2)
        den1 = self.den if g2.is_one() else self.den.exact_div(g2)
        return RationalFn._reduced(num1 * num2, den1 * den2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return self * RationalFn._reduced(o.den, o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int) -> "RationalFn":
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("zero rational function to a negative power")
            return RationalFn._reduced(self.den**(-n), self.num**(-n))
        if n == 0:
            return RationalFn.one(self.tower)
        return RationalFn(self.num**n, self.den**n, _canonical=True)

    # -- analytic operations ------------------------------------------------

    def evaluate(self, a: FieldElement) -> FieldElement:
        d = self.den.evaluate(a)
        if d.is_zero():
            raise ZeroDivisionError("evaluation at a pole")
        return self.num.evaluate(a) / d

    def tilde(self) -> "RationalFn":
        """The involution f~(z) = conj(f(1/conj(z))).

        Reversal of a canonical pair stays coprime (neither reversal is
        divisible by z, and any other common factor would reverse back),
        so no gcd is needed.
        """
        if self.is_zero():
            return self
        p, q = self.num, self.den
        dp, dq = p.degree, q.degree
        rn = Poly(self.tower, tuple(c.conj() for c in reversed(p.coeffs)))
        rd = Poly(self.tower, tuple(c.conj() for c in reversed(q.coeffs)))
        if dq > dp:
            rn = rn.shift(dq - dp)
        elif dp > dq:
            rd = rd.shift(dp - dq)
        return RationalFn._reduced(rn, rd)

    def taylor_coeffs(self, a: FieldElement, count: int) -> list[FieldElement]:
        """First `count` Taylor coefficients at a, by exact series division."""
        dh = self.den.shifted(a)
        if not dh.coeffs or dh.coeffs[0].is_zero():
            raise PoleDataError("function has a pole at the expansion point")
        nh = self.num.shifted(a)
        q0inv = dh.coeffs[0].inverse()
        zero = self.tower.zero()
        out = []
        for n in range(count):
            acc = nh.coeffs[n] if n <= nh.degree else zero
            for k in range(1, n + 1):
                qk = dh.coeffs[k] if k <= dh.degree else None
                if qk is not None and not qk.is_zero():
                    acc = acc - qk * out[n - k]
            out.append(acc * q0inv)
        return out

    def den_multiplicity(self, a: FieldElement) -> int:
        return self.den.multiplicity_at(a)

    def principal_part(self, a: FieldElement, order_bound: int) -> list[FieldElement]:
        """Laurent coefficients [c_-1, ..., c_-order_bound] at a (zero
        padded); errors if the actual pole order exceeds the bound."""
        if order_bound < 0:
            raise ValueError("order_bound must be nonnegative")
        if order_bound == 0:
            return []
        g = self * RationalFn.from_poly(Poly.x_minus(a) ** order_bound)
        if g.den.evaluate(a).is_zero():
            raise PoleDataError("pole order at the point exceeds the stated bound")
        t = g.taylor_coeffs(a, order_bound)
        return [t[order_bound - l] for l in range(1, order_bound + 1)]

    def __repr__(self) -> str:
        from .expressions import render_ratfn
        return "RationalFn(%s)" % render_ratfn(self)


def ratfn_arith(f: RationalFn, g: RationalFn, op: str) -> RationalFn:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise FieldError("unknown operation %r" % op)


def tilde(f: RationalFn) -> RationalFn:
    return f.tilde()


def taylor_coeffs(f: RationalFn, a: FieldElement, count: int) -> list[FieldElement]:
    return f.taylor_coeffs(a, count)


def principal_part(f: RationalFn, a: FieldElement, order_bound: int) -> list[FieldElement]:
    return f.principal_part(a, order_bound)


# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PoleSpec:
    """A pole location in the open unit disk with its order."""

    location: FieldElement
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise PoleDataError("pole order must be positive")
        if not in_open_disk(self.location):
            raise PoleDataError("pole %r is not inside the open unit disk"
                                % render_key(self.location))


def render_key(a: FieldElement) -> str:
    from .fields import render_element
    return render_element(a)


def _pole_sort_key(a: FieldElement):
    return a.coords


class PartialFraction:
    """entire + sum over poles a of sum_l coeffs[l-1] / (z - a)^l.

    Poles are pairwise distinct, stored in coordinate-lexicographic order,
    with a nonzero top-order coefficient each; zero terms are dropped.
    """

    __slots__ = ("tower", "entire", "terms")

    def __init__(self, tower: FieldTower, entire: Poly, terms: Sequence[tuple]):
        self.tower = tower
        self.entire = entire
        cleaned = []
        seen = set()
        for pole, coeffs in terms:
            cs = list(coeffs)
            while cs and cs[-1].is_zero():
                cs.pop()
            if not cs:
                continue
            if pole in seen:
                raise PoleDataError("duplicate pole in partial fraction")
            seen.add(pole)
            cleaned.append((pole, tuple(cs)))
        cleaned.sort(key=lambda t: _pole_sort_key(t[0]))
        self.terms = tuple(cleaned)

    @staticmethod
    def zero(tower: FieldTower) -> "PartialFraction":
        return PartialFraction(tower, Poly.zero(tower), ())

    def is_zero(self) -> bool:
        return self.entire.is_zero() and not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, PartialFraction) and self.entire == other.entire
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.entire, self.terms))

    def poles(self) -> list[PoleSpec]:
        return [PoleSpec(p, len(cs)) for p, cs in self.terms]

    def to_ratfn(self) -> RationalFn:
        total = RationalFn.from_poly(self.entire)
        for pole, coeffs in self.terms:
            lin = RationalFn.from_poly(Poly.x_minus(pole))
            for l, c in enumerate(coeffs, start=1):
                total = total + RationalFn.constant(c) / lin**l
        return total

    def __repr__(self) -> str:
        from .expressions import render_partial_fraction
        return "PartialFraction(%s)" % render_partial_fraction(self)


def pf_to_ratfn(p: PartialFraction) -> RationalFn:
    return p.to_ratfn()


def split_plus_minus(f: RationalFn, poles_in_disk: Sequence[PoleSpec]) -> tuple[RationalFn, PartialFraction]:
    """Unique decomposition f = fplus + fminus against a caller-supplied
    list of candidate in-disk poles.

    Every in-disk pole of f must be listed (with order at least the actual
    multiplicity); listed points where f is analytic contribute no term.
    """
    tower = f.tower
    terms = []
    for spec in poles_in_disk:
        mult = f.den_multiplicity(spec.location)
        if mult > spec.order:
            raise PoleDataError("pole order at %s exceeds the annotation"
                                % render_key(spec.location))
        if mult == 0:
            continue
        coeffs = f.principal_part(spec.location, mult)
        terms.append((spec.location, coeffs))
    fminus = PartialFraction(tower, Poly.zero(tower), terms)
    fplus = f - fminus.to_ratfn()
    for spec in poles_in_disk:
        if not fplus.den.evaluate(spec.location).is_zero():
            continue
        raise PoleDataError("residual pole after splitting; inconsistent input")
    return fplus, fminus


def ratfn_to_pf(f: RationalFn, poles: Sequence[PoleSpec]) -> PartialFraction:
    """Partial-fraction view of f whose in-disk poles are all listed; the
    remainder must be a polynomial (constant for R- members)."""
    fplus, fminus = split_plus_minus(f, poles)
    if not fplus.is_polynomial():
        raise PoleDataError("pole list does not cover every pole of the function")
    return PartialFraction(f.tower, fplus.num, fminus.terms)
