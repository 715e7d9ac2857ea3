"""Exact arithmetic in towers of real quadratic extensions of Q.

A tower Q = L0 < L1 < ... < LK is described by radicands r_1, ..., r_K,
where r_j is an element of L_{j-1} that is positive under the designated
real embedding and not a square in L_{j-1}; L_j = L_{j-1}(s_j) with
s_j = +sqrt(r_j).  An optional Gaussian layer adjoins the imaginary unit
on top of the real tower.

Elements are stored as dense coordinate vectors of Fractions over the
power-product basis {s_1^e1 * ... * s_K^eK : e in {0,1}^K}, doubled when
the Gaussian layer is present (real block followed by imaginary block).
Coordinate equality is field equality.  Sign decisions use symbolic zero
tests first, then refinement of exact rational interval enclosures of the
adjoined roots, which terminates for every nonzero element.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence, Union

from .errors import DescriptorError, FieldError

Rat = Union[int, Fraction]

_MAX_SIGN_BITS = 1 << 14


# ----------------------------------------------------------------------
# Rational interval helpers (closed intervals with Fraction endpoints)

def _iv_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _iv_mul(a, b):
    p = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(p), max(p))


def _iv_scale(c: Fraction, a):
    lo, hi = c * a[0], c * a[1]
    return (lo, hi) if lo <= hi else (hi, lo)


def _sqrt_bounds(lo: Fraction, hi: Fraction, bits: int):
    """Rational enclosure of [sqrt(lo), sqrt(hi)] with ~2^-bits slack."""
    n, d = lo.numerator, lo.denominator
    s = isqrt(n * d << (2 * bits))
    low = Fraction(s, d << bits)
    n, d = hi.numerator, hi.denominator
    s = isqrt(n * d << (2 * bits))
    high = Fraction(s + 1, d << bits)
    return (low, high)


def _rational_sqrt(q: Fraction):
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


# ----------------------------------------------------------------------

class FieldTower:
    """Descriptor of the tower: radicand coordinates plus Gaussian flag.

    Towers are built level by level: ``FieldTower.rationals()`` then
    ``extend`` with an element of the current tower, finally
    ``with_gaussian`` if the imaginary unit is wanted.  Each ``extend``
    validates positivity and non-squareness of the radicand.
    """

    def __init__(self, radicands: Sequence[tuple], gaussian: bool, _validated: bool = False):
        self.radicands = tuple(tuple(Fraction(c) for c in r) for r in radicands)
        self.gaussian = bool(gaussian)
        self.levels = len(self.radicands)
        self.dim_real = 1 << self.levels
        self.dim = self.dim_real * (2 if self.gaussian else 1)
        for j, r in enumerate(self.radicands):
            if len(r) != (1 << j):
                raise DescriptorError("radicand %d has wrong coordinate length" % (j + 1))
        self._enclosure_cache: dict[int, list] = {}
        self._key = (self.radicands, self.gaussian)
        if not _validated:
            self._validate()

    @staticmethod
    def rationals(gaussian: bool = False) -> "FieldTower":
        return FieldTower((), gaussian, _validated=True)

    def extend(self, radicand: "FieldElement") -> "FieldTower":
        """Adjoin sqrt(radicand); radicand must live in this real tower."""
        if self.gaussian:
            raise DescriptorError("the imaginary layer must be adjoined last")
        if radicand.tower is not self and radicand.tower != self:
            raise FieldError("radicand belongs to a different tower")
        return FieldTower(self.radicands + (radicand.coords,), False)

    def with_gaussian(self) -> "FieldTower":
        if self.gaussian:
            return self
        return FieldTower(self.radicands, True, _validated=True)

    def real_subtower(self) -> "FieldTower":
        if not self.gaussian:
            return self
        return FieldTower(self.radicands, False, _validated=True)

    def _validate(self) -> None:
        # Build the partial towers bottom-up; each radicand must be positive
        # under the embedding and must not be a square one level below.
        for j in range(self.levels):
            partial = FieldTower(self.radicands[:j], False, _validated=True)
            r = FieldElement(partial, self.radicands[j])
            if r.is_zero() or sign_real(r) <= 0:
                raise DescriptorError("radicand %d is not positive" % (j + 1))
            if _sqrt_coords(partial, r.coords) is not None:
                raise DescriptorError("radicand %d is a square in the field below" % (j + 1))

    # -- element constructors ------------------------------------------

    def element(self, coords: Iterable[Rat]) -> "FieldElement":
        c = tuple(Fraction(x) for x in coords)
        if len(c) != self.dim:
            raise FieldError("expected %d coordinates, got %d" % (self.dim, len(c)))
        return FieldElement(self, c)

    def from_rational(self, q: Rat) -> "FieldElement":
        c = [Fraction(0)] * self.dim
        c[0] = Fraction(q)
        return FieldElement(self, tuple(c))

    def zero(self) -> "FieldElement":
        return self.from_rational(0)

    def one(self) -> "FieldElement":
        return self.from_rational(1)

    def root(self, j: int) -> "FieldElement":
        """The adjoined root s_j, 1-based."""
        if not 1 <= j <= self.levels:
            raise FieldError("tower has no root s%d" % j)
        c = [Fraction(0)] * self.dim
        c[1 << (j - 1)] = Fraction(1)
        return FieldElement(self, tuple(c))

    def imag_unit(self) -> "FieldElement":
        if not self.gaussian:
            raise FieldError("tower has no imaginary unit")
        c = [Fraction(0)] * self.dim
        c[self.dim_real] = Fraction(1)
        return FieldElement(self, tuple(c))

    @property
    def is_rational(self) -> bool:
        return self.levels == 0 and not self.gaussian

    # -- embedding machinery -------------------------------------------

    def _root_enclosures(self, bits: int):
        """Interval enclosures of s_1..s_K, or None if bits is too coarse."""
        if bits in self._enclosure_cache:
            return self._enclosure_cache[bits]
        ivs: list = []
        for r in self.radicands:
            riv = _eval_interval(r, ivs)
            if riv[0] <= 0:
                return None
            ivs.append(_sqrt_bounds(riv[0], riv[1], bits))
        self._enclosure_cache[bits] = ivs
        return ivs

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldTower) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        base = "Q"
        for j in range(self.levels):
            base += "(s%d)" % (j + 1)
        if self.gaussian:
            base += "(i)"
        return "FieldTower<%s>" % base


def _eval_interval(coords: Sequence[Fraction], root_ivs) -> tuple:
    """Enclosure of sum coords[idx] * prod_{j in idx} s_j."""
    total = (Fraction(0), Fraction(0))
    for idx, c in enumerate(coords):
        if c == 0:
            continue
        term = (Fraction(1), Fraction(1))
        bit, j = idx, 0
        while bit:
            if bit & 1:
                term = _iv_mul(term, root_ivs[j])
            bit >>= 1
            j += 1
        total = _iv_add(total, _iv_scale(c, term))
    return total


# ----------------------------------------------------------------------
# Coordinate-level arithmetic (recursive over tower levels)

def _c_add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _c_neg(x):
    return tuple(-a for a in x)


def _c_scale(q, x):
    return tuple(q * a for a in x)


def _c_mul(radicands, level, x, y):
    """Product in L_level; x, y are coordinate tuples of length 2^level."""
    if level == 0:
        return (x[0] * y[0],)
    h = 1 << (level - 1)
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    r = radicands[level - 1]
    ac = _c_mul(radicands, level - 1, a, c)
    bd = _c_mul(radicands, level - 1, b, d)
    bdr = _c_mul(radicands, level - 1, bd, r)
    lo = _c_add(ac, bdr)
    hi = _c_add(_c_mul(radicands, level - 1, a, d), _c_mul(radicands, level - 1, b, c))
    return lo + hi


def _c_inv(radicands, level, x):
    """Inverse in L_level; relies on radicands being non-squares, which
    makes the norm a^2 - r b^2 vanish only at zero."""
    if level == 0:
        if x[0] == 0:
            raise ZeroDivisionError("division by zero field element")
        return (1 / x[0],)
    h = 1 << (level - 1)
    a, b = x[:h], x[h:]
    r = radicands[level - 1]
    n = _c_add(_c_mul(radicands, level - 1, a, a),
               _c_neg(_c_mul(radicands, level - 1, _c_mul(radicands, level - 1, b, b), r)))
    ninv = _c_inv(radicands, level - 1, n)
    return _c_mul(radicands, level - 1, a, ninv) + _c_neg(_c_mul(radicands, level - 1, b, ninv))


def _sqrt_coords(tower: FieldTower, x):
    """Symbolic square root of x in the real tower, or None.

    Solves the quadratic coordinate equations level by level: for
    x = a + b s with s = sqrt(r), a root c + d s needs 2cd = b and
    c^2 + d^2 r = a, reducing to square roots one level down.
    """
    return _sqrt_rec(tower.radicands, tower.levels, tuple(x))


def _sqrt_rec(radicands, level, x):
    if level == 0:
        s = _rational_sqrt(x[0])
        return None if s is None else (s,)
    h = 1 << (level - 1)
    a, b = x[:h], x[h:]
    r = radicands[level - 1]
    zero = tuple(Fraction(0) for _ in range(h))
    if all(c == 0 for c in b):
        t = _sqrt_rec(radicands, level - 1, a)
        if t is not None:
            return t + zero
        # maybe sqrt(x) = d * s with d^2 = a / r
        try:
            ar = _c_mul(radicands, level - 1, a, _c_inv(radicands, level - 1, r))
        except ZeroDivisionError:
            return None
        d = _sqrt_rec(radicands, level - 1, ar)
        if d is not None:
            return zero + d
        return None
    # general case: need n = sqrt(a^2 - b^2 r) one level down
    bb = _c_mul(radicands, level - 1, b, b)
    disc = _c_add(_c_mul(radicands, level - 1, a, a), _c_neg(_c_mul(radicands, level - 1, bb, r)))
    n = _sqrt_rec(radicands, level - 1, disc)
    if n is None:
        return None
    half = Fraction(1, 2)
    for cand in (n, _c_neg(n)):
        c2 = _c_scale(half, _c_add(a, cand))
        c = _sqrt_rec(radicands, level - 1, c2)
        if c is None or all(v == 0 for v in c):
            continue
        d = _c_scale(half, _c_mul(radicands, level - 1, b, _c_inv(radicands, level - 1, c)))
        y = c + d
        if _c_mul(radicands, level, y, y) == x:
            return y
    return None


# ----------------------------------------------------------------------

class FieldElement:
    """Immutable element of a FieldTower; supports exact field arithmetic,
    conjugation, and embedding-based sign decisions."""

    __slots__ = ("tower", "coords", "_hash")

    def __init__(self, tower: FieldTower, coords: tuple):
        self.tower = tower
        self.coords = coords
        self._hash = None

    # -- helpers --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.tower is self.tower or other.tower == self.tower:
                return other
            raise FieldError("field descriptor mismatch")
        if isinstance(other, (int, Fraction)):
            return self.tower.from_rational(other)
        return None

    def _split(self):
        d = self.tower.dim_real
        if self.tower.gaussian:
            return self.coords[:d], self.coords[d:]
        return self.coords, None

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_one(self) -> bool:
        return self.coords[0] == 1 and all(c == 0 for c in self.coords[1:])

    def is_real(self) -> bool:
        re, im = self._split()
        return im is None or all(c == 0 for c in im)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise FieldError("element is not rational")
        return self.coords[0]

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.tower, _c_add(self.coords, o.coords))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.tower, _c_neg(self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.tower, _c_add(self.coords, _c_neg(o.coords)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = self.tower
        rad, lv = t.radicands, t.levels
        if not t.gaussian:
            return FieldElement(t, _c_mul(rad, lv, self.coords, o.coords))
        xr, xi = self._split()
        yr, yi = o._split()
        re = _c_add(_c_mul(rad, lv, xr, yr), _c_neg(_c_mul(rad, lv, xi, yi)))
        im = _c_add(_c_mul(rad, lv, xr, yi), _c_mul(rad, lv, xi, yr))
        return FieldElement(t, re + im)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero field element")
        t = self.tower
        rad, lv = t.radicands, t.levels
        if not t.gaussian:
            return FieldElement(t, _c_inv(rad, lv, self.coords))
        re, im = self._split()
        # (re + i im)^-1 = (re - i im) / (re^2 + im^2); the norm is a sum of
        # squares in a formally real tower, so it vanishes only at zero.
        norm = _c_add(_c_mul(rad, lv, re, re), _c_mul(rad, lv, im, im))
        ninv = _c_inv(rad, lv, norm)
        return FieldElement(t, _c_mul(rad, lv, re, ninv) + _c_neg(_c_mul(rad, lv, im, ninv)))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.tower.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- conjugation and embedding ----------------------------------------

    def conj(self) -> "FieldElement":
        """Complex conjugation: negates the Gaussian block, identity on
        the real tower."""
        re, im = self._split()
        if im is None:
            return self
        return FieldElement(self.tower, re + _c_neg(im))

    def real_part(self) -> "FieldElement":
        re, im = self._split()
        if im is None:
            return self
        zero = tuple(Fraction(0) for _ in re)
        return FieldElement(self.tower, re + zero)

    def imag_part(self) -> "FieldElement":
        """The real element y with self = real_part + i*y."""
        re, im = self._split()
        if im is None:
            return self.tower.zero()
        zero = tuple(Fraction(0) for _ in re)
        return FieldElement(self.tower, im + zero)

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.tower.from_rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.tower == other.tower and self.coords == other.coords

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.coords, self.tower._key))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- rendering ------------------------------------------------------------

    def __repr__(self) -> str:
        return "FieldElement(%s)" % render_element(self)

    def approx(self, digits: int = 12) -> str:
        """Decimal rendering by interval refinement; non-authoritative."""
        re, im = self._split()
        s = _decimal_str(self.tower, re, digits)
        if im is not None and any(c != 0 for c in im):
            t = _decimal_str(self.tower, im, digits)
            return "%s%s%si" % (s, "" if t.startswith("-") else "+", t)
        return s


# ----------------------------------------------------------------------
# module-level operations (spec surface)

def field_arith(x: FieldElement, y: FieldElement, op: str) -> FieldElement:
    """Exact +, -, *, / with descriptor checking."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise FieldError("unknown operation %r" % op)


def conj(x: FieldElement) -> FieldElement:
    return x.conj()


def sign_real(x: FieldElement) -> int:
    """Sign of a real-tower element under the designated embedding.

    Zero is decided symbolically (coordinate zero); otherwise a dyadic
    interval around the embedded value is refined until it excludes zero,
    which terminates because the element is a nonzero algebraic number.
    """
    if not x.is_real():
        raise FieldError("sign_real of an element with nonzero imaginary part")
    re, _ = x._split()
    if all(c == 0 for c in re):
        return 0
    tower = x.tower
    bits = 32
    while bits <= _MAX_SIGN_BITS:
        ivs = tower._root_enclosures(bits)
        if ivs is not None:
            lo, hi = _eval_interval(re, ivs)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
        bits <<= 1
    raise FieldError("interval refinement failed to separate element from zero")


def in_open_disk(a: FieldElement) -> bool:
    """True iff |a| < 1 under the designated embedding."""
    one = a.tower.one()
    return sign_real(one - a * a.conj()) == 1


def abs_squared(a: FieldElement) -> FieldElement:
    return a * a.conj()


# ----------------------------------------------------------------------
# canonical literal rendering (grammar of expressions.py)

def _fraction_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def _basis_label(tower: FieldTower, idx: int, imag: bool) -> str:
    parts = []
    bit, j = idx, 1
    while bit:
        if bit & 1:
            parts.append("s%d" % j)
        bit >>= 1
        j += 1
    if imag:
        parts.append("i")
    return "*".join(parts)


def render_element(x: FieldElement) -> str:
    """Canonical literal in the element grammar; parses back to x."""
    tower = x.tower
    d = tower.dim_real
    terms = []
    for pos, c in enumerate(x.coords):
        if c == 0:
            continue
        imag = pos >= d
        label = _basis_label(tower, pos % d, imag)
        mag = _fraction_str(abs(c))
        if label and abs(c) == 1:
            body = label
        elif label:
            body = "%s*%s" % (mag, label)
        else:
            body = mag
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += sign + body
    return out


def _decimal_str(tower: FieldTower, coords, digits: int) -> str:
    scale = 10 ** digits
    target = Fraction(1, 2 * scale)
    bits = 32
    while bits <= _MAX_SIGN_BITS:
        ivs = tower._root_enclosures(bits)
        if ivs is not None:
            lo, hi = _eval_interval(coords, ivs)
            if hi - lo < target:
                mid = (lo + hi) / 2
                n = round(mid * scale)
                whole, frac = divmod(abs(n), scale)
                sign = "-" if n < 0 else ""
                return "%s%d.%0*d" % (sign, whole, digits, frac)
        bits <<= 1
    raise FieldError("interval refinement failed during decimal rendering")
