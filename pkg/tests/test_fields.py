"""Field tower arithmetic, sign decisions, and the element grammar."""

import random
from fractions import Fraction
from math import isqrt

import pytest

from specfact import (DescriptorError, FieldError, FieldTower, build_tower, conj,
                      field_arith, in_open_disk, parse_element, render_element,
                      sign_real)


def test_tower_roots_square_to_radicands(golden):
    s1, s2 = golden.root(1), golden.root(2)
    assert s1 * s1 == 5
    assert s2 * s2 == golden.from_rational(3) - s1


def test_difference_of_squares(golden):
    s1 = golden.root(1)
    assert (3 - s1) * (3 + s1) == 4


def test_division_by_multiply_back_oracle(golden):
    s1 = golden.root(1)
    x = field_arith(golden.from_rational(2), s1 - 3, "div")
    assert x * (s1 - 3) == 2
    assert x == -(s1 + 3) / 2


def test_product_of_conjugate_roots(golden):
    # a = sqrt(3-sqrt5), b = 2/a; oracle: square both sides of a*b = 2
    a = golden.root(2)
    b = 2 / a
    assert (a * b) ** 2 == 4
    assert a * b == 2
    assert b * b == 3 + golden.root(1)


def test_conj_examples(golden, gaussian_rationals):
    assert conj(golden.from_rational(Fraction(3, 4))) == Fraction(3, 4)
    g = gaussian_rationals
    x = g.from_rational(1) + 2 * g.imag_unit()
    assert conj(x) == g.from_rational(1) - 2 * g.imag_unit()
    real_sol = parse_element("(35-7*s1)/20", golden)
    assert conj(real_sol) == real_sol


def test_sign_real(golden):
    s1 = golden.root(1)
    assert sign_real(golden.zero()) == 0
    assert sign_real(s1 - 3) == -1
    z0 = (s1 - 3) / 2
    assert sign_real(1 - z0 * z0) == 1


def test_sign_real_rejects_complex(gaussian_rationals):
    with pytest.raises(FieldError):
        sign_real(gaussian_rationals.imag_unit())


def test_in_open_disk(golden):
    assert in_open_disk(golden.from_rational(Fraction(-5, 6)))
    assert not in_open_disk(golden.one())
    assert in_open_disk((golden.root(1) - 3) / 2)


def test_in_open_disk_gaussian(gaussian_rationals):
    g = gaussian_rationals
    z = (3 + 4 * g.imag_unit()) / 5
    assert not in_open_disk(z)
    assert in_open_disk(z * g.from_rational(Fraction(9, 10)))


def test_descriptor_rejects_square_radicand():
    with pytest.raises(DescriptorError):
        build_tower(["4"])
    with pytest.raises(DescriptorError):
        build_tower(["9/16"])
    # 6-2*s1 = (1-s1)^2 is a square in Q(sqrt5)
    with pytest.raises(DescriptorError):
        build_tower(["5", "6-2*s1"])


def test_descriptor_rejects_nonpositive_radicand():
    with pytest.raises(DescriptorError):
        build_tower(["0"])
    with pytest.raises(DescriptorError):
        build_tower(["5", "s1-3"])


def test_descriptor_mismatch_raises(golden, rationals):
    with pytest.raises(FieldError):
        field_arith(golden.one(), rationals.one(), "add")


def test_division_by_zero(golden):
    with pytest.raises(ZeroDivisionError):
        golden.one() / golden.zero()


def _random_elements(tower, rng, count):
    out = []
    for _ in range(count):
        coords = [Fraction(rng.randint(-9, 9), rng.randint(1, 7))
                  for _ in range(tower.dim)]
        out.append(tower.element(coords))
    return out


def test_field_axioms_random(golden, gaussian_rationals):
    rng = random.Random(101)
    for tower in (golden, gaussian_rationals):
        xs = _random_elements(tower, rng, 6)
        for x in xs:
            for y in xs:
                assert x * y == y * x
                for w in xs[:3]:
                    assert (x * y) * w == x * (y * w)
                    assert x * (y + w) == x * y + x * w
            if not x.is_zero():
                assert x * x.inverse() == tower.one()


def test_conj_is_ring_involution(gaussian_rationals):
    rng = random.Random(55)
    xs = _random_elements(gaussian_rationals, rng, 5)
    for x in xs:
        assert conj(conj(x)) == x
        for y in xs:
            assert conj(x * y) == conj(x) * conj(y)
            assert conj(x + y) == conj(x) + conj(y)


def test_sign_real_multiplicative(golden):
    rng = random.Random(77)
    xs = [x for x in _random_elements(golden, rng, 8) if not x.is_zero()]
    for x in xs:
        for y in xs:
            assert sign_real(x * y) == sign_real(x) * sign_real(y)


def test_element_grammar_round_trip(golden, gaussian_rationals):
    rng = random.Random(13)
    for tower in (golden, gaussian_rationals):
        for x in _random_elements(tower, rng, 10):
            assert parse_element(render_element(x), tower) == x


def test_decimal_rendering_against_isqrt_oracle(golden):
    # z0 = (sqrt5-3)/2 to 12 digits, via integer square root of 5*10^28
    z0 = (golden.root(1) - 3) / 2
    scaled = isqrt(5 * 10 ** 28)  # floor(sqrt5 * 10^14)
    oracle = (Fraction(scaled, 10 ** 14) - 3) / 2
    text = z0.approx(12)
    assert abs(Fraction(text) - oracle) <= Fraction(2, 10 ** 12)


def test_power_and_rational_helpers(golden):
    s1 = golden.root(1)
    assert s1 ** 4 == 25
    assert s1 ** (-2) == Fraction(1, 5)
    assert golden.from_rational(Fraction(7, 3)).as_rational() == Fraction(7, 3)
    with pytest.raises(FieldError):
        s1.as_rational()
