"""Shared towers and seeded random generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from specfact import (PartialFraction, PhiRow, Poly, PoleSpec, RatMatrix,
                      RationalFn, TriangularFactor, build_tower)


@pytest.fixture(scope="session")
def rationals():
    return build_tower([])


@pytest.fixture(scope="session")
def golden():
    """The tower Q(sqrt5)(sqrt(3-sqrt5)) of the worked factorization."""
    return build_tower(["5", "3-s1"])


@pytest.fixture(scope="session")
def gaussian_rationals():
    return build_tower([], gaussian=True)


def rand_fraction(rng: random.Random, bound: int = 10, den_max: int = 9) -> Fraction:
    den = rng.randint(1, den_max)
    return Fraction(rng.randint(-bound * den, bound * den), den)


def rand_disk_point(rng: random.Random, num_bound: int = 4, den_lo: int = 5,
                    den_hi: int = 10) -> Fraction:
    """Rational point with |a| <= num_bound/den_lo (default 4/5)."""
    den = rng.randint(den_lo, den_hi)
    top = (num_bound * den) // den_lo
    return Fraction(rng.randint(-top, top), den)


def rand_phi_row(rng: random.Random, tower, m: int = None, max_poles: int = 3,
                 max_order: int = 3, coeff_bound: int = 10) -> PhiRow:
    """Random PhiRow matching the acceptance distribution: shared in-disk
    pole set, per-function random orders, nonzero top coefficients."""
    if m is None:
        m = rng.choice([2, 3, 4])
    locs = set()
    while len(locs) < rng.randint(1, max_poles):
        locs.add(rand_disk_point(rng))
    phis = []
    for _ in range(m - 1):
        terms = []
        for a in sorted(locs):
            order = rng.randint(1, max_order)
            coeffs = [tower.from_rational(rand_fraction(rng, coeff_bound))
                      for _ in range(order)]
            if all(c.is_zero() for c in coeffs):
                coeffs[-1] = tower.one()
            terms.append((tower.from_rational(a), coeffs))
        phis.append(PartialFraction(tower, Poly.zero(tower), terms))
    return PhiRow(tower, m, phis)


def rand_outer_poly(rng: random.Random, tower) -> Poly:
    """Degree <= 2 polynomial whose constant term dominates the sum of the
    other coefficient magnitudes, hence zero-free on the closed disk."""
    c1 = rand_fraction(rng, 2, 6)
    c2 = rand_fraction(rng, 2, 6)
    c0 = abs(c1) + abs(c2) + Fraction(rng.randint(1, 5))
    return Poly(tower, (tower.from_rational(c0), tower.from_rational(c1),
                        tower.from_rational(c2)))


def rand_lower_entry(rng: random.Random, tower, max_poles: int = 2):
    """Strictly-lower entry with declared simple in-disk poles."""
    locs = set()
    while len(locs) < rng.randint(1, max_poles):
        locs.add(rand_disk_point(rng))
    locs = sorted(locs)
    den = Poly.one(tower)
    for a in locs:
        den = den * Poly.x_minus(tower.from_rational(a))
    while True:
        num = Poly(tower, tuple(tower.from_rational(rand_fraction(rng, 5, 6))
                                for _ in range(rng.randint(1, 3))))
        if num.is_zero():
            continue
        if all(not num.evaluate(tower.from_rational(a)).is_zero() for a in locs):
            break
    specs = [PoleSpec(tower.from_rational(a), 1) for a in locs]
    return RationalFn(num, den), specs


def rand_triangular(rng: random.Random, tower, r: int = 3) -> TriangularFactor:
    entries = [[RationalFn.zero(tower)] * r for _ in range(r)]
    pole_data = {}
    for i in range(r):
        entries[i][i] = RationalFn.from_poly(rand_outer_poly(rng, tower))
        for j in range(i):
            entry, specs = rand_lower_entry(rng, tower)
            entries[i][j] = entry
            pole_data[(i + 1, j + 1)] = specs
    return TriangularFactor(RatMatrix(tower, entries), pole_data)
