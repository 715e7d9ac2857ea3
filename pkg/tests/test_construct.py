"""The linear system per column and the assembled paraunitary matrix,
pinned against the worked examples and exact whole-matrix identities."""

import random
from fractions import Fraction

import pytest

from specfact import (PartialFraction, PhiRow, PoleDataError, Poly, RatMatrix,
                      RationalFn, build_column_system, construct_paraunitary,
                      merge_poles, parse_element, parse_ratfn, solve_system)
from conftest import rand_phi_row


def _simple_phi(tower, pole, residue):
    return PartialFraction(tower, Poly.zero(tower), [(pole, [residue])])


def _row_81(golden):
    z0 = parse_element("(s1-3)/2", golden)
    g0 = parse_element("(25-11*s1)/2", golden)
    return PhiRow(golden, 2, [_simple_phi(golden, z0, g0)]), z0, g0


def _row_82(rationals):
    q = rationals
    z0 = q.from_rational(Fraction(-5, 6))
    g1 = q.from_rational(Fraction(11, 12))
    g2 = q.from_rational(Fraction(-11, 36))
    return PhiRow(q, 3, [_simple_phi(q, z0, g1), _simple_phi(q, z0, g2)]), z0, (g1, g2)


def test_merge_poles_counts(rationals, golden):
    row81, _, _ = _row_81(golden)
    assert merge_poles(row81).size == 4
    row82, _, _ = _row_82(rationals)
    assert merge_poles(row82).size == 6
    trivial = PhiRow(rationals, 3, [PartialFraction.zero(rationals)] * 2)
    layout = merge_poles(trivial)
    assert layout.size == 3 and layout.merged == ()


def test_merge_poles_takes_maximal_orders(rationals):
    q = rationals
    a = q.from_rational(Fraction(1, 2))
    one = q.one()
    phi1 = PartialFraction(q, Poly.zero(q), [(a, [one])])
    phi2 = PartialFraction(q, Poly.zero(q), [(a, [one, one, one])])
    layout = merge_poles(PhiRow(q, 3, [phi1, phi2]))
    assert [s.order for s in layout.merged] == [3]
    assert layout.size == 3 + 1 + 3 + 3


def test_4sys_matrix_and_rhs(golden):
    row, z0, g0 = _row_81(golden)
    layout = merge_poles(row)
    one, zero = golden.one(), golden.zero()
    r = (one - z0).inverse()
    w = g0 * z0 / (one - z0 * z0)
    expected = [
        [one, zero, r, zero],
        [zero, one, zero, r],
        [zero, g0, -one, w],
        [g0, zero, w, one],
    ]
    for j in (1, 2):
        system = build_column_system(layout, row, j)
        assert not system.doubling
        assert [list(r_) for r_ in system.matrix] == expected
        assert system.rhs == [one if i == j - 1 else zero for i in range(4)]


def test_4sys_solutions_match_paper(golden):
    row, _, _ = _row_81(golden)
    layout = merge_poles(row)
    first = solve_system(build_column_system(layout, row, 1))
    assert first == [parse_element("(35-7*s1)/20", golden),
                     parse_element("(5-s1)/20", golden),
                     parse_element("(-11+5*s1)/4", golden),
                     parse_element("(-3+s1)/4", golden)]
    second = solve_system(build_column_system(layout, row, 2))
    assert second == [parse_element("(-5+s1)/20", golden),
                      parse_element("(35-7*s1)/20", golden),
                      parse_element("(3-s1)/4", golden),
                      parse_element("(-11+5*s1)/4", golden)]


def test_6sys_matrix(rationals):
    row, z0, (g1, g2) = _row_82(rationals)
    layout = merge_poles(row)
    q = rationals
    one, zero = q.one(), q.zero()
    r = (one - z0).inverse()
    w = z0 / (one - z0 * z0)
    expected = [
        [one, zero, zero, r, zero, zero],
        [zero, one, zero, zero, r, zero],
        [zero, zero, one, zero, zero, r],
        [zero, zero, g1, -one, zero, g1 * w],
        [zero, zero, g2, zero, -one, g2 * w],
        [g1, g2, zero, g1 * w, g2 * w, one],
    ]
    system = build_column_system(layout, row, 3)
    assert [list(r_) for r_ in system.matrix] == expected
    assert system.rhs == [zero, zero, one, zero, zero, zero]


def test_construct_81_matches_U22(golden):
    row, _, _ = _row_81(golden)
    result = construct_paraunitary(row)
    c = "(5-s1)/(10*s2)"
    expected = [[f"({c})*(7+3*z)/(s2*z+2/s2)", f"({c})*(-1+z)/(s2*z+2/s2)"],
                [f"({c})*(-1+z)/(s2+(2/s2)*z)", f"({c})*(3+7*z)/(s2+(2/s2)*z)"]]
    for i in range(2):
        for j in range(2):
            assert result.U[i][j] == parse_ratfn(expected[i][j], golden)
    assert result.certificate.ok()


def test_construct_82_matches_display_and_system(rationals):
    # the printed matrix carries typos (its third column duplicates the
    # second, impossible at determinant 1, and entry (2,1) contradicts the
    # printed system's second equation), so pin the self-consistent
    # entries plus the solved coefficients of every column
    row, z0, _ = _row_82(rationals)
    result = construct_paraunitary(row)
    consistent = {(0, 0): "19/22+3*z/(2*(5*z+6))",
                  (0, 1): "1/22-z/(2*(5*z+6))",
                  (1, 1): "65/66+z/(6*(5*z+6))",
                  (2, 0): "1/22-1/(2*(6*z+5))",
                  (2, 1): "-1/66+1/(6*(6*z+5))"}
    for (i, j), text in consistent.items():
        assert result.U[i][j] == parse_ratfn(text, rationals)
    # every entry agrees with its own column's solved coefficients
    layout = merge_poles(row)
    for j in range(3):
        values = solve_system(build_column_system(layout, row, j + 1))
        for i in range(3):
            c, c1 = values[i], values[3 + i]
            wdt = RationalFn.constant(c) + RationalFn.constant(c1) / parse_ratfn(
                "z+5/6", rationals)
            expected = wdt if i == 2 else wdt.tilde()
            assert result.U[i][j] == expected
    assert result.certificate.ok()


def test_zero_row_gives_identity(rationals):
    row = PhiRow(rationals, 3, [PartialFraction.zero(rationals)] * 2)
    assert construct_paraunitary(row).U.is_identity()


def test_size_one_row(rationals):
    row = PhiRow(rationals, 1, [])
    result = construct_paraunitary(row)
    assert result.U.shape == (1, 1) and result.U.is_identity()


def test_gaussian_construction(gaussian_rationals):
    g = gaussian_rationals
    pole = parse_element("(1+2*i)/5", g)
    residue = parse_element("(2-i)/3", g)
    row = PhiRow(g, 2, [_simple_phi(g, pole, residue)])
    layout = merge_poles(row)
    system = build_column_system(layout, row, 1)
    assert system.doubling and len(system.matrix) == 2 * layout.size
    result = construct_paraunitary(row)
    assert result.certificate.ok()


def test_pole_outside_disk_rejected(rationals):
    q = rationals
    phi = PartialFraction(q, Poly.zero(q), [(q.from_rational(2), [q.one()])])
    with pytest.raises(PoleDataError):
        PhiRow(q, 2, [phi])


def test_nonzero_entire_part_rejected(rationals):
    q = rationals
    bad = PartialFraction(q, Poly.one(q), [(q.from_rational(Fraction(1, 2)), [q.one()])])
    with pytest.raises(PoleDataError):
        PhiRow(q, 2, [bad])


def test_construct_deterministic(rationals):
    rng1, rng2 = random.Random(42), random.Random(42)
    row1 = rand_phi_row(rng1, rationals, m=3)
    row2 = rand_phi_row(rng2, rationals, m=3)
    u1 = construct_paraunitary(row1).U
    u2 = construct_paraunitary(row2).U
    assert u1 == u2


def test_columns_solve_membership_conditions(rationals):
    # each column of U satisfies the membership system: principal parts of
    # phi_i u_m - u_i~ and of sum phi_i u_i + u_m~ vanish at every pole
    rng = random.Random(62)
    row = rand_phi_row(rng, rationals, m=3, max_poles=2, max_order=2)
    result = construct_paraunitary(row)
    U, layout = result.U, result.layout
    m = row.m
    for j in range(m):
        u_m = U[m - 1][j].tilde()
        for i in range(m - 1):
            condition = row.phis[i].to_ratfn() * u_m - U[i][j].tilde()
            for spec in layout.merged:
                mult = condition.den_multiplicity(spec.location)
                assert all(c.is_zero()
                           for c in condition.principal_part(spec.location, mult))
        last = U[m - 1][j]
        for i in range(m - 1):
            last = last + row.phis[i].to_ratfn() * U[i][j]
        for spec in layout.merged:
            mult = last.den_multiplicity(spec.location)
            assert all(c.is_zero() for c in last.principal_part(spec.location, mult))


def test_gram_functions_constant(rationals):
    rng = random.Random(63)
    row = rand_phi_row(rng, rationals, m=3, max_poles=2, max_order=2)
    U = construct_paraunitary(row).U
    m = row.m
    for i in range(m):
        for j in range(m):
            gram = RationalFn.zero(rationals)
            for k in range(m):
                gram = gram + U[k][i] * U[k][j].tilde()
            assert gram.is_constant()
            expected = rationals.one() if i == j else rationals.zero()
            assert gram.constant_value() == expected
