"""Construction of the unique normalizing paraunitary matrix.

Given phi_1, ..., phi_{m-1} in R- (partial-fraction form), this module
builds the unique m x m paraunitary U with det U = 1, U(1) = I and
F U analytic in the disk, where F is the identity with last row
(phi_1, ..., phi_{m-1}, 1).  One linear system describes all columns; the
right-hand side is the only per-column difference.

Unknowns are the constant and pole coefficients of the tilde side of
each entry.  Equations come in three blocks: the value at z = 1, the
vanishing principal parts of phi_i u_m - u_i~ at each pole of phi_i, and
the vanishing principal parts of sum_i phi_i u_i + u_m~ at each merged
pole.  Pole coefficients of the analytic sides enter through transfer
matrices; conjugated unknowns are handled by doubling the system into
real and imaginary parts when the field carries the Gaussian layer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import InternalInvariantError, PoleDataError
from .fields import FieldElement, FieldTower, in_open_disk
from .linalg import solve_square
from .matrices import RatMatrix
from .ratfun import PartialFraction, Poly, PoleSpec, RationalFn
from .taylor import transfer_matrix


class PhiRow:
    """The data of the unitriangular F: m and phi_1..phi_{m-1} in R-."""

    __slots__ = ("tower", "m", "phis")

    def __init__(self, tower: FieldTower, m: int, phis: Sequence[PartialFraction]):
        if m < 1:
            raise ValueError("matrix size must be at least 1")
        if len(phis) != m - 1:
            raise ValueError("expected %d functions, got %d" % (m - 1, len(phis)))
        for phi in phis:
            if not phi.entire.is_zero():
                raise PoleDataError("phi functions must have zero entire part")
            for pole, _ in phi.terms:
                if not in_open_disk(pole):
                    raise PoleDataError("phi pole lies outside the open unit disk")
        self.tower = tower
        self.m = m
        self.phis = tuple(phis)


@dataclass(frozen=True)
class UnknownLayout:
    """Flat indexing of the unknown coefficients.

    tables[i] lists the poles (with orders) carried by the tilde side of
    entry i; tables[m-1] is the merged pole list with maximal orders.
    """

    m: int
    tables: tuple
    offsets: tuple
    size: int

    @property
    def merged(self) -> tuple:
        return self.tables[self.m - 1]

    def const_index(self, i: int) -> int:
        return i

    def coeff_index(self, i: int, k: int, l: int) -> int:
        return self.offsets[i][k] + (l - 1)


def merge_poles(row: PhiRow) -> UnknownLayout:
    """Pole layout: per-function tables plus the merged maximal-order
    table, and the flat unknown count m0 = m + sum of all orders."""
    m = row.m
    tables = []
    merged: dict = {}
    order: list = []
    for phi in row.phis:
        specs = []
        for pole, coeffs in phi.terms:
            specs.append(PoleSpec(pole, len(coeffs)))
            key = pole
            if key not in merged:
                merged[key] = len(coeffs)
                order.append(key)
            else:
                merged[key] = max(merged[key], len(coeffs))
        tables.append(tuple(specs))
    merged_specs = tuple(sorted((PoleSpec(p, merged[p]) for p in order),
                                key=lambda s: s.location.coords))
    tables.append(merged_specs)
    offsets = []
    pos = m
    for table in tables:
        offs = []
        for spec in table:
            offs.append(pos)
            pos += spec.order
        offsets.append(tuple(offs))
    return UnknownLayout(m=m, tables=tuple(tables), offsets=tuple(offsets), size=pos)


@dataclass
class JLSystem:
    """The assembled linear system (doubled into real/imaginary parts
    when the field is Gaussian)."""

    matrix: list
    rhs: list
    doubling: bool
    layout: UnknownLayout
    tower: FieldTower


def _gamma(coeffs: tuple, l: int, zero: FieldElement) -> FieldElement:
    return coeffs[l - 1] if 1 <= l <= len(coeffs) else zero


def _complex_rows(layout: UnknownLayout, row: PhiRow):
    """Rows as (alpha, beta) coefficient vectors over the unknowns z_p,
    one per equation: sum alpha_p z_p + beta_p conj(z_p) = rhs."""
    tower = row.tower
    m, size = layout.m, layout.size
    zero, one = tower.zero(), tower.one()
    rows = []

    # value at z = 1: conj(C_i) + sum conj(C_ikl) / (1 - conj(a))^l = delta_ij
    for i in range(m):
        alpha = [zero] * size
        beta = [zero] * size
        beta[layout.const_index(i)] = one
        for k, spec in enumerate(layout.tables[i]):
            base = (one - spec.location.conj()).inverse()
            for l in range(1, spec.order + 1):
                beta[layout.coeff_index(i, k, l)] = base ** l
        rows.append((alpha, beta))

    # principal parts of phi_i u_m - u_i~ at each pole of phi_i
    for i in range(m - 1):
        phi = row.phis[i]
        for k, (pole, coeffs) in enumerate(phi.terms):
            n = len(coeffs)
            for s in range(1, n + 1):
                alpha = [zero] * size
                beta = [zero] * size
                beta[layout.const_index(m - 1)] = _gamma(coeffs, s, zero)
                for tau, bspec in enumerate(layout.merged):
                    t_matrix = transfer_matrix(pole, bspec.location, n, bspec.order).entries
                    for l in range(1, bspec.order + 1):
                        acc = zero
                        for t in range(0, n - s + 1):
                            g = _gamma(coeffs, s + t, zero)
                            if not g.is_zero():
                                acc = acc + g * t_matrix[t][l - 1]
                        idx = layout.coeff_index(m - 1, tau, l)
                        beta[idx] = beta[idx] + acc
                alpha[layout.coeff_index(i, k, s)] = -one
                rows.append((alpha, beta))

    # principal parts of sum_i phi_i u_i + u_m~ at each merged pole
    for k, spec in enumerate(layout.merged):
        n = spec.order
        for s in range(1, n + 1):
            alpha = [zero] * size
            beta = [zero] * size
            for i in range(m - 1):
                coeffs = None
                for pole, cs in row.phis[i].terms:
                    if pole == spec.location:
                        coeffs = cs
                        break
                if coeffs is None:
                    continue
                beta[layout.const_index(i)] = beta[layout.const_index(i)] + _gamma(coeffs, s, zero)
                for tau, bspec in enumerate(layout.tables[i]):
                    t_matrix = transfer_matrix(spec.location, bspec.location, n, bspec.order).entries
                    for l in range(1, bspec.order + 1):
                        acc = zero
                        for t in range(0, n - s + 1):
                            g = _gamma(coeffs, s + t, zero)
                            if not g.is_zero():
                                acc = acc + g * t_matrix[t][l - 1]
                        idx = layout.coeff_index(i, tau, l)
                        beta[idx] = beta[idx] + acc
            alpha[layout.coeff_index(m - 1, k, s)] = one
            rows.append((alpha, beta))

    return rows


def _realize_matrix(rows, tower: FieldTower, size: int):
    """Collapse conj(z) = z over a real tower, or double the system into
    real and imaginary parts over a Gaussian tower."""
    if not tower.gaussian:
        return [[a + b for a, b in zip(alpha, beta)] for alpha, beta in rows], False
    real_rows, imag_rows = [], []
    for alpha, beta in rows:
        real_row = [None] * (2 * size)
        imag_row = [None] * (2 * size)
        for p in range(size):
            ar, ai = alpha[p].real_part(), alpha[p].imag_part()
            br, bi = beta[p].real_part(), beta[p].imag_part()
            real_row[p] = ar + br
            real_row[size + p] = bi - ai
            imag_row[p] = ai + bi
            imag_row[size + p] = ar - br
        real_rows.append(real_row)
        imag_rows.append(imag_row)
    return real_rows + imag_rows, True


def build_column_system(layout: UnknownLayout, row: PhiRow, j: int) -> JLSystem:
    """System for column j (1-based): right-hand side e_j in the value
    block, zero elsewhere."""
    if not 1 <= j <= layout.m:
        raise ValueError("column index out of range")
    tower = row.tower
    rows = _complex_rows(layout, row)
    matrix, doubled = _realize_matrix(rows, tower, layout.size)
    zero, one = tower.zero(), tower.one()
    rhs = [one if r == j - 1 else zero for r in range(layout.size)]
    if doubled:
        rhs = rhs + [zero] * layout.size
    return JLSystem(matrix=matrix, rhs=rhs, doubling=doubled, layout=layout, tower=tower)


def solve_system(system: JLSystem) -> list[FieldElement]:
    """Exact solution vector of the unknown coefficients (recombined from
    real and imaginary parts when the system was doubled)."""
    columns = solve_square(system.matrix, [[v] for v in system.rhs])
    values = [r[0] for r in columns]
    if not system.doubling:
        return values
    size = system.layout.size
    i_unit = system.tower.imag_unit()
    return [values[p] + i_unit * values[size + p] for p in range(size)]


@dataclass(frozen=True)
class ColumnSolution:
    """Solved coefficients for one column: the constants C_i and the pole
    coefficients aligned with the layout tables."""

    consts: tuple
    pole_coeffs: tuple


@dataclass(frozen=True)
class Certificate:
    paraunitary: bool
    det_one: bool
    identity_at_one: bool
    fu_analytic: bool

    def ok(self) -> bool:
        return self.paraunitary and self.det_one and self.identity_at_one and self.fu_analytic

    def as_dict(self) -> dict:
        return {"paraunitary": self.paraunitary, "det_one": self.det_one,
                "identity_at_one": self.identity_at_one, "fu_analytic": self.fu_analytic}


@dataclass(frozen=True)
class ParaunitaryResult:
    U: RatMatrix
    certificate: Certificate
    layout: UnknownLayout
    columns: tuple
    elapsed: float


def _tilde_side(layout: UnknownLayout, i: int, values: Sequence[FieldElement],
                tower: FieldTower) -> PartialFraction:
    entire = Poly(tower, (values[layout.const_index(i)],))
    terms = []
    for k, spec in enumerate(layout.tables[i]):
        coeffs = [values[layout.coeff_index(i, k, l)] for l in range(1, spec.order + 1)]
        terms.append((spec.location, coeffs))
    return PartialFraction(tower, entire, terms)


def construct_paraunitary(row: PhiRow) -> ParaunitaryResult:
    """Build U column by column and verify the full certificate exactly."""
    start = time.monotonic()
    tower = row.tower
    m = row.m
    layout = merge_poles(row)
    rows = _complex_rows(layout, row)
    matrix, doubled = _realize_matrix(rows, tower, layout.size)
    zero, one = tower.zero(), tower.one()
    n = layout.size
    rhs_rows = [[one if r == j else zero for j in range(m)] for r in range(n)]
    if doubled:
        rhs_rows = rhs_rows + [[zero] * m for _ in range(n)]
    solved = solve_square(matrix, rhs_rows)
    if doubled:
        i_unit = tower.imag_unit()
        per_column = [[solved[p][j] + i_unit * solved[n + p][j] for p in range(n)]
                      for j in range(m)]
    else:
        per_column = [[solved[p][j] for p in range(n)] for j in range(m)]

    columns = []
    u_entries = [[None] * m for _ in range(m)]
    for j in range(m):
        values = per_column[j]
        consts = tuple(values[layout.const_index(i)] for i in range(m))
        pole_coeffs = tuple(
            tuple(tuple(values[layout.coeff_index(i, k, l)]
                        for l in range(1, spec.order + 1))
                  for k, spec in enumerate(layout.tables[i]))
            for i in range(m))
        columns.append(ColumnSolution(consts=consts, pole_coeffs=pole_coeffs))
        for i in range(m):
            wdt = _tilde_side(layout, i, values, tower).to_ratfn()
            u_entries[i][j] = wdt if i == m - 1 else wdt.tilde()
    U = RatMatrix(tower, u_entries)

    certificate = _certify(U, row, layout)
    if not certificate.ok():
        raise InternalInvariantError("paraunitary certificate failed: %s"
                                     % certificate.as_dict())
    return ParaunitaryResult(U=U, certificate=certificate, layout=layout,
                             columns=tuple(columns), elapsed=time.monotonic() - start)


def _certify(U: RatMatrix, row: PhiRow, layout: UnknownLayout) -> Certificate:
    tower = row.tower
    m = row.m
    paraunitary = (U @ U.tilde()).is_identity()
    det_one = U.det().is_one()
    at_one = U.at(tower.one())
    identity_at_one = all(
        (at_one[i][j].is_one() if i == j else at_one[i][j].is_zero())
        for i in range(m) for j in range(m))
    fu_analytic = True
    f_last = [phi.to_ratfn() for phi in row.phis] + [RationalFn.one(tower)]
    for j in range(m):
        entry = RationalFn.zero(tower)
        for k in range(m):
            if not f_last[k].is_zero() and not U[k][j].is_zero():
                entry = entry + f_last[k] * U[k][j]
        for spec in layout.merged:
            mult = entry.den_multiplicity(spec.location)
            if mult == 0:
                continue
            if mult > spec.order or any(not c.is_zero()
                                        for c in entry.principal_part(spec.location, spec.order)):
                fu_analytic = False
    # rows above the last are entries of U itself; their tilde-side poles are
    # reflected outside the disk, checked cheaply here for completeness
    if fu_analytic:
        for i in range(m - 1):
            for j in range(m):
                for spec in layout.merged:
                    if U[i][j].den_multiplicity(spec.location) > 0:
                        fu_analytic = False
    return Certificate(paraunitary=paraunitary, det_one=det_one,
                       identity_at_one=identity_at_one, fu_analytic=fu_analytic)
