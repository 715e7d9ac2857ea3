"""Completion of a unit-norm rational row to a full paraunitary matrix.

The given row is (v_1, ..., v_{m-1}, v_m~) with every v_i analytic in
the closed disk's complement sense (members of R+) and
sum_i v_i v_i~ = 1.  The construction solves the membership system for a
phi row, builds the normalizing paraunitary U, and multiplies by a
constant unitary W completing the value of the row at z = 1.  The public
result is the transpose, so its first row is exactly the input.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .construct import PhiRow, construct_paraunitary
from .errors import CompletionError, CoronaError, InternalInvariantError, PoleDataError
from .fields import FieldElement, FieldTower
from .linalg import solve_particular
from .matrices import RatMatrix
from .ratfun import PartialFraction, Poly, PoleSpec, RationalFn, split_plus_minus


class UnitRow:
    """Unit-norm row data with caller-declared in-disk annotations.

    reflected_poles[i] lists the in-disk poles of v_i~ (reflections of the
    poles of v_i); vm_disk_zeros lists the in-disk zeros of the numerator
    of v_m.  Both are validated against the actual polynomials by exact
    division; nothing is located by root finding.
    """

    def __init__(self, tower: FieldTower, v: Sequence[RationalFn],
                 reflected_poles: Sequence[Sequence[PoleSpec]],
                 vm_disk_zeros: Sequence[PoleSpec] = ()):
        self.tower = tower
        self.m = len(v)
        if self.m < 2:
            raise CompletionError("a unit row needs at least two entries")
        if len(reflected_poles) != self.m:
            raise CompletionError("expected %d reflected pole lists" % self.m)
        self.v = tuple(v)
        self.reflected_poles = tuple(tuple(specs) for specs in reflected_poles)
        self.vm_disk_zeros = tuple(vm_disk_zeros)
        for i, specs in enumerate(self.reflected_poles):
            vt = self.v[i].tilde()
            for spec in specs:
                mult = vt.den_multiplicity(spec.location)
                if mult != spec.order:
                    raise PoleDataError(
                        "reflected pole annotation of entry %d declares order %d "
                        "but the denominator carries multiplicity %d"
                        % (i + 1, spec.order, mult))
        vm = self.v[-1]
        for spec in self.vm_disk_zeros:
            mult = vm.num.multiplicity_at(spec.location)
            if mult != spec.order:
                raise PoleDataError(
                    "zero annotation of the last entry declares order %d but the "
                    "numerator carries multiplicity %d" % (spec.order, mult))

    def row_functions(self) -> list[RationalFn]:
        """The actual row: v_1, ..., v_{m-1}, v_m~."""
        return list(self.v[:-1]) + [self.v[-1].tilde()]


def verify_unit_row(row: UnitRow) -> bool:
    """Exact check of sum_i v_i v_i~ = 1 in canonical form."""
    total = RationalFn.zero(row.tower)
    for vi in row.v:
        if not vi.is_zero():
            total = total + vi * vi.tilde()
    return total.is_one()


@dataclass(frozen=True)
class CoronaSolution:
    h: tuple
    degree: int

    def escalated_beyond(self, d: int) -> bool:
        return self.degree > d


def solve_poly_bezout(ps: Sequence[Poly], target: Poly,
                      max_degree: int) -> tuple[list[Poly], int]:
    """Polynomials h_i of minimal degree d <= max_degree with
    sum h_i p_i = target, by escalating d and solving the coefficient
    system exactly; CoronaError when no degree works."""
    tower = ps[0].tower
    zero = tower.zero()
    m = len(ps)
    for d in range(max_degree + 1):
        width = m * (d + 1)
        height = max(max((p.degree for p in ps if not p.is_zero()), default=0) + d,
                     target.degree, 0) + 1
        matrix = [[zero] * width for _ in range(height)]
        for i, p in enumerate(ps):
            for s in range(d + 1):
                for k, c in enumerate(p.coeffs):
                    matrix[k + s][i * (d + 1) + s] = matrix[k + s][i * (d + 1) + s] + c
        rhs = [target.coeffs[r] if r <= target.degree else zero for r in range(height)]
        solution = solve_particular(matrix, rhs, zero)
        if solution is None:
            continue
        hs = [Poly(tower, solution[i * (d + 1):(i + 1) * (d + 1)]) for i in range(m)]
        return hs, d
    raise CoronaError("no polynomial solution up to degree %d; the functions share "
                      "a zero in the open unit disk" % max_degree)


def solve_corona(row: UnitRow, max_degree: Optional[int] = None) -> CoronaSolution:
    """Polynomials h_i with sum h_i v_i = 1, after clearing denominators.

    The default degree cap is a Bezout-style bound deg(Q) + max deg(p_i Q_i)
    for Q the least common denominator; escalation past degree 5 is
    reported by CoronaSolution.escalated_beyond(5).
    """
    tower = row.tower
    big_q = Poly.one(tower)
    for vi in row.v:
        g = big_q.gcd(vi.den)
        big_q = big_q * vi.den.exact_div(g)
    ps = []
    for vi in row.v:
        ps.append(vi.num * big_q.exact_div(vi.den))
    if max_degree is None:
        max_degree = big_q.degree + max(p.degree for p in ps if not p.is_zero())
    hs, degree = solve_poly_bezout(ps, big_q, max_degree)
    total = RationalFn.zero(tower)
    for h, vi in zip(hs, row.v):
        total = total + RationalFn.from_poly(h) * vi
    if not total.is_one():
        raise InternalInvariantError("corona solution does not satisfy the identity")
    return CoronaSolution(h=tuple(hs), degree=degree)


def _candidate_locations(row: UnitRow, i: int) -> list[FieldElement]:
    seen, out = set(), []
    for spec in list(row.reflected_poles[i]) + list(row.vm_disk_zeros):
        if spec.location not in seen:
            seen.add(spec.location)
            out.append(spec.location)
    return out


def build_phi_row(row: UnitRow, h: Optional[CoronaSolution]) -> PhiRow:
    """phi_i = minus part of (v_i~ - h_i)/v_m, then verification that all
    m membership conditions hold by vanishing principal parts."""
    tower = row.tower
    m = row.m
    vm = row.v[-1]
    if vm.is_zero():
        raise CompletionError("last row entry is identically zero")
    phis = []
    for i in range(m - 1):
        numerator = row.v[i].tilde()
        if h is not None:
            numerator = numerator - RationalFn.from_poly(h.h[i])
        quotient = numerator / vm
        specs = []
        for loc in _candidate_locations(row, i):
            mult = quotient.den_multiplicity(loc)
            if mult:
                specs.append(PoleSpec(loc, mult))
        _, fminus = split_plus_minus(quotient, specs)
        phis.append(fminus)
    phi_row = PhiRow(tower, m, phis)
    _check_conditions(row, phi_row)
    return phi_row


def _check_conditions(row: UnitRow, phi_row: PhiRow) -> None:
    """Principal-part vanishing of every membership condition at every
    declared in-disk point; failure means the pole lists were incomplete."""
    m = row.m
    vm = row.v[-1]
    all_locations = []
    seen = set()
    for specs in row.reflected_poles:
        for spec in specs:
            if spec.location not in seen:
                seen.add(spec.location)
                all_locations.append(spec.location)
    for spec in row.vm_disk_zeros:
        if spec.location not in seen:
            seen.add(spec.location)
            all_locations.append(spec.location)

    def analytic_at_all(fn: RationalFn, points) -> bool:
        for a in points:
            mult = fn.den_multiplicity(a)
            if mult and any(not c.is_zero() for c in fn.principal_part(a, mult)):
                return False
        return True

    for i in range(m - 1):
        condition = phi_row.phis[i].to_ratfn() * vm - row.v[i].tilde()
        if not analytic_at_all(condition, _candidate_locations(row, i)):
            raise PoleDataError("membership condition %d fails; pole annotations "
                                "are incomplete" % (i + 1))
    last = vm.tilde()
    for i in range(m - 1):
        last = last + phi_row.phis[i].to_ratfn() * row.v[i]
    if not analytic_at_all(last, all_locations):
        raise PoleDataError("final membership condition fails; pole annotations "
                            "are incomplete")


# ----------------------------------------------------------------------
# constant unitary completion

def _const_identity(tower: FieldTower, m: int):
    one, zero = tower.one(), tower.zero()
    return [[one if i == j else zero for j in range(m)] for i in range(m)]


def _const_mul(a, b, tower: FieldTower):
    m, n, k = len(a), len(b[0]), len(b)
    zero = tower.zero()
    out = [[zero] * n for _ in range(m)]
    for i in range(m):
        for j in range(n):
            acc = zero
            for t in range(k):
                acc = acc + a[i][t] * b[t][j]
            out[i][j] = acc
    return out


def _is_const_identity(a) -> bool:
    for i, row in enumerate(a):
        for j, v in enumerate(row):
            if i == j and not v.is_one():
                return False
            if i != j and not v.is_zero():
                return False
    return True


def unitary_completion_constant(c: Sequence[FieldElement]) -> RatMatrix:
    """Deterministic constant unitary with first column c, square-root
    free over the field.

    For real first coordinate the matrix is the reflection sending e1 to
    c composed with diag(1, -1, ..., -1), which reproduces the worked
    rational example; a first-row/column Cayley transform covers complex
    first coordinates; c = +-e1 short-circuits to +-I.
    """
    m = len(c)
    if m == 0:
        raise CompletionError("empty vector")
    tower = c[0].tower
    one, zero = tower.one(), tower.zero()
    norm = zero
    for ci in c:
        norm = norm + ci * ci.conj()
    if not norm.is_one():
        raise CompletionError("vector is not unit norm")

    e1_like = all(c[k].is_zero() for k in range(1, m))
    if e1_like and c[0].is_one():
        w = _const_identity(tower, m)
    elif e1_like and (-c[0]).is_one():
        w = [[-v for v in row] for row in _const_identity(tower, m)]
    elif c[0].imag_part().is_zero():
        # reflection: H = I - 2 w w*/(w*w) with w = e1 - c maps e1 to c
        w_vec = [one - c[0]] + [-c[k] for k in range(1, m)]
        s = zero
        for v in w_vec:
            s = s + v * v.conj()
        scale = (tower.from_rational(2)) / s
        w = [[(one if i == j else zero) - scale * w_vec[i] * w_vec[j].conj()
              for j in range(m)] for i in range(m)]
        for i in range(m):
            for j in range(1, m):
                w[i][j] = -w[i][j]
    else:
        # Cayley transform of a skew-Hermitian A supported on the first
        # row and column; the first equation holds automatically at unit
        # norm, the denominators need 1 + c_1 != 0, true off c = -e1
        denom = one + c[0]
        denom_c = one + c[0].conj()
        a = [[zero] * m for _ in range(m)]
        a[0][0] = (c[0].conj() - c[0]) / (denom * denom_c)
        for k in range(1, m):
            a[0][k] = c[k].conj() / denom_c
            a[k][0] = -c[k] / denom
        i_plus = [[(one if i == j else zero) + a[i][j] for j in range(m)] for i in range(m)]
        i_minus = [[(one if i == j else zero) - a[i][j] for j in range(m)] for i in range(m)]
        from .linalg import solve_square
        w = solve_square(i_plus, i_minus)

    adjoint = [[w[j][i].conj() for j in range(m)] for i in range(m)]
    if not _is_const_identity(_const_mul(w, adjoint, tower)):
        raise InternalInvariantError("completion matrix is not unitary")
    if any(w[i][0] != c[i] for i in range(m)):
        raise InternalInvariantError("completion matrix does not start with the vector")
    return RatMatrix.from_constants(tower, w)


@dataclass(frozen=True)
class CompletionResult:
    matrix: RatMatrix
    column_form: RatMatrix
    U: RatMatrix
    W: RatMatrix
    phi_row: PhiRow
    corona: Optional[CoronaSolution]
    elapsed: float


def complete(row: UnitRow, max_degree: Optional[int] = None) -> CompletionResult:
    """Paraunitary completion whose first row is exactly the input row.

    When v_m is zero-free in the disk the phi row is read off directly
    with h = 0; otherwise the corona system supplies polynomial h_i
    first.  The first-column identity of the assembled matrix is checked
    exactly and fails only when in-disk annotations were incomplete.
    """
    start = time.monotonic()
    if not verify_unit_row(row):
        raise CompletionError("row does not satisfy sum v_i v_i~ = 1")
    tower = row.tower
    m = row.m
    vm = row.v[-1]
    corona = None
    if vm.is_zero():
        if any(row.reflected_poles) or not all(vi.is_constant() for vi in row.v):
            raise CompletionError("last entry is identically zero; only constant "
                                  "rows complete without it")
        phi_row = PhiRow(tower, m, [PartialFraction.zero(tower)] * (m - 1))
    elif not row.vm_disk_zeros:
        phi_row = build_phi_row(row, None)
    else:
        corona = solve_corona(row, max_degree)
        phi_row = build_phi_row(row, corona)

    result = construct_paraunitary(phi_row)
    u = result.U

    values = []
    one = tower.one()
    for vi in row.v[:-1]:
        if vi.den.evaluate(one).is_zero():
            raise CompletionError("row entry has a pole at z = 1")
        values.append(vi.evaluate(one))
    if vm.den.evaluate(one).is_zero():
        raise CompletionError("row entry has a pole at z = 1")
    values.append(vm.evaluate(one).conj())

    w = unitary_completion_constant(values)
    v_col = u @ w

    expected_first = row.row_functions()
    for i in range(m):
        if v_col[i][0] != expected_first[i]:
            raise PoleDataError("first column of the completion does not reproduce "
                                "the row; in-disk annotations were incomplete")
    if not (v_col @ v_col.tilde()).is_identity():
        raise InternalInvariantError("completed matrix is not paraunitary")
    return CompletionResult(matrix=v_col.transpose(), column_form=v_col, U=u, W=w,
                            phi_row=phi_row, corona=corona,
                            elapsed=time.monotonic() - start)
