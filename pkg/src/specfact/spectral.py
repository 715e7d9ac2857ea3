"""Exact spectral factorization from a lower-upper triangular factor.

Given the lower triangular M with scalar spectral factors on the diagonal
(Theorem's hypothesis: M and the in-disk poles of its strictly-lower
entries are known exactly), the spectral factor is assembled as
S+ = M U_2 ... U_r, one paraunitary stage per leading principal block.
M is never computed from S here; doing so would require scalar spectral
factorization and root isolation, which breaks exactness.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .construct import PhiRow, construct_paraunitary
from .errors import FactorizationError, InternalInvariantError, PoleDataError
from .fields import FieldElement
from .matrices import RatMatrix
from .ratfun import PoleSpec, RationalFn, split_plus_minus


class TriangularFactor:
    """Lower triangular factor plus the declared in-disk poles of its
    strictly-lower entries, validated by exact division."""

    def __init__(self, matrix: RatMatrix, pole_data: Mapping[tuple, Sequence[PoleSpec]]):
        if matrix.nrows != matrix.ncols:
            raise FactorizationError("triangular factor must be square")
        r = matrix.nrows
        for i in range(r):
            for j in range(i + 1, r):
                if not matrix[i][j].is_zero():
                    raise FactorizationError("entry (%d,%d) above the diagonal is nonzero"
                                             % (i + 1, j + 1))
            if matrix[i][i].is_zero():
                raise FactorizationError("diagonal entry (%d,%d) is zero" % (i + 1, i + 1))
        self.matrix = matrix
        self.tower = matrix.tower
        data = {}
        for (i, j), specs in pole_data.items():
            if not (1 <= j < i <= r):
                raise PoleDataError("pole data for (%d,%d) is not strictly lower" % (i, j))
            entry = matrix[i - 1][j - 1]
            for spec in specs:
                mult = entry.den_multiplicity(spec.location)
                if mult != spec.order:
                    raise PoleDataError(
                        "declared order %d at pole of entry (%d,%d) but denominator "
                        "carries multiplicity %d" % (spec.order, i, j, mult))
            data[(i, j)] = tuple(specs)
        self.pole_data = data

    def declared_locations(self) -> list[FieldElement]:
        seen, out = set(), []
        for specs in self.pole_data.values():
            for spec in specs:
                if spec.location not in seen:
                    seen.add(spec.location)
                    out.append(spec.location)
        return out


def split_bottom_row(m_prev: RatMatrix, m: int, pole_data: Iterable[FieldElement]):
    """Decompose the stage-m bottom-row ratios zeta_i / f_m+ into their
    disk and analytic parts.

    `pole_data` lists every candidate in-disk pole location; actual
    multiplicities are read off the canonical denominators by exact
    division, so orders may legitimately exceed the original annotations
    after earlier stages have mixed entries.
    """
    tower = m_prev.tower
    f_m = m_prev[m - 1][m - 1]
    if f_m.is_zero():
        raise FactorizationError("diagonal entry at stage %d is zero" % m)
    phis = []
    plus_parts = []
    for i in range(m - 1):
        psi = m_prev[m - 1][i] / f_m
        specs = []
        for loc in pole_data:
            mult = psi.den_multiplicity(loc)
            if mult:
                specs.append(PoleSpec(loc, mult))
        fplus, fminus = split_plus_minus(psi, specs)
        phis.append(fminus)
        plus_parts.append(fplus)
    return PhiRow(tower, m, phis), plus_parts


@dataclass(frozen=True)
class FactorizationResult:
    s_plus: RatMatrix
    stage_matrices: tuple
    stage_results: tuple
    certificate: dict
    elapsed: float


def _embed_stage(u: RatMatrix, r: int) -> RatMatrix:
    m = u.nrows
    out = RatMatrix.identity(u.tower, r)
    rows = [list(row) for row in out.entries]
    for i in range(m):
        for j in range(m):
            rows[i][j] = u[i][j]
    return RatMatrix(u.tower, rows)


def factorize(tf: TriangularFactor, expect_polynomial: bool = False) -> FactorizationResult:
    """Run the stage recursion m = 2..r and certify the result.

    The certificate identities S+ S+~ = M M~ and det S+ = det M hold for
    any paraunitary stages, so their failure traps bugs, not bad input;
    a failed polynomiality expectation, in contrast, signals that M was
    not a true lower-upper factor of a polynomial matrix.
    """
    start = time.monotonic()
    matrix = tf.matrix
    r = matrix.nrows
    candidates = tf.declared_locations()
    current = matrix
    stages = []
    results = []
    for m in range(2, r + 1):
        phi_row, _ = split_bottom_row(current, m, candidates)
        res = construct_paraunitary(phi_row)
        stage = _embed_stage(res.U, r)
        current = current @ stage
        stages.append(stage)
        results.append(res)
        for spec in res.layout.merged:
            if spec.location not in candidates:
                candidates.append(spec.location)
    s_plus = current

    gram_ok = (s_plus @ s_plus.tilde()) == (matrix @ matrix.tilde())
    det_ok = s_plus.det() == matrix.det()
    if not (gram_ok and det_ok):
        raise InternalInvariantError("factorization certificate failed")
    certificate = {"gram_identity": gram_ok, "det_identity": det_ok,
                   "normalization": "S+(1) = M(1)"}
    if expect_polynomial:
        for i in range(r):
            for j in range(r):
                if not s_plus[i][j].is_polynomial():
                    raise FactorizationError(
                        "entry (%d,%d) of the spectral factor is not a polynomial; "
                        "the input was not a lower-upper factor of a polynomial matrix"
                        % (i + 1, j + 1))
        certificate["polynomial"] = True
    return FactorizationResult(s_plus=s_plus, stage_matrices=tuple(stages),
                               stage_results=tuple(results), certificate=certificate,
                               elapsed=time.monotonic() - start)


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    mismatches: tuple

    def describe(self) -> list[str]:
        from .expressions import render_ratfn
        lines = []
        for i, j, expected, actual in self.mismatches:
            lines.append("entry (%d,%d): expected %s, got %s, difference %s"
                         % (i + 1, j + 1, render_ratfn(expected), render_ratfn(actual),
                            render_ratfn(expected - actual)))
        return lines


def verify_against_S(result: FactorizationResult, s: RatMatrix) -> VerificationReport:
    """Entrywise exact check of S = S+ S+~ against a supplied S."""
    product = result.s_plus @ result.s_plus.tilde()
    if s.shape != product.shape:
        raise FactorizationError("supplied S has shape %s, expected %s"
                                 % (s.shape, product.shape))
    mismatches = []
    for i in range(s.nrows):
        for j in range(s.ncols):
            if product[i][j] != s[i][j]:
                mismatches.append((i, j, s[i][j], product[i][j]))
    return VerificationReport(ok=not mismatches, mismatches=tuple(mismatches))
