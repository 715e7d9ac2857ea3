"""Series powers and the transfer matrices mapping reflected-pole
coefficients to Taylor coefficients.

For an in-disk pole b, the reflected building block is
f(z) = z / (1 - conj(b) z); the L x N transfer matrix holds the Taylor
coefficients at an in-disk point a of f^1, ..., f^N.  Applying it to the
conjugated pole coefficients of u~(z) = sum_l c_l / (z - b)^l yields the
Taylor coefficients of u at a.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .fields import FieldElement
from .ratfun import Poly, RationalFn


def series_power(base_coeffs: Sequence[FieldElement], l: int, count: int) -> list[FieldElement]:
    """First `count` coefficients of the l-th power of a power series,
    by the convolution recursion f_{l+1,k} = sum_j f_{l,k-j} f_{1,j}."""
    if l < 0:
        raise ValueError("negative power")
    if count < 1:
        raise ValueError("count must be positive")
    tower = base_coeffs[0].tower if base_coeffs else None
    if tower is None:
        raise ValueError("empty base series")
    zero = tower.zero()
    base = list(base_coeffs[:count]) + [zero] * max(0, count - len(base_coeffs))
    cur = [tower.one()] + [zero] * (count - 1)
    for _ in range(l):
        nxt = []
        for k in range(count):
            acc = zero
            for j in range(k + 1):
                if not base[j].is_zero() and not cur[k - j].is_zero():
                    acc = acc + cur[k - j] * base[j]
            nxt.append(acc)
        cur = nxt
    return cur


@dataclass(frozen=True)
class TransferMatrix:
    """Entries [k][l-1] = f_lk^{ab}: k-th Taylor coefficient at a of the
    l-th power of z/(1 - conj(b) z); depends only on (a, b, L, N)."""

    a: FieldElement
    b: FieldElement
    L: int
    N: int
    entries: tuple

    def apply(self, reflected_coeffs: Sequence[FieldElement]) -> list[FieldElement]:
        if len(reflected_coeffs) != self.N:
            raise ValueError("expected %d reflected coefficients, got %d"
                             % (self.N, len(reflected_coeffs)))
        out = []
        for k in range(self.L):
            acc = self.a.tower.zero()
            for l in range(self.N):
                acc = acc + self.entries[k][l] * reflected_coeffs[l]
            out.append(acc)
        return out


@lru_cache(maxsize=None)
def _transfer_entries(a: FieldElement, b: FieldElement, L: int, N: int) -> tuple:
    tower = a.tower
    # f(z) = z / (1 - conj(b) z) expanded at a by exact series division;
    # the closed-form first entry a b*/(b* - a) is checked in tests.
    num = Poly(tower, (0, 1))
    den = Poly(tower, (tower.one(), -b.conj()))
    f = RationalFn(num, den)
    base = f.taylor_coeffs(a, L)
    rows = [[None] * N for _ in range(L)]
    power = [tower.one()] + [tower.zero()] * (L - 1)
    for l in range(1, N + 1):
        nxt = []
        for k in range(L):
            acc = tower.zero()
            for j in range(k + 1):
                acc = acc + power[k - j] * base[j]
            nxt.append(acc)
        power = nxt
        for k in range(L):
            rows[k][l - 1] = power[k]
    return tuple(tuple(r) for r in rows)


def transfer_matrix(a: FieldElement, b: FieldElement, L: int, N: int) -> TransferMatrix:
    """Transfer matrix A^{ab}_{LN} for in-disk a and b."""
    if L < 1 or N < 1:
        raise ValueError("transfer matrix dimensions must be positive")
    return TransferMatrix(a, b, L, N, _transfer_entries(a, b, L, N))


def apply_transfer(T: TransferMatrix, reflected_coeffs: Sequence[FieldElement]) -> list[FieldElement]:
    """Taylor coefficients at T.a of sum_l conj(c_l) z^l/(1-conj(b)z)^l,
    where the caller passes the already-conjugated c_l."""
    return T.apply(list(reflected_coeffs))
