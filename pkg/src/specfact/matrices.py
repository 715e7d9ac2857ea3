"""Matrices of rational functions with the operations the algorithms
need: product, tilde (conjugate transpose under the involution), exact
determinant, pointwise evaluation."""

from __future__ import annotations

from typing import Callable, Sequence

from .fields import FieldElement, FieldTower
from .linalg import determinant
from .ratfun import RationalFn


class RatMatrix:
    """Immutable matrix of RationalFn entries."""

    __slots__ = ("tower", "entries", "nrows", "ncols")

    def __init__(self, tower: FieldTower, entries: Sequence[Sequence[RationalFn]]):
        self.tower = tower
        self.entries = tuple(tuple(row) for row in entries)
        self.nrows = len(self.entries)
        self.ncols = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix")

    @staticmethod
    def identity(tower: FieldTower, n: int) -> "RatMatrix":
        one, zero = RationalFn.one(tower), RationalFn.zero(tower)
        return RatMatrix(tower, [[one if i == j else zero for j in range(n)]
                                 for i in range(n)])

    @staticmethod
    def from_constants(tower: FieldTower, values: Sequence[Sequence[FieldElement]]) -> "RatMatrix":
        return RatMatrix(tower, [[RationalFn.constant(v) for v in row] for row in values])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        return self.entries[idx]

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = RationalFn.zero(self.tower)
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RatMatrix(self.tower, out)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.tower, [[self.entries[i][j] for i in range(self.nrows)]
                                      for j in range(self.ncols)])

    def tilde(self) -> "RatMatrix":
        """Entrywise involution combined with transposition: F~ = [F_ji~]."""
        return RatMatrix(self.tower, [[self.entries[i][j].tilde() for i in range(self.nrows)]
                                      for j in range(self.ncols)])

    def det(self) -> RationalFn:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return determinant(self.entries, RationalFn.one(self.tower))

    def at(self, point: FieldElement) -> list[list[FieldElement]]:
        return [[entry.evaluate(point) for entry in row] for row in self.entries]

    def map(self, fn: Callable[[RationalFn], RationalFn]) -> "RatMatrix":
        return RatMatrix(self.tower, [[fn(e) for e in row] for row in self.entries])

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        for i in range(self.nrows):
            for j in range(self.ncols):
                e = self.entries[i][j]
                if i == j and not e.is_one():
                    return False
                if i != j and not e.is_zero():
                    return False
        return True

    def __repr__(self) -> str:
        from .expressions import render_ratfn
        rows = "; ".join(", ".join(render_ratfn(e) for e in row) for row in self.entries)
        return "RatMatrix[%s]" % rows
