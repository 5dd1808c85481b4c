"""Dense exact matrices over a :class:`~steinberg.field.Field`.

Storage is an immutable row-major tuple of tuples of scalars.  Products over
a prime field run through int64 numpy (exact as long as n*(p-1)^2 < 2^63,
asserted); everything over Q stays in Fractions.  Inverse, rank, solve and
determinant all go through one exact Gauss-Jordan kernel.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .field import Field, Scalar


class DimensionMismatch(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


class NoSolution(ValueError):
    pass


class Matrix:
    __slots__ = ("field", "rows", "cols", "data", "_np", "_int", "_hash")

    def __init__(self, field: Field, rows: Sequence[Sequence[Scalar]]):
        self.field = field
        of = field.of
        self.data: tuple = tuple(tuple(of(v) for v in r) for r in rows)
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(r) != self.cols for r in self.data):
            raise DimensionMismatch("ragged rows")
        self._np = None
        self._int = None
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        zero = field.zero
        return cls(field, [[zero] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, field: Field, entries: Iterable[Scalar]) -> "Matrix":
        entries = [field.of(e) for e in entries]
        n = len(entries)
        zero = field.zero
        return cls(field, [[entries[i] if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, field: Field, entries: Iterable[Scalar]) -> "Matrix":
        return cls(field, [[e] for e in entries])

    # -- trivia --------------------------------------------------------------

    def __getitem__(self, ij: tuple) -> Scalar:
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def to_lists(self) -> list:
        return [list(r) for r in self.data]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.data == other.data
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in r) for r in self.data)
        return f"Matrix({self.field}, [{body}])"

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_identity(self) -> bool:
        f = self.field
        return self.is_square and self == Matrix.identity(f, self.rows)

    def is_zero(self) -> bool:
        zero = self.field.zero
        return all(v == zero for r in self.data for v in r)

    # -- arithmetic ----------------------------------------------------------

    def _as_np(self) -> np.ndarray:
        if self._np is None:
            self._np = np.array(self.data, dtype=np.int64)
        return self._np

    def _as_int(self) -> tuple:
        """(integer matrix, common denominator) view of a rational matrix."""
        if self._int is None:
            den = math.lcm(*(v.denominator for r in self.data for v in r)) or 1
            self._int = (
                [[int(v * den) for v in r] for r in self.data],
                den,
            )
        return self._int

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise DimensionMismatch("fields differ")
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        p = self.field.p
        if p is not None:
            # exact in int64: entries < p, inner dimension small
            assert self.cols * (p - 1) * (p - 1) < 2**63
            out = (self._as_np() @ other._as_np()) % p
            return Matrix(self.field, out.tolist())
        # rationals: one integer matmul over the common denominators
        na, da = self._as_int()
        nb, db = other._as_int()
        bt = list(zip(*nb))
        den = da * db
        return Matrix(
            self.field,
            [
                [Fraction(sum(a * b for a, b in zip(row, col)), den) for col in bt]
                for row in na
            ],
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        add = self.field.add
        return Matrix(self.field, [
            [add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)
        ])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        sub = self.field.sub
        return Matrix(self.field, [
            [sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)
        ])

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix(self.field, [[neg(a) for a in r] for r in self.data])

    def scale(self, c: Scalar) -> "Matrix":
        mul = self.field.mul
        c = self.field.of(c)
        return Matrix(self.field, [[mul(c, a) for a in r] for r in self.data])

    def _same_shape(self, other: "Matrix") -> None:
        if self.field != other.field or (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape or field mismatch")

    def transpose(self) -> "Matrix":
        return Matrix(self.field, list(zip(*self.data))) if self.data else self

    # -- exact Gauss-Jordan kernel --------------------------------------------

    def _reduce(self, aug: list) -> tuple:
        """Row-reduce ``aug`` in place; return (pivot column list, det factor).

        ``det`` only means something when the left block is square and fully
        pivoted; callers that need it track the swaps folded in here.
        """
        f = self.field
        m = len(aug)
        n = self.cols
        pivots = []
        det = f.one
        r = 0
        for c in range(n):
            pr = next((k for k in range(r, m) if aug[k][c] != f.zero), None)
            if pr is None:
                continue
            if pr != r:
                aug[r], aug[pr] = aug[pr], aug[r]
                det = f.neg(det)
            inv = f.inv(aug[r][c])
            det = f.mul(det, aug[r][c])
            aug[r] = [f.mul(inv, v) for v in aug[r]]
            for k in range(m):
                if k != r and aug[k][c] != f.zero:
                    t = aug[k][c]
                    aug[k] = [f.sub(a, f.mul(t, b)) for a, b in zip(aug[k], aug[r])]
            pivots.append(c)
            r += 1
            if r == m:
                break
        return pivots, det

    def rank(self) -> int:
        pivots, _ = self._reduce(self.to_lists())
        return len(pivots)

    def rref(self) -> "Matrix":
        """Reduced row-echelon form."""
        rows = self.to_lists()
        self._reduce(rows)
        return Matrix(self.field, rows)

    def det(self) -> Scalar:
        if not self.is_square:
            raise DimensionMismatch("determinant of non-square matrix")
        aug = self.to_lists()
        pivots, det = self._reduce(aug)
        return det if len(pivots) == self.rows else self.field.zero

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise DimensionMismatch("inverse of non-square matrix")
        f = self.field
        n = self.rows
        ident = Matrix.identity(f, n)
        aug = [list(r) + list(e) for r, e in zip(self.data, ident.data)]
        pivots, _ = self._reduce(aug)
        if len(pivots) != n:
            raise SingularMatrix("matrix is singular")
        return Matrix(f, [r[n:] for r in aug])

    def solve(self, b: Sequence[Scalar]) -> tuple:
        """One preimage of ``b`` under this matrix, or :class:`NoSolution`."""
        f = self.field
        if len(b) != self.rows:
            raise DimensionMismatch("rhs length mismatch")
        b = [f.of(v) for v in b]
        aug = [list(r) + [v] for r, v in zip(self.data, b)]
        pivots, _ = self._reduce(aug)
        # consistency: a pivot in the augmented column means no solution
        for row in aug:
            if all(v == f.zero for v in row[:-1]) and row[-1] != f.zero:
                raise NoSolution("inconsistent system")
        x = [f.zero] * self.cols
        for r, c in enumerate(pivots):
            x[c] = aug[r][-1]
        return tuple(x)

    # -- blocks -------------------------------------------------------------

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [[self.data[i][j] for j in col_idx] for i in row_idx])

    @classmethod
    def assemble(cls, field: Field, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Stitch a grid of blocks into one matrix."""
        rows: list = []
        for band in grid:
            height = band[0].rows
            if any(blk.rows != height for blk in band):
                raise DimensionMismatch("block heights differ within a band")
            for i in range(height):
                rows.append([v for blk in band for v in blk.data[i]])
        return cls(field, rows)
