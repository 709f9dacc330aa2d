"""Exact matrices over Q and over Q[t, 1/t]."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exactnum import ONE, ZERO, LaurentPoly, canonical_or_zero, laurent_gcd


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must be rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), cols, tuple(Fraction(x) for r in rows for x in r))

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]


@dataclass(frozen=True)
class PolyMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must be rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), cols, tuple(_as_poly(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls.from_rows([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    a = self[i, k]
                    if a:
                        acc = acc + a * other[k, j]
                out.append(acc)
        return PolyMatrix(self.rows, other.cols, tuple(out))

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return PolyMatrix(self.rows, self.cols,
                          tuple(a - b for a, b in zip(self.entries, other.entries)))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(len(rows), len(cols),
                          tuple(self[i, j] for i in rows for j in cols))


def _as_poly(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.constant(x)


def det_poly_matrix(m: PolyMatrix) -> LaurentPoly:
    """Bareiss fraction-free elimination with exact Laurent divisions."""
    if m.rows != m.cols:
        raise ValueError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return ONE
    a = m.to_rows()
    sign = 1
    prev = ONE
    for k in range(n - 1):
        pivot = next((i for i in range(k, n) if a[i][k]), None)
        if pivot is None:
            return ZERO
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = akk * a[i][j] - aik * a[k][j]
                a[i][j] = num.exact_div(prev) if num else ZERO
            a[i][k] = ZERO
        prev = akk
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def det_cofactor(m: PolyMatrix) -> LaurentPoly:
    """Laplace expansion along the first row; for cross-checking small cases."""
    if m.rows != m.cols:
        raise ValueError("non-square matrix")
    n = m.rows
    if n == 0:
        return ONE
    if n == 1:
        return m[0, 0]
    total = ZERO
    for j in range(n):
        if not m[0, j]:
            continue
        minor = m.submatrix(range(1, n), [c for c in range(n) if c != j])
        term = m[0, j] * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def rank_rational(m: RationalMatrix) -> int:
    rows = m.to_rows()
    rank = 0
    for col in range(m.cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col] / pr[col]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def minors(m: PolyMatrix, k: int):
    """Yield every k x k minor, rows and columns in lexicographic order."""
    for rs in combinations(range(m.rows), k):
        for cs in combinations(range(m.cols), k):
            yield det_poly_matrix(m.submatrix(rs, cs))


def minors_gcd(m: PolyMatrix, k: int) -> LaurentPoly:
    """Canonical gcd of all k x k minors (the (n-k)-th elementary ideal generator)."""
    if k < 0 or k > min(m.rows, m.cols):
        raise ValueError(f"no {k}x{k} minors in a {m.rows}x{m.cols} matrix")
    if k == 0:
        return ONE
    g = ZERO
    for d in minors(m, k):
        g = laurent_gcd(g, d)
        if g == ONE:
            break
    return canonical_or_zero(g)
