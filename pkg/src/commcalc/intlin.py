"""Exact integer linear algebra: Smith normal form, rank, row independence."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Matrix = list[list[int]]


def as_matrix(rows: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    m = [[int(v) for v in row] for row in rows]
    if cols is None:
        cols = len(m[0]) if m else 0
    for row in m:
        if len(row) != cols:
            raise ValueError("ragged matrix")
    return m


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    if inner is None:
        inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def determinant(m: Matrix) -> int:
    """Bareiss fraction-free determinant."""
    n = len(m)
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ M @ right == diagonal(invariant_factors)`` padded with zeros."""

    invariant_factors: tuple[int, ...]
    left: Matrix
    right: Matrix
    rows: int
    cols: int

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def diagonal(self) -> Matrix:
        d = [[0] * self.cols for _ in range(self.rows)]
        for i, f in enumerate(self.invariant_factors):
            d[i][i] = f
        return d

    def left_kernel(self) -> list[list[int]]:
        """Basis of integer row vectors ``v`` with ``v @ M == 0``."""
        return [row[:] for row in self.left[self.rank:]]


def _nearest_quotient(x: int, p: int) -> int:
    # quotient whose remainder has absolute value at most |p|/2
    q, r = divmod(x, p)
    if 2 * abs(r) > abs(p):
        q += 1
    return q


def smith_normal_form(rows: Sequence[Sequence[int]], cols: int | None = None) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Pivots on the entry of least absolute value in the remaining block and
    clears its row and column by Euclidean steps.
    """
    a = as_matrix(rows, cols)
    m = len(a)
    n = cols if cols is not None else (len(a[0]) if a else 0)
    left = identity(m)
    right = identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        if q:
            a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
            left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, q):
        if q:
            for row in a:
                row[dst] += q * row[src]
            for row in right:
                row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            # move the smallest entry of row t and column t onto the diagonal
            cands = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
            _, pi, pj = min(cands)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            for i in range(t + 1, m):
                add_row(t, i, -_nearest_quotient(a[i][t], p))
            for j in range(t + 1, n):
                add_col(t, j, -_nearest_quotient(a[t][j], p))
            if any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n)):
                continue
            # divisibility: fold any entry not divisible by the pivot into row t
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        t += 1

    factors = tuple(a[i][i] for i in range(min(m, n)) if a[i][i])
    return SmithDecomposition(factors, left, right, m, n)


def rank(rows: Sequence[Sequence[int]], cols: int | None = None) -> int:
    return smith_normal_form(rows, cols).rank


def rows_independent(rows: Sequence[Sequence[int]], cols: int | None = None) -> bool:
    """True iff the rows are linearly independent over the integers."""
    rows = list(rows)
    if not rows:
        return True
    return rank(rows, cols) == len(rows)


def row_dependency(rows: Sequence[Sequence[int]], cols: int | None = None) -> list[int] | None:
    """A nonzero integer vector ``v`` with ``v @ rows == 0``, or None if independent."""
    rows = list(rows)
    if not rows:
        return None
    kernel = smith_normal_form(rows, cols).left_kernel()
    return kernel[0] if kernel else None


def parse_matrix(text: str) -> Matrix:
    """``"1,2;3,4"`` -> ``[[1, 2], [3, 4]]``; empty text is the 0x0 matrix."""
    text = text.strip()
    if not text:
        return []
    return as_matrix([[int(v) for v in row.replace(",", " ").split()] for row in text.split(";")])
