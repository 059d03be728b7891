"""Dense matrices over the integers: Smith normal form, determinant, minors.

Entries are Python ints, so nothing overflows. Matrices are immutable;
every algorithm copies rows into scratch lists before touching them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


class MatrixParseError(ValueError):
    """Raised when matrix text does not follow the ``rows cols`` format."""


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> IntMatrix:
        data = [[int(x) for x in row] for row in rows]
        n_rows = len(data)
        n_cols = len(data[0]) if data else 0
        if any(len(row) != n_cols for row in data):
            raise ValueError("ragged rows")
        return cls(n_rows, n_cols, tuple(x for row in data for x in row))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(index)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(zip(*self.to_rows())) if self.rows else IntMatrix(self.cols, 0, ())

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        return multiply(self, other)

    def __str__(self) -> str:
        return format_matrix(self)


def identity(n: int) -> IntMatrix:
    return IntMatrix.from_rows([[int(i == j) for j in range(n)] for i in range(n)])


def zeros(rows: int, cols: int) -> IntMatrix:
    return IntMatrix(rows, cols, (0,) * (rows * cols))


def diagonal_matrix(diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
    rows = len(diag) if rows is None else rows
    cols = len(diag) if cols is None else cols
    data = [[0] * cols for _ in range(rows)]
    for i, d in enumerate(diag):
        data[i][i] = d
    return IntMatrix.from_rows(data) if rows else IntMatrix(0, cols, ())


def multiply(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    b_cols = list(zip(*b.to_rows())) if b.rows else [()] * b.cols
    out = []
    for i in range(a.rows):
        row = a.row(i)
        out.append([sum(x * y for x, y in zip(row, col)) for col in b_cols])
    if not out:
        return IntMatrix(0, b.cols, ())
    return IntMatrix.from_rows(out)


def submatrix(a: IntMatrix, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
    """Matrix of ``a`` restricted to the given row and column indices."""
    return IntMatrix(
        len(rows), len(cols), tuple(a[i, j] for i in rows for j in cols)
    )


def delete_row_col(a: IntMatrix, i: int, j: int) -> IntMatrix:
    return submatrix(
        a,
        [r for r in range(a.rows) if r != i],
        [c for c in range(a.cols) if c != j],
    )


def block_diagonal(blocks: Sequence[IntMatrix]) -> IntMatrix:
    for b in blocks:
        if not b.is_square:
            raise ValueError(f"block of shape {b.shape} is not square")
    n = sum(b.rows for b in blocks)
    data = [[0] * n for _ in range(n)]
    offset = 0
    for b in blocks:
        for i in range(b.rows):
            data[offset + i][offset:offset + b.cols] = b.row(i)
        offset += b.rows
    return IntMatrix.from_rows(data) if n else IntMatrix(0, 0, ())


def gcd_all(values: Iterable[int]) -> int:
    """Nonnegative gcd of any number of integers; gcd() of nothing or all zeros is 0."""
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g


# ---------------------------------------------------------------------------
# determinant


def _bareiss(rows: list[list[int]]) -> int:
    """Fraction-free elimination in place; returns the determinant."""
    n = len(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        row_k = rows[k]
        for i in range(k + 1, n):
            row_i = rows[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                row_i[j] = (pivot * row_i[j] - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * rows[n - 1][n - 1] if n else 1


def determinant(a: IntMatrix) -> int:
    if not a.is_square:
        raise ValueError(f"determinant of non-square {a.shape} matrix")
    return _bareiss(a.to_rows())


def is_unimodular(p: IntMatrix) -> bool:
    return p.is_square and abs(determinant(p)) == 1


def minors_gcd(a: IntMatrix, k: int) -> int:
    """gcd of all k x k minors of ``a``.

    Enumerates every minor, so this is only meant for small matrices; it
    serves as an oracle for the Smith normal form.
    """
    if not 1 <= k <= min(a.rows, a.cols):
        raise ValueError(f"minor size {k} out of range for {a.shape} matrix")
    rows = a.to_rows()
    g = 0
    for ri in combinations(range(a.rows), k):
        for ci in combinations(range(a.cols), k):
            g = math.gcd(g, _bareiss([[rows[i][j] for j in ci] for i in ri]))
            if g == 1:
                return 1
    return g


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ A @ right`` is the diagonal matrix carrying ``diag``."""

    diag: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix
    source_dims: tuple[int, int]

    def diagonal_matrix(self) -> IntMatrix:
        return diagonal_matrix(self.diag, *self.source_dims)

    def verify(self, a: IntMatrix) -> bool:
        """Check every defining property against the source matrix ``a``."""
        if a.shape != self.source_dims:
            return False
        if any(d < 0 for d in self.diag):
            return False
        for x, y in zip(self.diag, self.diag[1:]):
            if x == 0 and y != 0:
                return False
            if x != 0 and y % x:
                return False
        return (
            is_unimodular(self.left)
            and is_unimodular(self.right)
            and self.left @ a @ self.right == self.diagonal_matrix()
        )


class _Reducer:
    """Scratch state for diagonalizing a matrix with optional transform tracking.

    ``left`` accumulates row operations. ``right_t`` holds the transpose of
    the right transform so column operations become row updates.
    """

    def __init__(self, a: IntMatrix, track: bool):
        self.m = a.to_rows()
        self.nr, self.nc = a.shape
        self.track = track
        if track:
            self.left = identity(self.nr).to_rows()
            self.right_t = identity(self.nc).to_rows()

    # elementary operations -------------------------------------------------

    def swap_rows(self, i: int, j: int) -> None:
        if i != j:
            self.m[i], self.m[j] = self.m[j], self.m[i]
            if self.track:
                self.left[i], self.left[j] = self.left[j], self.left[i]

    def swap_cols(self, i: int, j: int) -> None:
        if i != j:
            for row in self.m:
                row[i], row[j] = row[j], row[i]
            if self.track:
                self.right_t[i], self.right_t[j] = self.right_t[j], self.right_t[i]

    def add_row(self, dst: int, src: int, q: int, start: int) -> None:
        """row[dst] -= q * row[src]; columns before ``start`` are known zero in src."""
        rd, rs = self.m[dst], self.m[src]
        for k in range(start, self.nc):
            if rs[k]:
                rd[k] -= q * rs[k]
        if self.track:
            ld, ls = self.left[dst], self.left[src]
            for k in range(self.nr):
                if ls[k]:
                    ld[k] -= q * ls[k]

    def add_col(self, dst: int, src: int, q: int, start: int) -> None:
        """col[dst] -= q * col[src]; rows before ``start`` are known zero in src."""
        for k in range(start, self.nr):
            row = self.m[k]
            if row[src]:
                row[dst] -= q * row[src]
        if self.track:
            rd, rs = self.right_t[dst], self.right_t[src]
            for k in range(self.nc):
                if rs[k]:
                    rd[k] -= q * rs[k]

    def negate_row(self, i: int) -> None:
        self.m[i] = [-x for x in self.m[i]]
        if self.track:
            self.left[i] = [-x for x in self.left[i]]

    # elimination -------------------------------------------------------------

    def _min_entry(self, t: int) -> tuple[int, int] | None:
        # smallest |value|, then lowest row, then lowest column
        best = None
        best_abs = 0
        for i in range(t, self.nr):
            row = self.m[i]
            for j in range(t, self.nc):
                x = row[j]
                if x:
                    ax = x if x > 0 else -x
                    if best is None or ax < best_abs:
                        best, best_abs = (i, j), ax
                        if ax == 1:
                            return best
        return best

    def _min_on_cross(self, t: int) -> tuple[int, int]:
        """Smallest nonzero entry in row t or column t (beyond the pivot)."""
        best = (t, t)
        best_abs = abs(self.m[t][t])
        for i in range(t + 1, self.nr):
            x = self.m[i][t]
            if x and abs(x) < best_abs:
                best, best_abs = (i, t), abs(x)
        row = self.m[t]
        for j in range(t + 1, self.nc):
            x = row[j]
            if x and abs(x) < best_abs:
                best, best_abs = (t, j), abs(x)
        return best

    def diagonalize(self) -> None:
        for t in range(min(self.nr, self.nc)):
            pos = self._min_entry(t)
            if pos is None:
                return
            self.swap_rows(t, pos[0])
            self.swap_cols(t, pos[1])
            while True:
                p = self.m[t][t]
                clean = True
                for i in range(t + 1, self.nr):
                    x = self.m[i][t]
                    if x:
                        self.add_row(i, t, x // p, t)
                        if self.m[i][t]:
                            clean = False
                row = self.m[t]
                for j in range(t + 1, self.nc):
                    x = row[j]
                    if x:
                        self.add_col(j, t, x // p, t)
                        if row[j]:
                            clean = False
                if clean:
                    break
                i, j = self._min_on_cross(t)
                self.swap_rows(t, i)
                self.swap_cols(t, j)

    def normalize(self) -> list[int]:
        """Make the diagonal nonnegative, push zeros last, enforce divisibility."""
        k = min(self.nr, self.nc)
        for i in range(k):
            if self.m[i][i] < 0:
                self.negate_row(i)
        # stable partition: nonzero entries first
        order = [i for i in range(k) if self.m[i][i]] + [i for i in range(k) if not self.m[i][i]]
        if order != list(range(k)):
            self._permute_diagonal(order)
        diag = [self.m[i][i] for i in range(k)]
        nonzero = sum(1 for d in diag if d)
        for i in range(nonzero):
            for j in range(i + 1, nonzero):
                a, b = diag[i], diag[j]
                if b % a:
                    diag[i], diag[j] = self._merge(i, j, a, b)
        for i in range(k):
            self.m[i][i] = diag[i]
        return diag

    def _permute_diagonal(self, order: list[int]) -> None:
        # apply the same permutation to the leading k rows and columns
        k = len(order)
        self.m[:k] = [self.m[i] for i in order]
        for row in self.m:
            row[:k] = [row[i] for i in order]
        if self.track:
            self.left[:k] = [self.left[i] for i in order]
            self.right_t[:k] = [self.right_t[i] for i in order]

    def _merge(self, i: int, j: int, a: int, b: int) -> tuple[int, int]:
        """diag(a, b) -> diag(gcd, lcm) at positions i, j via 2x2 unimodular steps."""
        g, x, y = _xgcd(a, b)
        if self.track:
            # left rows:  [x, y; -b/g, a/g]     right cols: [1, -y*b/g; 1, x*a/g]
            li, lj = self.left[i], self.left[j]
            ag, bg = a // g, b // g
            self.left[i] = [x * p + y * q for p, q in zip(li, lj)]
            self.left[j] = [-bg * p + ag * q for p, q in zip(li, lj)]
            ri, rj = self.right_t[i], self.right_t[j]
            self.right_t[i] = [p + q for p, q in zip(ri, rj)]
            self.right_t[j] = [-y * bg * p + x * ag * q for p, q in zip(ri, rj)]
        return g, a // g * b


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form of ``a`` with unimodular witnesses.

    Returns ``SmithDecomposition(diag, left, right)`` with ``left @ a @ right``
    diagonal, entries nonnegative, zeros trailing and each nonzero entry
    dividing the next.

    >>> smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]])).diag
    (2, 4)
    """
    r = _Reducer(a, track=True)
    r.diagonalize()
    diag = r.normalize()
    return SmithDecomposition(
        diag=tuple(diag),
        left=IntMatrix.from_rows(r.left) if a.rows else IntMatrix(0, 0, ()),
        right=IntMatrix.from_rows(r.right_t).transpose() if a.cols else IntMatrix(0, 0, ()),
        source_dims=a.shape,
    )


def smith_diagonal(a: IntMatrix) -> tuple[int, ...]:
    """Invariant factors of ``a`` only; skips building the transforms."""
    r = _Reducer(a, track=False)
    r.diagonalize()
    return tuple(r.normalize())


def equivalent(a: IntMatrix, b: IntMatrix) -> bool:
    return a.shape == b.shape and smith_diagonal(a) == smith_diagonal(b)


# ---------------------------------------------------------------------------
# text format


def parse_matrix(text: str) -> IntMatrix:
    """Parse ``rows cols`` followed by ``rows`` lines of integers."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    numbered = [(n, ln) for n, ln in enumerate(lines, 1) if ln]
    if not numbered:
        raise MatrixParseError("empty matrix file")
    head_no, head = numbered[0]
    try:
        rows, cols = (int(tok) for tok in head.split())
    except ValueError:
        raise MatrixParseError(f"line {head_no}: expected 'rows cols'") from None
    if rows < 1 or cols < 1:
        raise MatrixParseError(f"line {head_no}: dimensions must be positive")
    body = numbered[1:]
    if len(body) != rows:
        raise MatrixParseError(f"expected {rows} matrix rows, found {len(body)}")
    data = []
    for line_no, ln in body:
        try:
            values = [int(tok) for tok in ln.split()]
        except ValueError:
            raise MatrixParseError(f"line {line_no}: non-integer entry") from None
        if len(values) != cols:
            raise MatrixParseError(f"line {line_no}: expected {cols} entries, got {len(values)}")
        data.append(values)
    return IntMatrix.from_rows(data)


def format_matrix(a: IntMatrix) -> str:
    lines = [f"{a.rows} {a.cols}"]
    lines.extend(" ".join(str(x) for x in a.row(i)) for i in range(a.rows))
    return "\n".join(lines) + "\n"
