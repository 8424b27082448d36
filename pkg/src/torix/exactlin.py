"""Exact rational linear algebra on small dense matrices.

Scalars are :class:`fractions.Fraction`. Matrices are immutable row-major
tuples. Everything here is exact; there is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction


def scalar(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a reduced Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_scalar(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Mat:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Mat":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(scalar(x) for r in rows for x in r))

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence], rows: int | None = None) -> "Mat":
        cols = [list(c) for c in cols]
        if rows is None:
            rows = len(cols[0]) if cols else 0
        if any(len(c) != rows for c in cols):
            raise ValueError("ragged columns")
        return cls.from_rows([[c[i] for c in cols] for i in range(rows)], len(cols))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> "Mat":
        return Mat(self.cols, self.rows,
                   tuple(self.entries[i * self.cols + j]
                         for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        ocols = [other.col(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in ocols)
        return Mat(self.rows, other.cols, tuple(out))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def select_rows(self, idx: Iterable[int]) -> "Mat":
        idx = list(idx)
        return Mat(len(idx), self.cols, tuple(x for i in idx for x in self.row(i)))

    def select_cols(self, idx: Iterable[int]) -> "Mat":
        idx = list(idx)
        return Mat(self.rows, len(idx),
                   tuple(self.entries[i * self.cols + j] for i in range(self.rows) for j in idx))

    def hstack(self, other: "Mat") -> "Mat":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return Mat.from_rows([self.row(i) + other.row(i) for i in range(self.rows)],
                             self.cols + other.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(x) for x in self.row(i)) for i in range(self.rows))
        return f"Mat({self.rows}x{self.cols}: [{body}])"


def _bareiss_rank(rows: list[list[Fraction]]) -> int:
    # Fraction-free elimination: every division below is exact.
    a = [r[:] for r in rows]
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    prev = Fraction(1)
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                a[i][j] = (p * a[i][j] - a[i][c] * a[r][j]) / prev
            a[i][c] = Fraction(0)
        prev = p
        r += 1
    return r


def rank(m: Mat) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return _bareiss_rank(m.to_rows())


def det(m: Mat) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a = m.to_rows()
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rref(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns, left to right."""
    a = m.to_rows()
    pivots = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        piv = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Mat.from_rows(a, m.cols), tuple(pivots)


def column_echelon(m: Mat) -> Mat:
    """Reduced column echelon form with the zero columns dropped.

    Two matrices have equal column spans iff their outputs are equal.
    """
    r, pivots = rref(m.T)
    return r.select_rows(range(len(pivots))).T


def kernel_basis(m: Mat) -> Mat:
    """Canonical basis of the right kernel as the columns of a matrix.

    The basis is put in reduced column echelon form (pivot entries 1, pivots
    chosen top to bottom), so the output depends only on the kernel.
    """
    r, pivots = rref(m)
    free = [j for j in range(m.cols) if j not in pivots]
    if not free:
        return Mat.zeros(m.cols, 0)
    vecs = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, p in enumerate(pivots):
            v[p] = -r[row, f]
        vecs.append(v)
    raw = Mat.from_rows(list(zip(*vecs)), len(vecs))
    return column_echelon(raw)


def cokernel_matrix(a: Mat) -> Mat:
    """A canonical matrix C with C @ a == 0 whose rows span the annihilator."""
    return kernel_basis(a.T).T


def solve(a: Mat, b: Mat) -> Mat | None:
    """Some X with a @ X == b, or None when the system is inconsistent."""
    aug = a.hstack(b)
    r, pivots = rref(aug)
    if any(p >= a.cols for p in pivots):
        return None
    x = [[Fraction(0)] * b.cols for _ in range(a.cols)]
    for row, p in enumerate(pivots):
        for j in range(b.cols):
            x[p][j] = r[row, a.cols + j]
    return Mat.from_rows(x, b.cols)


def normalize_vector(v: Sequence) -> tuple[Fraction, ...]:
    """Scale a nonzero vector so its first nonzero coordinate is 1."""
    v = tuple(scalar(x) for x in v)
    lead = next((x for x in v if x != 0), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    return tuple(x / lead for x in v)


@dataclass(frozen=True, init=False)
class ProjectiveLinePoint:
    """A point of the projective line, stored as a normalized pair (a, b).

    The affine value is a/b, so ``(1, 0)`` is infinity and ``(0, 1)`` is zero.
    """

    a: Fraction
    b: Fraction

    def __init__(self, a, b):
        na, nb = normalize_vector((a, b))
        object.__setattr__(self, "a", na)
        object.__setattr__(self, "b", nb)

    @classmethod
    def from_value(cls, t) -> "ProjectiveLinePoint":
        if t is None:
            return cls(1, 0)
        return cls(scalar(t), 1)

    @property
    def value(self) -> Fraction | None:
        """Affine coordinate a/b; None at infinity."""
        if self.b == 0:
            return None
        return self.a / self.b

    @property
    def pair(self) -> tuple[Fraction, Fraction]:
        return self.a, self.b

    def __iter__(self):
        return iter((self.a, self.b))

    def __repr__(self) -> str:
        return f"({format_scalar(self.a)}:{format_scalar(self.b)})"


def det2(p: Sequence, q: Sequence) -> Fraction:
    p, q = tuple(p), tuple(q)
    return scalar(p[0]) * scalar(q[1]) - scalar(p[1]) * scalar(q[0])


def columns_proportional(p, q) -> bool:
    return det2(tuple(p), tuple(q)) == 0
