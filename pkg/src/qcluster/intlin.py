"""Exact integer linear algebra.

Everything here works on Python ints, so there is no overflow path: entries of
exchange matrices and compatible forms grow quickly along mutation sequences.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotSkewSymmetric


class IntMatrix:
    """Immutable integer matrix stored row-major as a tuple of tuples."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionMismatch("ragged matrix rows")
            if ncols is not None and ncols != width:
                raise DimensionMismatch(f"expected {ncols} columns, got {width}")
        else:
            width = ncols or 0
        self.rows = data
        self.nrows = len(data)
        self.ncols = width
        self._hash = None

    @classmethod
    def coerce(cls, obj) -> "IntMatrix":
        return obj if isinstance(obj, IntMatrix) else cls(obj)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            try:
                other = IntMatrix(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self.rows), ncols=self.nrows) if self.nrows else IntMatrix.zeros(self.ncols, 0)

    T = property(transpose)

    def __matmul__(self, other):
        other = IntMatrix.coerce(other)
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.transpose().rows
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows],
            ncols=other.ncols,
        )

    def __neg__(self):
        return IntMatrix([[-x for x in r] for r in self.rows], ncols=self.ncols)

    def __add__(self, other):
        other = IntMatrix.coerce(other)
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch in addition")
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], ncols=self.ncols)

    def __sub__(self, other):
        return self + (-IntMatrix.coerce(other))

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix([[c * x for x in r] for r in self.rows], ncols=self.ncols)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.ncols:
            raise DimensionMismatch("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def mod(self, ell: int) -> "IntMatrix":
        return IntMatrix([[x % ell for x in r] for r in self.rows], ncols=self.ncols)

    def delete(self, j: int) -> "IntMatrix":
        """Remove row ``j`` and column ``j`` (square matrices)."""
        return IntMatrix(
            [[x for c, x in enumerate(r) if c != j] for i, r in enumerate(self.rows) if i != j],
            ncols=self.ncols - 1,
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[self.rows[i][j] for j in cols] for i in rows], ncols=len(cols))

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_skew(self, ell: int | None = None) -> bool:
        """Alternating (zero diagonal, M = -Mᵀ), over Z or modulo ``ell``."""
        if not self.is_square():
            return False
        n = self.nrows
        for i in range(n):
            for j in range(i, n):
                s = self.rows[i][j] if i == j else self.rows[i][j] + self.rows[j][i]
                if (s % ell if ell else s) != 0:
                    return False
        return True

    def bilinear(self, f: Sequence[int], g: Sequence[int]) -> int:
        """fᵀ · self · g."""
        return sum(fi * sum(a * b for a, b in zip(row, g)) for fi, row in zip(f, self.rows) if fi)


def _require_skew(S: IntMatrix):
    if not S.is_skew():
        raise NotSkewSymmetric("matrix is not skew-symmetric")


# ---------------------------------------------------------------------------
# Hermite form and kernels


def _row_echelon(rows: list[list[int]], ncols: int, reduce_above: bool = True) -> list[list[int]]:
    """In-place integer row echelon form by unimodular row operations.

    Pivots are made positive and (when ``reduce_above``) entries above a pivot
    are reduced into [0, pivot), which yields the unique row Hermite form.
    Returns the rows in their final order (zero rows last).
    """
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r >= nrows:
            break
        # gcd-combine column c of rows r.. into row r
        while True:
            nz = [i for i in range(r, nrows) if rows[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(rows[i][c]))
            rows[r], rows[piv] = rows[piv], rows[r]
            done = True
            for i in range(r + 1, nrows):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        done = False
            if done:
                break
        if rows[r][c] == 0:
            continue
        if rows[r][c] < 0:
            rows[r] = [-a for a in rows[r]]
        if reduce_above:
            p = rows[r][c]
            for i in range(r):
                q = rows[i][c] // p
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return rows


def hermite_rows(vectors: Iterable[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Row Hermite normal form of the lattice spanned by ``vectors`` in Zⁿ."""
    rows = [list(v) for v in vectors]
    if any(len(v) != n for v in rows):
        raise DimensionMismatch("vector length mismatch")
    rows = _row_echelon(rows, n)
    return [tuple(r) for r in rows if any(r)]


def kernel_basis(A) -> list[tuple[int, ...]]:
    """Basis of the integer null space {v : A v = 0}, in row Hermite form."""
    A = IntMatrix.coerce(A)
    n, m = A.ncols, A.nrows
    # rows (column_i(A) | e_i); reduce the left block, keep the right block of zero rows
    aug = [list(A.column(i)) + [int(i == j) for j in range(n)] for i in range(n)]
    _row_echelon(aug, m, reduce_above=False)
    kernel = [row[m:] for row in aug if not any(row[:m])]
    return hermite_rows(kernel, n)


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(A):
    """Return (U, S, V) with U·A·V = S diagonal, sᵢ | sᵢ₊₁, U and V unimodular."""
    A = IntMatrix.coerce(A)
    m, n = A.shape
    S = [list(r) for r in A.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        S[dst] = [a - q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in S:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, S[i][t] // p)
                    clean = clean and S[i][t] == 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, S[t][j] // p)
                    clean = clean and S[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            # pull the offending row into row t so the next pass lowers the pivot
            add_row(t, bad, -1)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
        if all(S[i][j] == 0 for i in range(t, m) for j in range(t, n)):
            break
    return IntMatrix(U, ncols=m), IntMatrix(S, ncols=n), IntMatrix(V, ncols=n)


def elementary_divisors(A) -> list[int]:
    _, S, _ = smith_normal_form(A)
    return [S[i, i] for i in range(min(S.shape))]


def lattice_index_mod(A, ell: int) -> int:
    """[Zᴺ : {f : A f ≡ 0 mod ℓ}] computed from elementary divisors."""
    A = IntMatrix.coerce(A)
    if ell < 1:
        raise ValueError("ell must be a positive integer")
    if not A.is_square():
        raise DimensionMismatch("lattice_index_mod expects a square matrix")
    N = A.nrows
    stacked = IntMatrix(list(A.rows) + [[ell * int(i == j) for j in range(N)] for i in range(N)], ncols=N)
    index = 1
    for t in elementary_divisors(stacked):
        index *= ell // t
    return index


# ---------------------------------------------------------------------------
# Rank, determinant, Pfaffian


def rank(A) -> int:
    A = IntMatrix.coerce(A)
    rows = [[Fraction(x) for x in r] for r in A.rows]
    r = 0
    for c in range(A.ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                q = rows[i][c] / rows[r][c]
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def determinant(A) -> int:
    """Bareiss fraction-free elimination."""
    A = IntMatrix.coerce(A)
    if not A.is_square():
        raise DimensionMismatch("determinant of a non-square matrix")
    n = A.nrows
    M = [list(r) for r in A.rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def pfaffian(S) -> int:
    """Exact Pfaffian by expansion along the first row."""
    S = IntMatrix.coerce(S)
    _require_skew(S)
    if S.nrows % 2:
        raise DimensionMismatch("Pfaffian needs an even dimension")
    return _pf(S.rows, tuple(range(S.nrows)))


def _pf(rows, idx):
    if not idx:
        return 1
    i, rest = idx[0], idx[1:]
    total = 0
    for pos, j in enumerate(rest):
        a = rows[i][j]
        if a:
            sub = rest[:pos] + rest[pos + 1:]
            total += (-1) ** pos * a * _pf(rows, sub)
    return total


def skew_rank(S) -> int:
    S = IntMatrix.coerce(S)
    _require_skew(S)
    return rank(S)


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
