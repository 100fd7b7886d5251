"""Exact integer linear algebra over the rational integers.

Every quotient, fixed-point lattice and cohomology presentation in this
package reduces to Smith normal form, integer kernels and indices of
full-rank sublattices.  Entries are Python integers throughout, so
intermediate coefficient growth is harmless and all results are exact.

Conventions for degenerate shapes: the kernel of a 0 x n map is Z^n, and
the cokernel of an m x 0 map is Z^m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InputError

__all__ = [
    "IntMatrix",
    "FinAbGroup",
    "snf",
    "cokernel_structure",
    "kernel_basis",
    "sublattice_index",
    "lattice_basis",
    "solve_columns",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable rows x cols matrix of unbounded integers, row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise InputError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise InputError(
                "expected %d entries, got %d" % (self.rows * self.cols, len(self.entries))
            )
        for x in self.entries:
            if not isinstance(x, int):
                raise InputError("matrix entries must be integers, got %r" % (x,))

    # ---- constructors -------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        nr = len(rows)
        if nr == 0:
            return cls(0, 0 if cols is None else cols, ())
        nc = len(rows[0])
        if any(len(r) != nc for r in rows):
            raise InputError("ragged rows")
        return cls(nr, nc, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        cols = [list(c) for c in cols]
        if not cols:
            return cls(0 if rows is None else rows, 0, ())
        nr = len(cols[0])
        if any(len(c) != nr for c in cols):
            raise InputError("ragged columns")
        return cls(nr, len(cols), tuple(cols[j][i] for i in range(nr) for j in range(len(cols))))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> "IntMatrix":
        n = len(diag)
        return cls(n, n, tuple(diag[i] if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def hstack(cls, *mats: "IntMatrix") -> "IntMatrix":
        if not mats:
            raise InputError("hstack needs at least one matrix")
        r = mats[0].rows
        if any(m.rows != r for m in mats):
            raise InputError("hstack: row counts differ")
        rows = [[x for m in mats for x in m.row(i)] for i in range(r)]
        return cls.from_rows(rows, cols=sum(m.cols for m in mats))

    @classmethod
    def vstack(cls, *mats: "IntMatrix") -> "IntMatrix":
        if not mats:
            raise InputError("vstack needs at least one matrix")
        c = mats[0].cols
        if any(m.cols != c for m in mats):
            raise InputError("vstack: column counts differ")
        return cls(sum(m.rows for m in mats), c, tuple(x for m in mats for x in m.entries))

    # ---- access --------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # ---- arithmetic ----------------------------------------------------

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("shape mismatch in addition")
        return IntMatrix(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def scaled(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(k * x for x in self.entries))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InputError("shape mismatch in multiplication")
        a, b = self.to_rows(), other.to_rows()
        out = []
        for i in range(self.rows):
            ai = a[i]
            out.append(
                [sum(ai[k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
            )
        return IntMatrix.from_rows(out, cols=other.cols)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise InputError("vector length mismatch")
        return tuple(sum(self.row(i)[k] * vec[k] for k in range(self.cols)) for i in range(self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows))
        )

    def pow(self, e: int) -> "IntMatrix":
        if not self.is_square():
            raise InputError("pow needs a square matrix")
        if e < 0:
            raise InputError("pow needs a non-negative exponent")
        result = IntMatrix.identity(self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def det(self) -> int:
        """Exact determinant via fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise InputError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def __str__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return "[%dx%d]" % (self.rows, self.cols)
        widths = [max(len(str(self[i, j])) for i in range(self.rows)) for j in range(self.cols)]
        lines = [
            "[" + " ".join(str(self[i, j]).rjust(widths[j]) for j in range(self.cols)) + "]"
            for i in range(self.rows)
        ]
        return "\n".join(lines)


@dataclass(frozen=True)
class FinAbGroup:
    """A finitely generated abelian group: invariant factors d_1 | d_2 | ...
    (each >= 2, units dropped) plus a free rank.

    Equality of groups is equality of these canonical data.
    """

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self) -> None:
        fs = self.invariant_factors
        if any(not isinstance(d, int) or d < 2 for d in fs):
            raise InputError("invariant factors must be integers >= 2")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise InputError("invariant factors must form a divisibility chain")
        if self.free_rank < 0:
            raise InputError("free rank must be non-negative")

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise InputError("group has positive free rank, order is infinite")
        return math.prod(self.invariant_factors)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append("Z^%d" % self.free_rank)
        parts.extend("Z/%d" % d for d in self.invariant_factors)
        return " x ".join(parts) if parts else "0"


# ---- Smith normal form -------------------------------------------------


def snf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms: returns (U, D, V) with
    U @ m @ V == D, U and V unimodular, D diagonal with non-negative
    entries forming a divisibility chain d_1 | d_2 | ...

    Pivots are chosen by smallest nonzero absolute value, which keeps
    coefficient growth modest at the matrix sizes this package uses.
    """
    r, c = m.rows, m.cols
    a = m.to_rows()
    u = IntMatrix.identity(r).to_rows()
    v = IntMatrix.identity(c).to_rows()

    def row_combine(i: int, t: int, q: int) -> None:
        # row_i -= q * row_t
        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
        u[i] = [x - q * y for x, y in zip(u[i], u[t])]

    def row_add(t: int, i: int) -> None:
        a[t] = [x + y for x, y in zip(a[t], a[i])]
        u[t] = [x + y for x, y in zip(u[t], u[i])]

    def col_combine(j: int, t: int, q: int) -> None:
        # col_j -= q * col_t
        for row in a:
            row[j] -= q * row[t]
        for row in v:
            row[j] -= q * row[t]

    def swap_rows(i: int, t: int) -> None:
        a[i], a[t] = a[t], a[i]
        u[i], u[t] = u[t], u[i]

    def swap_cols(j: int, t: int) -> None:
        for row in a:
            row[j], row[t] = row[t], row[j]
        for row in v:
            row[j], row[t] = row[t], row[j]

    n = min(r, c)
    t = 0
    while t < n:
        # smallest nonzero |entry| of the trailing submatrix
        piv = None
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = abs(a[i][j])
                if x and (best is None or x < best):
                    best, piv = x, (i, j)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            swap_rows(pi, t)
        if pj != t:
            swap_cols(pj, t)

        col_clean = True
        for i in range(t + 1, r):
            if a[i][t]:
                row_combine(i, t, a[i][t] // a[t][t])
                if a[i][t]:
                    col_clean = False
        if not col_clean:
            continue  # strictly smaller entries appeared; re-pick the pivot
        row_clean = True
        for j in range(t + 1, c):
            if a[t][j]:
                col_combine(j, t, a[t][j] // a[t][t])
                if a[t][j]:
                    row_clean = False
        if not row_clean:
            continue

        # the pivot must divide the whole trailing submatrix for the chain
        bad = None
        for i in range(t + 1, r):
            for j in range(t + 1, c):
                if a[i][j] % a[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_add(t, bad)
            continue
        t += 1

    for i in range(n):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]

    return (
        IntMatrix.from_rows(u, cols=r),
        IntMatrix.from_rows(a, cols=c),
        IntMatrix.from_rows(v, cols=c),
    )


def _diagonal_of(d: IntMatrix) -> list[int]:
    return [d[i, i] for i in range(min(d.rows, d.cols))]


def rank(m: IntMatrix) -> int:
    _, d, _ = snf(m)
    return sum(1 for x in _diagonal_of(d) if x)


def cokernel_structure(m: IntMatrix) -> FinAbGroup:
    """Structure of Z^rows / (column span of m) as a FinAbGroup."""
    _, d, _ = snf(m)
    diag = _diagonal_of(d)
    factors = tuple(x for x in diag if x >= 2)
    free = m.rows - sum(1 for x in diag if x)
    return FinAbGroup(factors, free)


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """A basis of the integer kernel {x in Z^cols : m x = 0}, as columns.

    The basis columns extend to a unimodular matrix, so the kernel lattice
    is saturated by construction.
    """
    _, d, v = snf(m)
    diag = _diagonal_of(d)
    free_cols = [j for j in range(m.cols) if j >= len(diag) or diag[j] == 0]
    return IntMatrix.from_columns([v.column(j) for j in free_cols], rows=m.cols)


def lattice_basis(m: IntMatrix) -> IntMatrix:
    """A basis (as columns) of the lattice spanned by the columns of m.

    Column-style Hermite reduction: invertible integer column operations
    only, so the span is preserved exactly.
    """
    pending = [list(m.column(j)) for j in range(m.cols)]
    pending = [vec for vec in pending if any(vec)]
    basis: list[list[int]] = []
    for i in range(m.rows):
        carriers = [vec for vec in pending if vec[i]]
        others = [vec for vec in pending if not vec[i]]
        if not carriers:
            pending = others
            continue
        while len(carriers) > 1:
            carriers.sort(key=lambda vec: abs(vec[i]))
            head = carriers[0]
            rest = []
            for vec in carriers[1:]:
                q = vec[i] // head[i]
                red = [x - q * y for x, y in zip(vec, head)]
                if red[i]:
                    rest.append(red)
                elif any(red):
                    others.append(red)
            carriers = [head] + rest
        basis.append(carriers[0])
        pending = others
    return IntMatrix.from_columns(basis, rows=m.rows)


def solve_columns(b: IntMatrix, t: IntMatrix) -> IntMatrix | None:
    """An integer solution X of b @ X == t, or None if none exists.

    When the columns of b are independent the solution is unique.
    """
    if b.rows != t.rows:
        raise InputError("shape mismatch in solve")
    u, d, v = snf(b)
    diag = _diagonal_of(d)
    z = u @ t
    y_rows: list[list[int]] = []
    for i in range(b.cols):
        di = diag[i] if i < len(diag) else 0
        zi = list(z.row(i)) if i < b.rows else [0] * t.cols
        if di == 0:
            y_rows.append([0] * t.cols)
        else:
            if any(x % di for x in zi):
                return None
            y_rows.append([x // di for x in zi])
    for i in range(b.cols, b.rows):
        if any(z.row(i)):
            return None
    # rows with a zero diagonal entry must also have z == 0
    for i in range(len(diag)):
        if diag[i] == 0 and any(z.row(i)):
            return None
    y = IntMatrix.from_rows(y_rows, cols=t.cols) if y_rows else IntMatrix.zero(0, t.cols)
    return v @ y


def in_column_span(m: IntMatrix, vec: Sequence[int]) -> bool:
    """Whether vec lies in the integer column span of m."""
    target = IntMatrix.from_columns([list(vec)], rows=m.rows)
    return solve_columns(m, target) is not None


def sublattice_index(l_big: IntMatrix, l_small: IntMatrix) -> int:
    """[l_big : l_small] for full-rank lattices given by basis columns.

    Rejects rank-deficient inputs and columns of l_small outside the span
    of l_big (non-integral coordinates).
    """
    if l_big.rows != l_small.rows:
        raise InputError("lattices live in different ambient ranks")
    if rank(l_big) != l_big.cols:
        raise InputError("l_big is rank-deficient")
    if rank(l_small) != l_small.cols:
        raise InputError("l_small is rank-deficient")
    if l_big.cols != l_small.cols:
        raise InputError("lattices have different ranks, index is not finite")
    x = solve_columns(l_big, l_small)
    if x is None:
        raise InputError("l_small is not a sublattice of l_big")
    return abs(x.det())
