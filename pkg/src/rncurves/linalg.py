"""Dense exact linear algebra over the rationals or a prime field.

Rank and echelon forms over the rationals go through fraction-free
(Bareiss) elimination on integer-cleared rows, which keeps intermediate
entries polynomially bounded.  Prime fields use plain Gaussian elimination
on machine/big ints.  Kernel bases are canonical: they are read off the
reduced row echelon form with unit entries in the free positions, so equal
matrices always yield identical bases.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .fields import Field, PrimeField, QQ, RationalField, Scalar


class LinAlgError(ValueError):
    pass


def _cleared_int_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators, then strip the gcd."""
    out = []
    for row in rows:
        lcm = 1
        for x in row:
            d = x.denominator
            lcm = lcm // gcd(lcm, d) * d
        ints = [int(x * lcm) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination in place; returns (rows, pivot columns)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        pr = None
        for i in range(r, m):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, m):
            row_i = rows[i]
            if not any(row_i[c:]):
                continue
            ric = row_i[c]
            row_r = rows[r]
            for j in range(c, n):
                # Exact by Sylvester's determinant identity.
                row_i[j] = (row_i[j] * piv - ric * row_r[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return rows, pivots


def _gauss_echelon_fp(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        pr = None
        for i in range(r, m):
            if rows[i][c] % p:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        row_r = rows[r]
        for i in range(r + 1, m):
            f = rows[i][c] % p
            if f:
                row_i = rows[i]
                rows[i] = [(a - f * b) % p for a, b in zip(row_i, row_r)]
        pivots.append(c)
        r += 1
    return rows, pivots


class Matrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: Sequence[Sequence[Scalar]], ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise LinAlgError("ragged rows")
        elif ncols is None:
            raise LinAlgError("empty matrix needs explicit ncols")
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def zero(cls, field: Field, m: int, n: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * n for _ in range(m)], ncols=n)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def stack(cls, field: Field, mats: Sequence["Matrix"]) -> "Matrix":
        """Vertical concatenation; all blocks must share the column count."""
        if not mats:
            raise LinAlgError("nothing to stack")
        n = mats[0].ncols
        if any(m.ncols != n for m in mats):
            raise LinAlgError("column count mismatch in stack")
        rows: list[tuple] = []
        for m in mats:
            rows.extend(m.rows)
        return cls(field, rows, ncols=n)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, list(zip(*self.rows)), ncols=self.nrows)

    def mul_vector(self, v: Sequence[Scalar]) -> list[Scalar]:
        if len(v) != self.ncols:
            raise LinAlgError("dimension mismatch")
        F = self.field
        out = []
        for row in self.rows:
            acc = F.zero
            for a, b in zip(row, v):
                acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return out

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise LinAlgError("dimension mismatch")
        F = self.field
        cols = other.transpose().rows
        rows = []
        for r in self.rows:
            new = []
            for c in cols:
                acc = F.zero
                for a, b in zip(r, c):
                    acc = F.add(acc, F.mul(a, b))
                new.append(acc)
            rows.append(new)
        return Matrix(F, rows, ncols=other.ncols)

    # -- elimination ---------------------------------------------------

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        if isinstance(self.field, PrimeField):
            p = self.field.p
            _, pivots = _gauss_echelon_fp([list(r) for r in self.rows], p)
        else:
            work = _cleared_int_rows(self.rows)
            _, pivots = _bareiss_echelon(work)
        return len(pivots)

    def rref(self) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form and its pivot columns."""
        F = self.field
        if self.nrows == 0 or self.ncols == 0:
            return Matrix(F, self.rows, ncols=self.ncols), []
        if isinstance(F, PrimeField):
            p = F.p
            ech, pivots = _gauss_echelon_fp([list(r) for r in self.rows], p)
            work = [row[:] for row in ech[: len(pivots)]]
            for i in range(len(pivots) - 1, -1, -1):
                c = pivots[i]
                for up in range(i):
                    f = work[up][c]
                    if f:
                        row_i = work[i]
                        work[up] = [(a - f * b) % p for a, b in zip(work[up], row_i)]
        else:
            ints = _cleared_int_rows(self.rows)
            ech, pivots = _bareiss_echelon(ints)
            work = [
                [Fraction(v, row[pivots[i]]) for v in row]
                for i, row in enumerate(ech[: len(pivots)])
            ]
            for i in range(len(pivots) - 1, -1, -1):
                c = pivots[i]
                for up in range(i):
                    f = work[up][c]
                    if f:
                        row_i = work[i]
                        work[up] = [a - f * b for a, b in zip(work[up], row_i)]
        zero_row = [F.zero] * self.ncols
        while len(work) < self.nrows:
            work.append(zero_row[:])
        return Matrix(F, work, ncols=self.ncols), pivots

    def kernel_basis(self) -> list[tuple[Scalar, ...]]:
        """Canonical right-kernel basis, one vector per free column.

        Vector ``v_j`` has a one in free column ``j``, zeros in the other
        free columns, and ``-rref[i][j]`` in pivot column ``pivots[i]``.
        """
        F = self.field
        if self.ncols == 0:
            return []
        if self.nrows == 0:
            return [
                tuple(F.one if i == j else F.zero for i in range(self.ncols))
                for j in range(self.ncols)
            ]
        rr, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for j in range(self.ncols):
            if j in pivot_set:
                continue
            v = [F.zero] * self.ncols
            v[j] = F.one
            for i, c in enumerate(pivots):
                v[c] = F.neg(rr.rows[i][j])
            basis.append(tuple(v))
        return basis

    def solve(self, b: Sequence[Scalar]) -> list[Scalar]:
        """Unique solution of ``A x = b``; raises if none or many exist."""
        if len(b) != self.nrows:
            raise LinAlgError("dimension mismatch")
        F = self.field
        aug = Matrix(F, [list(r) + [v] for r, v in zip(self.rows, b)], ncols=self.ncols + 1)
        rr, pivots = aug.rref()
        if self.ncols in pivots:
            raise LinAlgError("inconsistent system")
        if len(pivots) < self.ncols:
            raise LinAlgError("underdetermined system")
        x = [F.zero] * self.ncols
        for i, c in enumerate(pivots):
            x[c] = rr.rows[i][self.ncols]
        return x

    # -- misc ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.field, self.ncols, self.rows))

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols})"


def rank_of_rows(field: Field, rows: Sequence[Sequence[Scalar]]) -> int:
    """Rank of a list of row vectors."""
    if not rows:
        return 0
    return Matrix(field, rows).rank()
