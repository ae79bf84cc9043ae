"""Exact dense linear algebra over the rationals and prime fields.

Scalars are `fractions.Fraction` values over Q and plain ints in ``range(p)``
over F_p.  Every routine that emits a basis emits a canonical one (reduced
echelon form), so identical inputs always produce bit-identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

__all__ = [
    "FieldSpec",
    "QQ",
    "GF",
    "Matrix",
    "kernel_basis",
    "rank_and_inverse",
    "express_in_echelon",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: ``kind`` is "Q" (rationals) or "Fp" (integers mod p)."""

    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("the rationals take no modulus")
        elif self.kind == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"modulus must be a prime, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    # scalar construction ------------------------------------------------

    @property
    def zero(self):
        return 0 if self.kind == "Fp" else Fraction(0)

    @property
    def one(self):
        return 1 if self.kind == "Fp" else Fraction(1)

    def scalar(self, value):
        """Coerce an int or Fraction into a field element."""
        if self.kind == "Fp":
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    return self.div(value.numerator % self.p,
                                    value.denominator % self.p)
                value = value.numerator
            return value % self.p
        return Fraction(value)

    def parse(self, text: str):
        """Parse "n" or "n/d" (exact decimal integer strings)."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self.div(self.scalar(int(num)), self.scalar(int(den)))
        return self.scalar(int(text))

    def format(self, x) -> str:
        if self.kind == "Fp":
            return str(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    # arithmetic ---------------------------------------------------------

    def add(self, a, b):
        return (a + b) % self.p if self.kind == "Fp" else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.kind == "Fp" else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.kind == "Fp" else a * b

    def neg(self, a):
        return (-a) % self.p if self.kind == "Fp" else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "Fp":
            return pow(a, self.p - 2, self.p)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))


QQ = FieldSpec("Q")


def GF(p: int) -> FieldSpec:
    return FieldSpec("Fp", p)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix with entries in a fixed FieldSpec."""

    field: FieldSpec
    nrows: int
    ncols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("dimensions must be non-negative")
        if len(self.entries) != self.nrows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix")

    # construction -------------------------------------------------------

    @staticmethod
    def from_rows(field: FieldSpec, rows) -> Matrix:
        data = tuple(tuple(field.scalar(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else 0
        return Matrix(field, len(data), ncols, data)

    @staticmethod
    def zeros(field: FieldSpec, nrows: int, ncols: int) -> Matrix:
        z = field.zero
        return Matrix(field, nrows, ncols, tuple((z,) * ncols for _ in range(nrows)))

    @staticmethod
    def identity(field: FieldSpec, n: int) -> Matrix:
        z, o = field.zero, field.one
        return Matrix(field, n, n,
                      tuple(tuple(o if i == j else z for j in range(n))
                            for i in range(n)))

    @staticmethod
    def from_columns(field: FieldSpec, cols, nrows: int) -> Matrix:
        rows = [[field.scalar(col[i]) for col in cols] for i in range(nrows)]
        return Matrix(field, nrows, len(cols), tuple(tuple(r) for r in rows))

    @staticmethod
    def hstack(left: Matrix, right: Matrix) -> Matrix:
        if left.nrows != right.nrows or left.field != right.field:
            raise ValueError("hstack shape/field mismatch")
        rows = tuple(l + r for l, r in zip(left.entries, right.entries))
        return Matrix(left.field, left.nrows, left.ncols + right.ncols, rows)

    @staticmethod
    def vstack(top: Matrix, bottom: Matrix) -> Matrix:
        if top.ncols != bottom.ncols or top.field != bottom.field:
            raise ValueError("vstack shape/field mismatch")
        return Matrix(top.field, top.nrows + bottom.nrows, top.ncols,
                      top.entries + bottom.entries)

    # basic ops ----------------------------------------------------------

    def __add__(self, other: Matrix) -> Matrix:
        if (self.nrows, self.ncols, self.field) != (other.nrows, other.ncols, other.field):
            raise ValueError("shape/field mismatch")
        k = self.field
        return Matrix(k, self.nrows, self.ncols,
                      tuple(tuple(k.add(a, b) for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: Matrix) -> Matrix:
        if (self.nrows, self.ncols, self.field) != (other.nrows, other.ncols, other.field):
            raise ValueError("shape/field mismatch")
        k = self.field
        return Matrix(k, self.nrows, self.ncols,
                      tuple(tuple(k.sub(a, b) for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.entries, other.entries)))

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows or self.field != other.field:
            raise ValueError("matmul shape/field mismatch")
        k = self.field
        ocols = list(zip(*other.entries)) if other.entries else [()] * other.ncols
        if other.nrows == 0:
            return Matrix.zeros(k, self.nrows, other.ncols)
        rows = []
        for r in self.entries:
            row = []
            for c in ocols:
                acc = k.zero
                for a, b in zip(r, c):
                    acc = k.add(acc, k.mul(a, b))
                row.append(acc)
            rows.append(tuple(row))
        return Matrix(k, self.nrows, other.ncols, tuple(rows))

    def scale(self, s) -> Matrix:
        k = self.field
        s = k.scalar(s)
        return Matrix(k, self.nrows, self.ncols,
                      tuple(tuple(k.mul(s, a) for a in r) for r in self.entries))

    def neg(self) -> Matrix:
        k = self.field
        return Matrix(k, self.nrows, self.ncols,
                      tuple(tuple(k.neg(a) for a in r) for r in self.entries))

    def transpose(self) -> Matrix:
        if self.nrows == 0:
            return Matrix(self.field, self.ncols, 0,
                          tuple(() for _ in range(self.ncols)))
        return Matrix(self.field, self.ncols, self.nrows,
                      tuple(zip(*self.entries)))

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def apply(self, vec) -> tuple:
        """Multiply by a coordinate column vector, returning a tuple."""
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        k = self.field
        out = []
        for row in self.entries:
            acc = k.zero
            for a, x in zip(row, vec):
                acc = k.add(acc, k.mul(a, x))
            out.append(acc)
        return tuple(out)

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(a == z for row in self.entries for a in row)

    # echelon forms ------------------------------------------------------

    def rref(self) -> tuple[Matrix, tuple[int, ...]]:
        """Reduced row echelon form and the tuple of pivot column indices."""
        k = self.field
        rows = [list(r) for r in self.entries]
        pivots = []
        pr = 0
        for pc in range(self.ncols):
            pivot_row = None
            for i in range(pr, self.nrows):
                if rows[i][pc] != k.zero:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
            inv = k.inv(rows[pr][pc])
            rows[pr] = [k.mul(inv, a) for a in rows[pr]]
            for i in range(self.nrows):
                if i != pr and rows[i][pc] != k.zero:
                    f = rows[i][pc]
                    rows[i] = [k.sub(a, k.mul(f, b))
                               for a, b in zip(rows[i], rows[pr])]
            pivots.append(pc)
            pr += 1
            if pr == self.nrows:
                break
        out = Matrix(k, self.nrows, self.ncols, tuple(tuple(r) for r in rows))
        return out, tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])


def kernel_basis(m: Matrix) -> list[tuple]:
    """Canonical basis of the null space of ``m``, as column vectors.

    The returned vectors are in reduced column-echelon form: each has a
    leading 1, leading positions strictly increase, and every other vector
    vanishes at those positions.  Recomputation is bit-identical.
    """
    k = m.field
    red, pivots = m.rref()
    pivot_set = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivot_set]
    if not free:
        return []
    vectors = []
    for j in free:
        v = [k.zero] * m.ncols
        v[j] = k.one
        for r, pc in enumerate(pivots):
            v[pc] = k.neg(red.entries[r][j])
        vectors.append(tuple(v))
    # canonicalize: reduce the spanning set, rows become the echelon basis
    span = Matrix(k, len(vectors), m.ncols, tuple(vectors))
    red2, _ = span.rref()
    return [row for row in red2.entries if any(a != k.zero for a in row)]


def rank_and_inverse(m: Matrix) -> tuple[int, Optional[Matrix]]:
    """Exact rank, plus the inverse when ``m`` is square of full rank."""
    if m.nrows != m.ncols:
        return m.rank(), None
    n = m.nrows
    if n == 0:
        return 0, Matrix.zeros(m.field, 0, 0)
    aug = Matrix.hstack(m, Matrix.identity(m.field, n))
    red, pivots = aug.rref()
    rank = sum(1 for p in pivots if p < n)
    if rank < n:
        return rank, None
    inv_rows = tuple(row[n:] for row in red.entries)
    return n, Matrix(m.field, n, n, inv_rows)


def express_in_echelon(basis_rows: list[tuple], pivots: tuple[int, ...],
                       vector: tuple, field: FieldSpec) -> tuple:
    """Coordinates of ``vector`` in an echelon basis (rows of an rref).

    With a reduced echelon basis the coefficient of basis vector i is just
    ``vector[pivots[i]]``; the expansion is verified exactly and a vector
    outside the span raises ValueError.
    """
    coeffs = tuple(vector[p] for p in pivots)
    residue = list(vector)
    for c, row in zip(coeffs, basis_rows):
        if c == field.zero:
            continue
        for j, a in enumerate(row):
            residue[j] = field.sub(residue[j], field.mul(c, a))
    if any(x != field.zero for x in residue):
        raise ValueError("vector is not in the span of the echelon basis")
    return coeffs


def echelon_pivots(basis_rows: list[tuple], field: FieldSpec) -> tuple[int, ...]:
    """Leading-entry positions of an echelon basis (rows assumed reduced)."""
    pivots = []
    for row in basis_rows:
        for j, a in enumerate(row):
            if a != field.zero:
                pivots.append(j)
                break
    return tuple(pivots)
