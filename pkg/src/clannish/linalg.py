"""Exact matrices over the rationals and prime fields.

Elements of Q are ``fractions.Fraction``; elements of F_p are ints in
``range(p)``.  Every elimination pivots on the lowest available row and
column index so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Field:
    """Q when ``prime`` is None, otherwise F_prime."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None and not _is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_finite(self) -> bool:
        return self.prime is not None

    @property
    def tag(self) -> str:
        return "Q" if self.prime is None else f"F{self.prime}"

    @classmethod
    def from_tag(cls, tag: str) -> "Field":
        if tag == "Q":
            return cls(None)
        if tag.startswith("F") and tag[1:].isdigit():
            return cls(int(tag[1:]))
        raise ValueError(f"unknown field tag {tag!r} (expected Q or F<p>)")

    def __call__(self, value) -> object:
        """Coerce an int, Fraction or numeric string into the field."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.prime is None:
            return Fraction(value)
        value = Fraction(value)
        num = value.numerator % self.prime
        den = value.denominator % self.prime
        if den == 0:
            raise ZeroDivisionError(f"{value} has no image in F{self.prime}")
        return num * pow(den, self.prime - 2, self.prime) % self.prime

    def norm(self, x):
        return x if self.prime is None else x % self.prime

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.prime is None:
            return 1 / Fraction(x)
        return pow(x, self.prime - 2, self.prime)

    @property
    def zero(self):
        return Fraction(0) if self.prime is None else 0

    @property
    def one(self):
        return Fraction(1) if self.prime is None else 1

    def elements(self) -> list:
        if self.prime is None:
            raise ValueError("Q is not enumerable")
        return list(range(self.prime))

    def render(self, x) -> str:
        return str(x)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Matrix:
    """An immutable ``nrows x ncols`` matrix; the shape survives zero sizes."""

    nrows: int
    ncols: int
    rows: tuple[tuple, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError(f"rows do not match shape {self.nrows}x{self.ncols}")

    @classmethod
    def of(cls, field: Field, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        rows = [tuple(field(x) for x in r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols, tuple((field.zero,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(n, n, tuple(
            tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def matmul(self, other: "Matrix", field: Field) -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        return Matrix(self.nrows, other.ncols, tuple(
            tuple(field.norm(sum((a * b for a, b in zip(r, c)), field.zero)) for c in cols)
            for r in self.rows))

    def add(self, other: "Matrix", field: Field) -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.nrows, self.ncols, tuple(
            tuple(field.norm(a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scale(self, c, field: Field) -> "Matrix":
        return Matrix(self.nrows, self.ncols, tuple(
            tuple(field.norm(c * a) for a in r) for r in self.rows))

    def sub(self, other: "Matrix", field: Field) -> "Matrix":
        return self.add(other.scale(field.norm(-field.one), field), field)

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, tuple(zip(*self.rows)) if self.nrows
                      else tuple(() for _ in range(self.ncols)))

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix(r1 - r0, c1 - c0, tuple(tuple(r[c0:c1]) for r in self.rows[r0:r1]))

    def trace(self, field: Field):
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        return field.norm(sum((self.rows[i][i] for i in range(self.nrows)), field.zero))

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]


def product(mats: Iterable[Matrix], field: Field) -> Matrix:
    """Product of matrices listed in application order: ``[A, B, C] -> C B A``."""
    it = iter(mats)
    acc = next(it)
    for m in it:
        acc = m.matmul(acc, field)
    return acc


def rref(rows: Sequence[Sequence], ncols: int, field: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [[field.norm(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.norm(x * inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [field.norm(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int, field: Field) -> int:
    return len(rref(rows, ncols, field)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, field: Field) -> list[list]:
    """Basis of ``{x : A x = 0}``, one vector per free column in increasing order."""
    red, pivots = rref(rows, ncols, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [field.zero] * ncols
        x[f] = field.one
        for row, pc in zip(red, pivots):
            x[pc] = field.norm(-row[f])
        basis.append(x)
    return basis


def column_space_basis(m: Matrix, field: Field) -> list[list]:
    """The pivot columns of ``m`` (lowest index first)."""
    _, pivots = rref(m.rows, m.ncols, field)
    return [[m.rows[i][c] for i in range(m.nrows)] for c in pivots]


def inverse(m: Matrix, field: Field) -> Matrix:
    n = m.nrows
    if m.ncols != n:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(r) + [field.one if i == j else field.zero for j in range(n)]
           for i, r in enumerate(m.rows)]
    red, pivots = rref(aug, 2 * n, field)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return Matrix(n, n, tuple(tuple(r[n:]) for r in red))


def matrix_rank(m: Matrix, field: Field) -> int:
    return rank(m.rows, m.ncols, field)


def in_span(vec: Sequence, basis_rref: Sequence[Sequence], pivots: Sequence[int], field: Field) -> bool:
    """Whether ``vec`` lies in the row space of an RREF basis."""
    v = [field.norm(x) for x in vec]
    for row, pc in zip(basis_rref, pivots):
        if v[pc] != 0:
            f = v[pc]
            v = [field.norm(a - f * b) for a, b in zip(v, row)]
    return all(x == 0 for x in v)
