"""Dense matrices over an exact scalar ring, plus parity-graded supermatrices.

Entries live in a ring described by a descriptor from ``scalars`` (``QQ``,
``CC``, or a ``GrassmannAlgebra``). Entry products keep their left-to-right
order, so Grassmann-valued matrices multiply correctly. Determinants are
refused over noncommutative scalars instead of silently computing a wrong
value; inversion works over any of the rings via row reduction with
left-multiplications only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .scalars import GrassmannAlgebra, NotInvertibleError, ParseError


class ShapeError(ValueError):
    """Matrix dimensions or scalar domains do not line up."""


class Matrix:
    """Immutable dense matrix; entries stored row-major."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, rows: int, cols: int, entries: Iterable):
        entries = tuple(entries)
        if rows < 1 or cols < 1:
            raise ShapeError(f"matrix dimensions must be positive, got {rows}x{cols}")
        if len(entries) != rows * cols:
            raise ShapeError(f"need {rows * cols} entries for {rows}x{cols}, got {len(entries)}")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, ring, rows: Sequence[Sequence]) -> "Matrix":
        if not rows or not rows[0]:
            raise ShapeError("need at least one row and one column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ShapeError("ragged rows")
        entries = [ring.coerce(v) for row in rows for v in row]
        return cls(ring, len(rows), ncols, entries)

    @classmethod
    def identity(cls, ring, n: int) -> "Matrix":
        one, zero = ring.one(), ring.zero()
        return cls(ring, n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, ring, rows: int, cols: int) -> "Matrix":
        zero = ring.zero()
        return cls(ring, rows, cols, [zero] * (rows * cols))

    def entry(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def __getitem__(self, key):
        i, j = key
        return self.entry(i, j)

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(e) for e in self.entries)

    def _check_same_ring(self, other: "Matrix"):
        if self.ring != other.ring:
            raise ShapeError(f"scalar domains differ: {self.ring!r} vs {other.ring!r}")

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError(f"cannot add {self.rows}x{self.cols} and {other.rows}x{other.cols}")
        return Matrix(self.ring, self.rows, self.cols,
                      [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Matrix(self.ring, self.rows, self.cols, [-e for e in self.entries])

    def __mul__(self, other):
        """Matrix product; entry products are taken left factor first."""
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_ring(other)
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        zero = self.ring.zero()
        out = []
        for i in range(self.rows):
            lrow = self.row(i)
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + lrow[k] * other.entry(k, j)
                out.append(acc)
        return Matrix(self.ring, self.rows, other.cols, out)

    __matmul__ = __mul__

    def scale(self, scalar) -> "Matrix":
        """Left-multiply every entry by ``scalar``."""
        c = self.ring.coerce(scalar)
        return Matrix(self.ring, self.rows, self.cols, [c * e for e in self.entries])

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, self.cols, self.rows,
                      [self.entry(i, j) for j in range(self.cols) for i in range(self.rows)])

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ring == other.ring
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.entries))

    def determinant(self):
        """Exact determinant; Laplace expansion up to 4x4, Bareiss beyond.

        Only defined over commutative scalars. Both routes are exact and are
        cross-checked against each other in the test suite.
        """
        if not self.is_square:
            raise ShapeError("determinant of a nonsquare matrix")
        if not self.ring.commutative:
            raise ShapeError(f"determinant is unsupported over {self.ring!r} (noncommutative)")
        if self.rows <= 4:
            return _det_laplace(self)
        return _det_bareiss(self)

    def inverse(self) -> "Matrix":
        """Two-sided inverse via row reduction with invertible pivots.

        Every row operation is a left multiplication, so the result is valid
        over noncommutative scalars too; over a Grassmann algebra the pivot
        criterion is an invertible body.
        """
        if not self.is_square:
            raise ShapeError("inverse of a nonsquare matrix")
        ring = self.ring
        n = self.rows
        work = self.to_rows()
        out = Matrix.identity(ring, n).to_rows()
        for col in range(n):
            pivot_row = None
            for r in range(col, n):
                if ring.is_invertible(work[r][col]):
                    pivot_row = r
                    break
            if pivot_row is None:
                raise NotInvertibleError(f"no invertible pivot in column {col}")
            if pivot_row != col:
                work[col], work[pivot_row] = work[pivot_row], work[col]
                out[col], out[pivot_row] = out[pivot_row], out[col]
            inv = ring.invert(work[col][col])
            work[col] = [inv * x for x in work[col]]
            out[col] = [inv * x for x in out[col]]
            for r in range(n):
                if r == col:
                    continue
                f = work[r][col]
                if ring.is_zero(f):
                    continue
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
                out[r] = [x - f * y for x, y in zip(out[r], out[col])]
        return Matrix.from_rows(ring, out)

    def map_entries(self, f: Callable) -> list[list]:
        return [[f(e) for e in self.row(i)] for i in range(self.rows)]

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [self.ring.format(e) for e in self.entries],
        }

    @classmethod
    def from_json(cls, ring, obj) -> "Matrix":
        _require_keys(obj, {"rows", "cols", "entries"})
        rows, cols = obj["rows"], obj["cols"]
        if not (isinstance(rows, int) and isinstance(cols, int)):
            raise ParseError("matrix rows/cols must be integers")
        entries = obj["entries"]
        if not isinstance(entries, list):
            raise ParseError("matrix entries must be a list of scalar strings")
        if len(entries) != rows * cols:
            raise ParseError(f"need {rows * cols} entries for {rows}x{cols}, got {len(entries)}")
        return cls(ring, rows, cols, [ring.parse(e) for e in entries])

    def __str__(self):
        return "[" + "; ".join(
            ", ".join(self.ring.format(e) for e in self.row(i)) for i in range(self.rows)
        ) + "]"

    def __repr__(self):
        return f"Matrix({self.ring!r}, {self.rows}x{self.cols}, {self!s})"


def _require_keys(obj, required: set, optional: set = frozenset()):
    if not isinstance(obj, dict):
        raise ParseError(f"expected a JSON object, got {type(obj).__name__}")
    missing = required - obj.keys()
    if missing:
        raise ParseError(f"missing field(s): {', '.join(sorted(missing))}")
    unknown = obj.keys() - required - optional
    if unknown:
        raise ParseError(f"unknown field(s): {', '.join(sorted(unknown))}")


def _det_laplace(m: Matrix):
    """Division-free cofactor expansion along the first row."""
    n = m.rows
    if n == 1:
        return m.entry(0, 0)
    total = m.ring.zero()
    for j in range(n):
        lead = m.entry(0, j)
        if m.ring.is_zero(lead):
            continue
        minor_entries = [
            m.entry(i, k) for i in range(1, n) for k in range(n) if k != j
        ]
        minor = Matrix(m.ring, n - 1, n - 1, minor_entries)
        term = lead * _det_laplace(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def _det_bareiss(m: Matrix):
    """Fraction-free elimination with row pivoting; divisions are exact."""
    ring = m.ring
    n = m.rows
    a = m.to_rows()
    prev = ring.one()
    negate = False
    for k in range(n - 1):
        pivot_row = next((r for r in range(k, n) if not ring.is_zero(a[r][k])), None)
        if pivot_row is None:
            return ring.zero()
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            negate = not negate
        pivot = a[k][k]
        prev_inv = ring.invert(prev)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (pivot * a[i][j] - a[i][k] * a[k][j]) * prev_inv
        prev = pivot
    det = a[n - 1][n - 1]
    return -det if negate else det


@dataclass(frozen=True)
class SuperMatrix:
    """Square Grassmann-valued matrix with an (even | odd) block grading.

    Standard form means the diagonal blocks hold even scalars and the
    off-diagonal blocks hold odd scalars (zero passes as both).
    """

    even_dim: int
    odd_dim: int
    matrix: Matrix

    def __post_init__(self):
        if self.even_dim < 0 or self.odd_dim < 0 or self.even_dim + self.odd_dim < 1:
            raise ShapeError(f"bad grading ({self.even_dim}|{self.odd_dim})")
        if not isinstance(self.matrix.ring, GrassmannAlgebra):
            raise ShapeError("supermatrices need Grassmann scalars")
        size = self.even_dim + self.odd_dim
        if (self.matrix.rows, self.matrix.cols) != (size, size):
            raise ShapeError(
                f"grading ({self.even_dim}|{self.odd_dim}) needs a {size}x{size} matrix"
            )

    @property
    def size(self) -> int:
        return self.even_dim + self.odd_dim

    def _block_parity(self, i: int, j: int) -> str:
        row_odd = i >= self.even_dim
        col_odd = j >= self.even_dim
        return "even" if row_odd == col_odd else "odd"

    def is_standard_form(self) -> bool:
        """Check the parity grading blockwise; zero entries pass anywhere."""
        for i in range(self.size):
            for j in range(self.size):
                e = self.matrix.entry(i, j)
                if not e:
                    continue
                if e.parity() != self._block_parity(i, j):
                    return False
        return True

    def _check_same_grading(self, other: "SuperMatrix"):
        if (self.even_dim, self.odd_dim) != (other.even_dim, other.odd_dim):
            raise ShapeError("supermatrix gradings differ")

    def __mul__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        self._check_same_grading(other)
        return SuperMatrix(self.even_dim, self.odd_dim, self.matrix * other.matrix)

    def __add__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        self._check_same_grading(other)
        return SuperMatrix(self.even_dim, self.odd_dim, self.matrix + other.matrix)

    def inverse(self) -> "SuperMatrix":
        return SuperMatrix(self.even_dim, self.odd_dim, self.matrix.inverse())

    def to_json(self) -> dict:
        obj = self.matrix.to_json()
        obj["grading"] = [self.even_dim, self.odd_dim]
        return obj

    @classmethod
    def from_json(cls, ring, obj) -> "SuperMatrix":
        _require_keys(obj, {"rows", "cols", "entries", "grading"})
        grading = obj["grading"]
        if not (isinstance(grading, list) and len(grading) == 2):
            raise ParseError("grading must be [even_dim, odd_dim]")
        body = {k: v for k, v in obj.items() if k != "grading"}
        return cls(grading[0], grading[1], Matrix.from_json(ring, body))
