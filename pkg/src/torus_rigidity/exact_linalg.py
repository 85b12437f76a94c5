"""Exact dense linear algebra over the integers and the rationals.

Matrices are immutable and store their entries row-major.  Integer matrices
hold Python ints (arbitrary precision), rational matrices hold
:class:`fractions.Fraction` values, which are always kept in lowest terms with
a positive denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionError, SingularMatrixError

__all__ = [
    "IntMatrix",
    "RatMatrix",
    "row_vector",
    "identity",
    "det",
    "mat_mul",
    "mat_pow",
    "inverse_rational",
    "stack_rows",
    "rank_rational",
    "solve_rational",
    "vec_mat",
    "mat_vec",
]


def _check_shape(rows: int, cols: int, entries: tuple) -> None:
    if rows < 1 or cols < 1:
        raise DimensionError(f"matrix dimensions must be positive, got {rows}x{cols}")
    if len(entries) != rows * cols:
        raise DimensionError(
            f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
        )


class _MatrixBase:
    rows: int
    cols: int
    entries: tuple

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def to_lists(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self):
        return type(self)(self.cols, self.rows,
                          tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_lists()!r})"


@dataclass(frozen=True, repr=False)
class IntMatrix(_MatrixBase):
    """Dense matrix of arbitrary-precision integers."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(self.entries)
        for e in entries:
            if isinstance(e, bool) or not isinstance(e, int):
                raise TypeError(f"IntMatrix entries must be int, got {type(e).__name__}")
        object.__setattr__(self, "entries", entries)
        _check_shape(self.rows, self.cols, entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise DimensionError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged matrix literal")
        return cls(len(rows), width, tuple(x for r in rows for x in r))

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(c * e for e in self.entries))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("matrix sum needs equal shapes")
        return IntMatrix(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + other.scale(-1)


@dataclass(frozen=True, repr=False)
class RatMatrix(_MatrixBase):
    """Dense matrix of exact rationals."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(Fraction(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        _check_shape(self.rows, self.cols, entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise DimensionError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged matrix literal")
        return cls(len(rows), width, tuple(x for r in rows for x in r))

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self.entries)

    def to_int(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix has non-integral entries")
        return IntMatrix(self.rows, self.cols, tuple(e.numerator for e in self.entries))

    def __eq__(self, other):
        if isinstance(other, (RatMatrix, IntMatrix)):
            return (self.rows, self.cols, self.entries) == (other.rows, other.cols, tuple(other.entries))
        return NotImplemented

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))


Matrix = Union[IntMatrix, RatMatrix]


def row_vector(entries: Iterable[int]) -> tuple[int, ...]:
    """Validate and freeze an integer row vector."""
    vec = tuple(entries)
    if not vec:
        raise DimensionError("row vector must have dimension >= 1")
    for e in vec:
        if isinstance(e, bool) or not isinstance(e, int):
            raise TypeError(f"row vector entries must be int, got {type(e).__name__}")
    return vec


def identity(n: int) -> IntMatrix:
    return IntMatrix(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))


def _require_square(m: Matrix, what: str) -> None:
    if not m.is_square:
        raise DimensionError(f"{what} needs a square matrix, got {m.rows}x{m.cols}")


def _bareiss(a: list[list[int]]) -> int:
    # In-place fraction-free elimination; every division below is exact.
    n = len(a)
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
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def det(m: Matrix):
    """Exact determinant by Bareiss fraction-free elimination.

    Integer input yields an int.  Rational input is scaled to an integer
    matrix by the common denominator first, so it yields a Fraction.
    """
    _require_square(m, "det")
    if isinstance(m, RatMatrix):
        from math import lcm
        d = lcm(*(e.denominator for e in m.entries))
        rows = [[(e * d).numerator for e in m.row(i)] for i in range(m.rows)]
        return Fraction(_bareiss(rows), d ** m.rows)
    return _bareiss([list(m.row(i)) for i in range(m.rows)])


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Exact product; the result is an IntMatrix iff both factors are."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bcols = [b.column(j) for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        r = a.row(i)
        for c in bcols:
            out.append(sum(x * y for x, y in zip(r, c)))
    if isinstance(a, IntMatrix) and isinstance(b, IntMatrix):
        return IntMatrix(a.rows, b.cols, tuple(out))
    return RatMatrix(a.rows, b.cols, tuple(out))


def mat_pow(m: IntMatrix, j: int) -> IntMatrix:
    """``m**j`` by repeated squaring; ``j = 0`` gives the identity."""
    _require_square(m, "mat_pow")
    if j < 0:
        raise ValueError("exponent must be nonnegative")
    result = identity(m.rows)
    base = m
    while j:
        if j & 1:
            result = mat_mul(result, base)
        j >>= 1
        if j:
            base = mat_mul(base, base)
    return result


def vec_mat(k: Sequence, m: Matrix) -> tuple:
    """Row vector times matrix, ``k @ m``."""
    if len(k) != m.rows:
        raise DimensionError(f"vector of length {len(k)} cannot multiply a {m.rows}x{m.cols} matrix")
    return tuple(sum(x * y for x, y in zip(k, m.column(j))) for j in range(m.cols))


def mat_vec(m: Matrix, x: Sequence) -> tuple:
    """Matrix times column vector, ``m @ x``."""
    if len(x) != m.cols:
        raise DimensionError(f"a {m.rows}x{m.cols} matrix cannot multiply a vector of length {len(x)}")
    return tuple(sum(a * b for a, b in zip(m.row(i), x)) for i in range(m.rows))


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    rows = [r[:] for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def inverse_rational(m: Matrix) -> RatMatrix:
    """Exact inverse over the rationals (Gauss-Jordan)."""
    _require_square(m, "inverse_rational")
    n = m.rows
    aug = [[Fraction(x) for x in m.row(i)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    red, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return RatMatrix(n, n, tuple(x for r in red for x in r[n:]))


def stack_rows(vectors: Sequence[Sequence[int]]) -> IntMatrix:
    """Square matrix whose i-th row is ``vectors[i]``."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        raise DimensionError("need at least one vector")
    dim = len(vectors[0])
    if any(len(v) != dim for v in vectors):
        raise DimensionError("vectors have mixed dimensions")
    if len(vectors) != dim:
        raise DimensionError(f"need exactly {dim} vectors of dimension {dim}, got {len(vectors)}")
    return IntMatrix(dim, dim, tuple(x for v in vectors for x in v))


def rank_rational(m: Matrix) -> int:
    """Rank over Q."""
    _, pivots = _rref([[Fraction(x) for x in m.row(i)] for i in range(m.rows)])
    return len(pivots)


def solve_rational(m: Matrix, rhs: Sequence) -> tuple[Fraction, ...]:
    """Unique solution of ``m x = rhs`` for square nonsingular ``m``."""
    _require_square(m, "solve_rational")
    if len(rhs) != m.rows:
        raise DimensionError("right-hand side length does not match matrix")
    aug = [[Fraction(x) for x in m.row(i)] + [Fraction(rhs[i])] for i in range(m.rows)]
    red, pivots = _rref(aug)
    if pivots[:m.rows] != list(range(m.rows)):
        raise SingularMatrixError("system matrix is singular")
    return tuple(r[-1] for r in red)
