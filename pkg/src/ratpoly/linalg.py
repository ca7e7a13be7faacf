"""Exact rational linear algebra.

Scalars are :py:class:`~fractions.Fraction` objects (always reduced, positive
denominator), vectors are tuples of fractions and matrices are immutable
:py:class:`RatMatrix` objects. Every function in this module is pure.
"""
from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import TypeAlias, final, overload

import numpy as np
from loguru import logger

from ratpoly.config import Limits
from ratpoly.errors import (
    DimensionError,
    PreconditionError,
    ResourceLimitError,
    SingularMatrixError,
)
from ratpoly.utils import RationalLike, Vector, VectorLike, as_rational, as_vector

__all__ = [
    "ENCODING_CONSTANT",
    "RatMatrix",
    "MatrixLike",
    "AffineSolution",
    "dot",
    "add",
    "sub",
    "scale",
    "is_zero",
    "zero_vector",
    "unit_vector",
    "primitive",
    "primitive_scale",
    "canonical_direction",
    "determinant",
    "cramer_solve",
    "rref",
    "rank",
    "kernel_basis",
    "unimodular_reduction",
    "solve_affine",
    "inverse",
    "encoding_length",
    "max_encoding_length",
    "delta_set",
    "encoding_bound_holds",
]

ENCODING_CONSTANT: int = 4
"""Desk-scale constant ``C`` in ``⟨α⟩ ≤ C·n²·⟨M⟩_max``.

The bound only asserts that *some* constant exists; 4 is an empirical choice.
"""

_ZERO = Fraction(0)
_ONE = Fraction(1)


@final
class RatMatrix:
    """An immutable ``m × n`` matrix of exact rationals.

    Rows are stored as tuples of :py:class:`~fractions.Fraction`. The number of
    columns is stored separately so that matrices without rows (``0 × n``) keep
    their shape.

    Parameters
    ----------
    rows
        The rows of the matrix. Each entry can be anything accepted by
        :py:func:`~ratpoly.utils.as_rational`.
    ncols
        The number of columns. Required when ``rows`` is empty, checked otherwise.

    Raises
    ------
    DimensionError
        If the rows have different lengths or don't match ``ncols``.
    """

    __slots__ = ("_rows", "_ncols")

    _rows: tuple[Vector, ...]
    _ncols: int

    def __init__(
        self, rows: Iterable[Iterable[RationalLike]], ncols: int | None = None
    ) -> None:
        converted = tuple(as_vector(row) for row in rows)
        if ncols is None:
            if not converted:
                raise DimensionError("The number of columns of an empty matrix is required")
            ncols = len(converted[0])
        if any(len(row) != ncols for row in converted):
            raise DimensionError(f"All rows must have exactly {ncols} entries")
        self._rows = converted
        self._ncols = ncols

    @classmethod
    def create(cls, value: MatrixLike) -> RatMatrix:
        """Create a matrix from a :py:class:`RatMatrix`, nested sequences or an array.

        Numpy arrays must be two dimensional with an integer or object dtype (of
        exact values). Floating point arrays are rejected.
        """
        if isinstance(value, RatMatrix):
            return value
        if isinstance(value, np.ndarray):
            if value.ndim != 2:
                raise DimensionError("Only two dimensional arrays can be converted")
            if value.dtype.kind == "f":
                raise TypeError("Floating point arrays are not accepted")
            return cls(value.tolist(), ncols=value.shape[1])
        rows = [list(row) for row in value]
        return cls(rows)

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls(
            ((_ONE if i == j else _ZERO for j in range(n)) for i in range(n)), ncols=n
        )

    @classmethod
    def zeros(cls, m: int, n: int) -> RatMatrix:
        return cls(((_ZERO,) * n for _ in range(m)), ncols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[VectorLike], nrows: int) -> RatMatrix:
        cols = [as_vector(c) for c in columns]
        return cls(
            (tuple(col[i] for col in cols) for i in range(nrows)), ncols=len(cols)
        )

    @property
    def rows(self) -> tuple[Vector, ...]:
        return self._rows

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self._rows), self._ncols)

    @property
    def is_square(self) -> bool:
        return len(self._rows) == self._ncols

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self._rows)

    @property
    def columns(self) -> tuple[Vector, ...]:
        return tuple(self.column(j) for j in range(self._ncols))

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for row in self._rows for v in row)

    def transpose(self) -> RatMatrix:
        return RatMatrix(self.columns, ncols=len(self._rows))

    @property
    def T(self) -> RatMatrix:  # noqa: N802
        return self.transpose()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> RatMatrix:
        """Return ``M_{I,J}``, keeping the order of ``rows`` and ``cols``."""
        return RatMatrix(
            (tuple(self._rows[i][j] for j in cols) for i in rows), ncols=len(cols)
        )

    def select_rows(self, rows: Sequence[int]) -> RatMatrix:
        return RatMatrix((self._rows[i] for i in rows), ncols=self._ncols)

    def matvec(self, vector: VectorLike) -> Vector:
        v = as_vector(vector)
        if len(v) != self._ncols:
            raise DimensionError(f"Expected a vector of dimension {self._ncols}")
        return tuple(dot(row, v) for row in self._rows)

    def vecmat(self, vector: VectorLike) -> Vector:
        """Return ``λᵗM`` for a vector ``λ`` with one entry per row."""
        v = as_vector(vector)
        if len(v) != len(self._rows):
            raise DimensionError(f"Expected a vector of dimension {len(self._rows)}")
        result = [_ZERO] * self._ncols
        for coefficient, row in zip(v, self._rows, strict=True):
            if coefficient:
                for j, entry in enumerate(row):
                    result[j] += coefficient * entry
        return tuple(result)

    def matmul(self, other: RatMatrix) -> RatMatrix:
        if self._ncols != other.nrows:
            raise DimensionError(
                f"Can't multiply {self.shape} and {other.shape} matrices"
            )
        return RatMatrix((other.vecmat(row) for row in self._rows), ncols=other.ncols)

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        return self.matmul(other)

    def __neg__(self) -> RatMatrix:
        return RatMatrix(((-v for v in row) for row in self._rows), ncols=self._ncols)

    def hstack(self, other: RatMatrix) -> RatMatrix:
        if self.nrows != other.nrows:
            raise DimensionError("Matrices must have the same number of rows")
        return RatMatrix(
            (a + b for a, b in zip(self._rows, other.rows, strict=True)),
            ncols=self._ncols + other.ncols,
        )

    def vstack(self, other: RatMatrix) -> RatMatrix:
        if self._ncols != other.ncols:
            raise DimensionError("Matrices must have the same number of columns")
        return RatMatrix(self._rows + other.rows, ncols=self._ncols)

    def to_numpy(self) -> np.ndarray:
        """Return an object array holding the fractions of this matrix."""
        array = np.empty(self.shape, dtype=object)
        for i, row in enumerate(self._rows):
            for j, entry in enumerate(row):
                array[i, j] = entry
        return array

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self._rows[i][j]

    def __iter__(self):  # noqa: ANN204
        return iter(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    def __repr__(self) -> str:
        body = ", ".join(
            "[" + ", ".join(str(v) for v in row) + "]" for row in self._rows
        )
        return f"{type(self).__name__}([{body}], ncols={self._ncols})"

    def __hash__(self) -> int:
        return hash((type(self), self._rows, self._ncols))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self._ncols == other._ncols and self._rows == other._rows


MatrixLike: TypeAlias = RatMatrix | Sequence[Sequence[RationalLike]] | np.ndarray


@dataclass(frozen=True, slots=True)
class AffineSolution:
    """Solution set ``point + span(kernel)`` of a solvable equation system."""

    point: Vector
    kernel: tuple[Vector, ...]


def _check_same_dim(u: Sequence[Fraction], v: Sequence[Fraction]) -> None:
    if len(u) != len(v):
        raise DimensionError(f"Dimension mismatch: {len(u)} != {len(v)}")


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    _check_same_dim(u, v)
    return sum((a * b for a, b in zip(u, v, strict=True) if a and b), _ZERO)


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    _check_same_dim(u, v)
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    _check_same_dim(u, v)
    return tuple(a - b for a, b in zip(u, v, strict=True))


def scale(v: Sequence[Fraction], factor: Fraction | int) -> Vector:
    return tuple(factor * a for a in v)


def is_zero(v: Iterable[Fraction]) -> bool:
    return not any(v)


def zero_vector(n: int) -> Vector:
    return (_ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(_ONE if j == i else _ZERO for j in range(n))


def primitive_scale(v: Sequence[Fraction]) -> Fraction:
    """Positive factor turning ``v`` into a primitive integer vector."""
    denominators = math.lcm(*(a.denominator for a in v)) if v else 1
    numerators = math.gcd(*(int(a * denominators) for a in v)) if v else 0
    if numerators == 0:
        return _ONE
    return Fraction(denominators, numerators)


def primitive(v: Sequence[Fraction]) -> Vector:
    """Scale ``v`` by a positive factor into a primitive integer vector.

    The direction is preserved, so this is the normal form of rays and of
    inequality rows. The zero vector is returned unchanged.
    """
    factor = primitive_scale(v)
    return tuple(a * factor for a in v)


def canonical_direction(v: Sequence[Fraction]) -> Vector:
    """Primitive integer form of the line spanned by ``v``, first nonzero positive."""
    w = primitive(v)
    for a in w:
        if a:
            return w if a > 0 else tuple(-b for b in w)
    return w


def _integer_bareiss(rows: list[list[int]]) -> int:
    """Fraction-free elimination; every intermediate value is a subdeterminant."""
    n = len(rows)
    sign = 1
    previous = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            row_i = rows[i]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - factor * rows[k][j]) // previous
            row_i[k] = 0
        previous = pivot
    return sign * rows[n - 1][n - 1]


def integer_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix given as nested sequences."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:  # noqa: PLR2004
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:  # noqa: PLR2004
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return _integer_bareiss([list(row) for row in rows])


def unimodular_reduction(matrix: MatrixLike) -> tuple[RatMatrix, int]:
    """Unimodular ``U`` and ``r = rank(M)`` with ``MU`` zero beyond its first ``r`` columns.

    Integer column operations bring ``M`` to lower echelon form. The last
    ``n - r`` columns of ``U`` are a lattice basis of ``ker(M) ∩ ℤⁿ``.

    Raises
    ------
    PreconditionError
        If ``M`` isn't integral.
    """
    M = RatMatrix.create(matrix)
    if not M.is_integral():
        raise PreconditionError("Unimodular reduction needs an integral matrix")
    m, n = M.shape
    # Column j holds column j of M on top of column j of U.
    columns = [
        [int(M[i, j]) for i in range(m)] + [int(i == j) for i in range(n)] for j in range(n)
    ]
    r = 0
    for i in range(m):
        while nonzero := [c for c in range(r, n) if columns[c][i]]:
            _, j = min((abs(columns[c][i]), c) for c in nonzero)
            columns[r], columns[j] = columns[j], columns[r]
            pivot = columns[r]
            for k in range(r + 1, n):
                if q := columns[k][i] // pivot[i]:
                    columns[k] = [x - q * y for x, y in zip(columns[k], pivot, strict=True)]
            if not any(columns[k][i] for k in range(r + 1, n)):
                r += 1
                break
    return RatMatrix.from_columns([column[m:] for column in columns], n), r


def determinant(matrix: MatrixLike) -> Fraction:
    """Exact determinant of a square matrix.

    Small matrices use the expansion formulas, larger ones fraction-free
    (Bareiss) elimination after clearing denominators row by row. The
    determinant of the ``0 × 0`` matrix is 1.

    Raises
    ------
    DimensionError
        If the matrix isn't square.
    """
    M = RatMatrix.create(matrix)
    if not M.is_square:
        raise DimensionError(f"Determinant of a non-square {M.shape} matrix")
    scales = [math.lcm(*(v.denominator for v in row)) if row else 1 for row in M.rows]
    integer_rows = [[int(v * s) for v in row] for row, s in zip(M.rows, scales, strict=True)]
    return Fraction(integer_determinant(integer_rows), math.prod(scales))


def rref(matrix: MatrixLike) -> tuple[RatMatrix, tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns, by exact Gauss-Jordan."""
    M = RatMatrix.create(matrix)
    rows = [list(row) for row in M.rows]
    pivots: list[int] = []
    r = 0
    for col in range(M.ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][col]
        if pivot != 1:
            rows[r] = [v / pivot for v in rows[r]]
        for i, row in enumerate(rows):
            if i != r and row[col]:
                factor = row[col]
                rows[i] = [a - factor * b for a, b in zip(row, rows[r], strict=True)]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return RatMatrix(rows, ncols=M.ncols), tuple(pivots)


def rank(matrix: MatrixLike) -> int:
    return len(rref(matrix)[1])


def kernel_basis(matrix: MatrixLike) -> tuple[Vector, ...]:
    """Basis of ``ker(M) = {x : Mx = 0}`` in canonical primitive integer form.

    Each basis vector is scaled to a primitive integer vector whose first nonzero
    entry is positive. The basis has ``n - rank(M)`` elements.
    """
    M = RatMatrix.create(matrix)
    reduced, pivots = rref(M)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.ncols):
        if free in pivot_set:
            continue
        v = [_ZERO] * M.ncols
        v[free] = _ONE
        for i, p in enumerate(pivots):
            v[p] = -reduced[i, free]
        basis.append(canonical_direction(v))
    return tuple(basis)


def solve_affine(matrix: MatrixLike, rhs: VectorLike) -> AffineSolution | None:
    """Solve ``Ax = b`` exactly.

    Returns
    -------
    AffineSolution or None
        One solution (free variables set to zero) together with a kernel basis
        of ``A``, or ``None`` if the system is inconsistent.
    """
    A = RatMatrix.create(matrix)
    b = as_vector(rhs)
    if len(b) != A.nrows:
        raise DimensionError(f"Expected a right-hand side of dimension {A.nrows}")
    augmented = A.hstack(RatMatrix(((v,) for v in b), ncols=1))
    reduced, pivots = rref(augmented)
    if pivots and pivots[-1] == A.ncols:
        return None
    point = [_ZERO] * A.ncols
    for i, p in enumerate(pivots):
        point[p] = reduced[i, A.ncols]
    return AffineSolution(tuple(point), kernel_basis(A))


def cramer_solve(matrix: MatrixLike, rhs: VectorLike) -> Vector:
    """Unique solution of ``Ax = b`` for a regular square ``A``.

    The components equal the determinant quotients of Cramer's rule; they are
    computed by exact Gauss-Jordan elimination, which yields the same values.

    Raises
    ------
    DimensionError
        If ``A`` isn't square or ``b`` has the wrong dimension.
    SingularMatrixError
        If ``A`` is singular.
    """
    A = RatMatrix.create(matrix)
    if not A.is_square:
        raise DimensionError(f"Cramer's rule needs a square matrix, got {A.shape}")
    solution = solve_affine(A, rhs)
    if solution is None or solution.kernel:
        raise SingularMatrixError("The matrix is singular")
    return solution.point


def inverse(matrix: MatrixLike) -> RatMatrix:
    A = RatMatrix.create(matrix)
    if not A.is_square:
        raise DimensionError(f"Only square matrices are invertible, got {A.shape}")
    n = A.nrows
    reduced, pivots = rref(A.hstack(RatMatrix.identity(n)))
    if pivots[:n] != tuple(range(n)):
        raise SingularMatrixError("The matrix is singular")
    return reduced.submatrix(range(n), range(n, 2 * n))


def _scalar_length(alpha: Fraction) -> int:
    # ⌈log2(k + 1)⌉ == k.bit_length() for k ≥ 0
    return 1 + abs(alpha.numerator).bit_length() + alpha.denominator.bit_length()


@overload
def encoding_length(x: RationalLike) -> int: ...


@overload
def encoding_length(x: Sequence[RationalLike]) -> int: ...


@overload
def encoding_length(x: RatMatrix) -> int: ...


def encoding_length(x):  # noqa: ANN001, ANN201
    """Encoding length of a rational, a vector or a matrix.

    * ``⟨p/q⟩ = 1 + ⌈log2(|p| + 1)⌉ + ⌈log2(|q| + 1)⌉`` for ``p, q`` coprime.
    * ``⟨v⟩ = n + Σ ⟨v_j⟩`` for a vector of dimension ``n``.
    * ``⟨M⟩ = mn + Σ Σ ⟨M_ij⟩`` for an ``m × n`` matrix.
    """
    if isinstance(x, RatMatrix):
        return x.nrows * x.ncols + sum(_scalar_length(v) for row in x for v in row)
    if isinstance(x, Fraction | int | str):
        return _scalar_length(as_rational(x))
    v = as_vector(x)
    return len(v) + sum(_scalar_length(a) for a in v)


def max_encoding_length(
    x: RationalLike | RatMatrix | Sequence[RationalLike] | Iterable[Sequence[Fraction]],
) -> int:
    """``⟨M⟩_max`` (maximum entry length) of a matrix, vector or set of vectors."""
    if isinstance(x, Fraction | int | str):
        return _scalar_length(as_rational(x))
    if isinstance(x, RatMatrix):
        return max((_scalar_length(v) for row in x for v in row), default=0)
    entries: list[Fraction] = []
    for item in x:
        if isinstance(item, Fraction | int | str):
            entries.append(as_rational(item))
        else:
            entries.extend(as_vector(item))
    return max((_scalar_length(v) for v in entries), default=0)


def delta_set(
    matrix: MatrixLike, max_order: int | None = None, limits: Limits | None = None
) -> frozenset[Fraction]:
    """The set ``Δ(M)`` of quotients of (signed) subdeterminants.

    ``δ(M)`` collects the determinants of all square submatrices of order at most
    ``max_order`` (including the empty submatrix, with determinant 1); the result
    is ``{p/q : p, q ∈ δ(M) ∪ -δ(M), q ≠ 0}``.

    Raises
    ------
    DimensionError
        If ``max_order`` exceeds ``min(m, n)``.
    ResourceLimitError
        If more than ``limits.max_subsets`` submatrices would be enumerated.
    """
    M = RatMatrix.create(matrix)
    limits = Limits.resolve(limits)
    m, n = M.shape
    top = min(m, n) if max_order is None else max_order
    if top < 0 or top > min(m, n):
        raise DimensionError(f"max_order must be between 0 and {min(m, n)}")
    count = sum(math.comb(m, k) * math.comb(n, k) for k in range(1, top + 1))
    if count > limits.max_subsets:
        raise ResourceLimitError(
            f"delta_set would enumerate {count} submatrices (max_subsets="
            f"{limits.max_subsets})"
        )
    logger.trace("Enumerating {} submatrices of a {}x{} matrix", count, m, n)
    determinants = {_ONE}
    for k in range(1, top + 1):
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                determinants.add(determinant(M.submatrix(rows, cols)))
    signed = determinants | {-d for d in determinants}
    return frozenset(p / q for p in signed for q in signed if q)


def encoding_bound_holds(
    matrix: MatrixLike,
    constant: int = ENCODING_CONSTANT,
    limits: Limits | None = None,
) -> bool:
    """Check ``⟨α⟩ ≤ C·n²·⟨M⟩_max`` for every ``α`` in ``Δ(M)``."""
    M = RatMatrix.create(matrix)
    bound = constant * M.ncols**2 * max_encoding_length(M)
    return all(encoding_length(alpha) <= bound for alpha in delta_set(M, limits=limits))
