from fractions import Fraction

import numpy as np
import pytest

from ratpoly.config import Limits
from ratpoly.errors import (
    DimensionError,
    PreconditionError,
    ResourceLimitError,
    SingularMatrixError,
)
from ratpoly.linalg import (
    RatMatrix,
    canonical_direction,
    cramer_solve,
    delta_set,
    determinant,
    encoding_bound_holds,
    encoding_length,
    inverse,
    kernel_basis,
    max_encoding_length,
    primitive,
    rank,
    rref,
    solve_affine,
    unimodular_reduction,
)


def _random_rational_matrix(rng: np.random.Generator, m: int, n: int) -> RatMatrix:
    numerators = rng.integers(-7, 8, size=(m, n)).tolist()
    denominators = rng.integers(1, 5, size=(m, n)).tolist()
    return RatMatrix(
        [
            [Fraction(p, q) for p, q in zip(row_p, row_q, strict=True)]
            for row_p, row_q in zip(numerators, denominators, strict=True)
        ],
        ncols=n,
    )


def test_create_rejects_floats_and_ragged_rows() -> None:
    with pytest.raises(TypeError):
        RatMatrix.create(np.eye(2))
    with pytest.raises(DimensionError):
        RatMatrix.create([[1, 2], [3]])
    with pytest.raises(DimensionError):
        RatMatrix([])


def test_empty_matrix_keeps_its_shape() -> None:
    M = RatMatrix([], ncols=3)
    assert M.shape == (0, 3)
    assert M.transpose().shape == (3, 0)


@pytest.mark.parametrize(
    ("matrix", "expected"),
    [
        (RatMatrix([], ncols=0), Fraction(1)),
        (RatMatrix.identity(3), Fraction(1)),
        (RatMatrix.create([[1, 2], [3, 4]]), Fraction(-2)),
        (RatMatrix.create([["1/2", 0], [0, "2/3"]]), Fraction(1, 3)),
        (RatMatrix.create([[1, 1, 0], [1, 0, 1], [0, 1, 1]]), Fraction(-2)),
        (
            RatMatrix.create([[2, 0, 0, 0], [0, 3, 0, 0], [0, 0, 1, 5], [0, 0, 0, 7]]),
            Fraction(42),
        ),
    ],
)
def test_determinant(matrix: RatMatrix, expected: Fraction) -> None:
    assert determinant(matrix) == expected


def test_determinant_of_non_square_matrix() -> None:
    with pytest.raises(DimensionError):
        determinant([[1, 2, 3]])


def test_determinant_properties(rng: np.random.Generator) -> None:
    for _ in range(50):
        M = _random_rational_matrix(rng, 3, 3)
        N = _random_rational_matrix(rng, 3, 3)
        assert determinant(M @ N) == determinant(M) * determinant(N)
        swapped = RatMatrix([M.row(1), M.row(0), M.row(2)], ncols=3)
        assert determinant(swapped) == -determinant(M)


def test_bareiss_agrees_with_products(rng: np.random.Generator) -> None:
    for _ in range(20):
        M = _random_rational_matrix(rng, 5, 5)
        N = _random_rational_matrix(rng, 5, 5)
        assert determinant(M @ N) == determinant(M) * determinant(N)


@pytest.mark.parametrize(
    ("A", "b", "expected"),
    [
        ([[1, 0], [0, 1]], (5, -7), (Fraction(5), Fraction(-7))),
        ([[2, 0], [0, 3]], (1, 1), (Fraction(1, 2), Fraction(1, 3))),
        ([[1, 1], [1, -1]], (1, 0), (Fraction(1, 2), Fraction(1, 2))),
    ],
)
def test_cramer_solve(A: list[list[int]], b: tuple[int, ...], expected: tuple) -> None:
    x = cramer_solve(A, b)
    assert x == expected
    assert RatMatrix.create(A).matvec(x) == tuple(Fraction(v) for v in b)


def test_cramer_solve_errors() -> None:
    with pytest.raises(SingularMatrixError):
        cramer_solve([[1, 2], [2, 4]], (1, 2))
    with pytest.raises(DimensionError):
        cramer_solve([[1, 2]], (1,))
    with pytest.raises(DimensionError):
        cramer_solve([[1, 0], [0, 1]], (1, 2, 3))


def test_kernel_basis() -> None:
    assert kernel_basis([[1, 1]]) == ((Fraction(1), Fraction(-1)),)
    assert kernel_basis(RatMatrix.identity(2)) == ()
    M = RatMatrix.create([[1, 2, 3]])
    basis = kernel_basis(M)
    assert len(basis) == 2
    assert rank(basis) == 2
    for v in basis:
        assert M.matvec(v) == (0,)
        assert v == canonical_direction(v)


def test_unimodular_reduction(rng: np.random.Generator) -> None:
    U, r = unimodular_reduction([[2, 4]])
    assert r == 1
    assert U.column(1) == (-2, 1)
    U, r = unimodular_reduction([[2, 0, 1], [0, 2, 1]])
    assert r == 2
    assert U.column(2) in ((1, 1, -2), (-1, -1, 2))
    for _ in range(20):
        M = RatMatrix.create(rng.integers(-3, 4, size=(2, 4)))
        U, r = unimodular_reduction(M)
        assert r == rank(M)
        assert U.is_integral()
        assert abs(determinant(U)) == 1
        assert not any(any(column) for column in (M @ U).columns[r:])
    with pytest.raises(PreconditionError):
        unimodular_reduction([[Fraction(1, 2)]])


def test_rank_and_rref() -> None:
    assert rank(RatMatrix.identity(3)) == 3
    assert rank([[1, 2], [2, 4], [0, 0]]) == 1
    reduced, pivots = rref([[2, 4], [1, 3]])
    assert reduced == RatMatrix.identity(2)
    assert pivots == (0, 1)


def test_solve_affine() -> None:
    solution = solve_affine([[1, 1]], (2,))
    assert solution is not None
    assert solution.point == (2, 0)
    assert solution.kernel == ((1, -1),)
    assert solve_affine([[1], [1]], (0, 1)) is None


def test_inverse() -> None:
    A = RatMatrix.create([[2, 1], [1, 1]])
    assert inverse(A) @ A == RatMatrix.identity(2)
    with pytest.raises(SingularMatrixError):
        inverse([[1, 1], [1, 1]])


@pytest.mark.parametrize(
    ("vector", "expected"),
    [
        ((Fraction(1, 2), Fraction(3, 4)), (2, 3)),
        ((Fraction(-4), Fraction(6)), (-2, 3)),
        ((Fraction(0), Fraction(0)), (0, 0)),
    ],
)
def test_primitive(vector: tuple[Fraction, ...], expected: tuple[int, ...]) -> None:
    assert primitive(vector) == expected


def test_canonical_direction_has_positive_leading_entry() -> None:
    assert canonical_direction((0, Fraction(-2), Fraction(4))) == (0, 1, -2)


@pytest.mark.parametrize(
    ("value", "expected"),
    [
        (Fraction(1, 2), 4),
        (Fraction(0), 2),
        ((Fraction(0), Fraction(0)), 6),
        (RatMatrix.create([[1, 0]]), 2 + 3 + 2),
    ],
)
def test_encoding_length(value: object, expected: int) -> None:
    assert encoding_length(value) == expected


def test_max_encoding_length() -> None:
    assert max_encoding_length(RatMatrix.create([[0, "1/2"], [7, 1]])) == 5
    assert max_encoding_length([(0, 1), ("-3/4",)]) == 6


@pytest.mark.parametrize(
    ("matrix", "expected"),
    [
        ([[1]], {Fraction(1), Fraction(-1)}),
        ([[2]], {Fraction(v) for v in (1, -1, 2, -2)} | {Fraction(1, 2), Fraction(-1, 2)}),
    ],
)
def test_delta_set(matrix: list[list[int]], expected: set[Fraction]) -> None:
    assert delta_set(matrix) == expected


def test_delta_set_of_square_matrix() -> None:
    delta = delta_set([[1, 2], [3, 4]])
    assert Fraction(-2) in delta
    assert Fraction(1, 2) in delta
    assert Fraction(4, 3) in delta
    assert delta_set([[1, 2], [3, 4]], max_order=1) <= delta
    with pytest.raises(DimensionError):
        delta_set([[1, 2]], max_order=2)
    with pytest.raises(ResourceLimitError):
        delta_set(RatMatrix.identity(4), limits=Limits(max_subsets=10))


def test_encoding_bound(rng: np.random.Generator) -> None:
    for _ in range(100):
        m, n = (int(v) for v in rng.integers(1, 5, size=2))
        M = _random_rational_matrix(rng, m, n)
        assert max_encoding_length(M) <= 8
        assert encoding_bound_holds(M)
