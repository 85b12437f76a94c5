import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from torus_rigidity.errors import DimensionError, SingularMatrixError
from torus_rigidity.exact_linalg import (IntMatrix, RatMatrix, det, identity, inverse_rational,
                                         mat_mul, mat_pow, rank_rational, solve_rational,
                                         stack_rows, vec_mat)


def cofactor_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def square(n, lo=-5, hi=5):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                    min_size=n, max_size=n).map(IntMatrix.from_rows)


M2 = IntMatrix.from_rows([[2, 1], [1, 1]])


class TestDet:
    def test_examples(self):
        assert det(IntMatrix.from_rows([[1]])) == 1
        assert det(M2) == 1
        assert det(IntMatrix.from_rows([[-2, 1], [1, -3]])) == 5

    def test_zero_pivot_needs_row_swap(self):
        assert det(IntMatrix.from_rows([[0, 1], [1, 0]])) == -1
        assert det(IntMatrix.from_rows([[0, 0, 1], [0, 1, 0], [1, 0, 0]])) == -1

    def test_non_square_rejected(self):
        with pytest.raises(DimensionError):
            det(IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]]))

    def test_rational_matrix(self):
        assert det(RatMatrix.from_rows([[Fraction(1, 2), 0], [0, Fraction(2, 3)]])) == Fraction(1, 3)

    def test_cofactor_oracle_random(self):
        rng = random.Random(20240611)
        for _ in range(1200):
            n = rng.randint(1, 4)
            rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
            assert det(IntMatrix.from_rows(rows)) == cofactor_det(rows)

    @settings(max_examples=200)
    @given(square(3), square(3))
    def test_multiplicative(self, a, b):
        assert det(mat_mul(a, b)) == det(a) * det(b)


class TestConstruction:
    def test_zero_dimension_rejected(self):
        with pytest.raises(DimensionError):
            IntMatrix.from_rows([])
        with pytest.raises(DimensionError):
            IntMatrix.from_rows([[]])

    def test_ragged_rejected(self):
        with pytest.raises(DimensionError):
            IntMatrix.from_rows([[1, 2], [3]])

    def test_non_integer_entries_rejected(self):
        with pytest.raises(TypeError):
            IntMatrix.from_rows([[1.5]])
        with pytest.raises(TypeError):
            IntMatrix.from_rows([[True]])

    def test_rationals_canonical(self):
        m = RatMatrix.from_rows([[Fraction(2, 4), Fraction(-3, -6)]])
        assert m[0, 0] == Fraction(1, 2) and m[0, 0].denominator == 2
        assert m == RatMatrix.from_rows([[Fraction(1, 2), Fraction(1, 2)]])


class TestProducts:
    def test_mat_mul_examples(self):
        assert mat_mul(identity(2), M2) == M2
        assert mat_mul(M2, M2) == IntMatrix.from_rows([[5, 3], [3, 2]])
        swap = IntMatrix.from_rows([[0, 1], [1, 0]])
        assert mat_mul(swap, swap) == identity(2)

    def test_mat_mul_mismatch(self):
        with pytest.raises(DimensionError):
            mat_mul(IntMatrix.from_rows([[1, 2]]), IntMatrix.from_rows([[1, 2]]))

    def test_mat_pow_examples(self):
        assert mat_pow(M2, 0) == identity(2)
        assert mat_pow(M2, 2) == IntMatrix.from_rows([[5, 3], [3, 2]])
        assert mat_pow(M2, 3) == IntMatrix.from_rows([[13, 8], [8, 5]])

    def test_mat_pow_large_exponent_is_exact(self):
        # Fibonacci numbers: M2^j = [[F(2j+1), F(2j)], [F(2j), F(2j-1)]]
        fib = [0, 1]
        while len(fib) < 402:
            fib.append(fib[-1] + fib[-2])
        p = mat_pow(M2, 200)
        assert p == IntMatrix.from_rows([[fib[401], fib[400]], [fib[400], fib[399]]])

    @settings(max_examples=100)
    @given(square(2, -3, 3), st.integers(0, 6), st.integers(0, 6))
    def test_pow_addition(self, m, i, j):
        assert mat_pow(m, i + j) == mat_mul(mat_pow(m, i), mat_pow(m, j))

    def test_vec_mat_is_row_times_matrix(self):
        assert vec_mat((1, 0), M2) == (2, 1)
        assert vec_mat((0, 1), IntMatrix.from_rows([[1, 2], [3, 4]])) == (3, 4)


class TestInverse:
    def test_examples(self):
        assert inverse_rational(identity(2)) == identity(2)
        assert inverse_rational(IntMatrix.from_rows([[2, 1], [5, 3]])) == \
            IntMatrix.from_rows([[3, -1], [-5, 2]])
        half = Fraction(1, 2)
        assert inverse_rational(IntMatrix.from_rows([[2, 0], [0, 2]])) == \
            RatMatrix.from_rows([[half, 0], [0, half]])

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            inverse_rational(IntMatrix.from_rows([[1, 2], [2, 4]]))

    @settings(max_examples=150)
    @given(square(3))
    def test_product_is_identity(self, m):
        if det(m) != 0:
            assert mat_mul(m, inverse_rational(m)) == identity(3)
            assert mat_mul(inverse_rational(m), m) == identity(3)


class TestStackAndRank:
    def test_stack_examples(self):
        assert stack_rows([(1, 0), (0, 1)]) == identity(2)
        assert stack_rows([(2, 1), (5, 3)]) == IntMatrix.from_rows([[2, 1], [5, 3]])

    def test_stack_wrong_count(self):
        with pytest.raises(DimensionError):
            stack_rows([(1, 2, 3), (4, 5, 6)])
        with pytest.raises(DimensionError):
            stack_rows([(1, 2), (3,)])

    def test_rank_examples(self):
        assert rank_rational(identity(3)) == 3
        assert rank_rational(IntMatrix.from_rows([[1, 0], [2, 0]])) == 1
        assert rank_rational(IntMatrix.from_rows([[2, 1], [5, 3]])) == 2

    @settings(max_examples=200)
    @given(square(3, -2, 2))
    def test_full_rank_iff_nonsingular(self, m):
        assert (rank_rational(m) == 3) == (det(m) != 0)

    def test_solve(self):
        x = solve_rational(IntMatrix.from_rows([[2, 1], [1, 3]]), [3, 5])
        assert x == (Fraction(4, 5), Fraction(7, 5))
