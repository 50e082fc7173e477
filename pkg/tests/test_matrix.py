"""Tests for exact and float linear algebra."""

from random import Random

import numpy as np
import pytest
from sympy import QQ, Rational, sqrt

from akverify.core.errors import (
    DimensionError,
    ModeMismatchError,
    NotPositiveDefiniteError,
)
from akverify.core.matrix import (
    MAX_SIZE,
    Matrix,
    NoSolution,
    Vector,
    canonical,
    is_positive_definite,
    lower_triangular_inverse,
    nullspace,
    orthonormal_coframe,
    over_qq,
    random_rational,
    solve_linear,
)
from akverify.core.scalar import EXACT, float_mode


class TestVector:
    """Test vector construction and arithmetic."""

    def test_arithmetic(self):
        """Sum, difference, scaling and dot product."""
        u = Vector([1, 2, 3])
        v = Vector([Rational(1, 2), 0, -1])
        assert (u + v).entries == (Rational(3, 2), 2, 2)
        assert (u - v).entries == (Rational(1, 2), 2, 4)
        assert u.scale(Rational(1, 3)).entries == (Rational(1, 3), Rational(2, 3), 1)
        assert u.dot(v) == Rational(-5, 2)

    def test_length_mismatch(self):
        """Vectors of different lengths do not add."""
        with pytest.raises(DimensionError):
            Vector([1, 2]) + Vector([1, 2, 3])

    def test_too_long(self):
        """Vectors are small."""
        with pytest.raises(DimensionError):
            Vector([0] * (MAX_SIZE + 1))

    def test_out_of_range(self):
        """Access outside the vector is an error, never silent."""
        with pytest.raises(DimensionError):
            Vector([1, 2])[5]

    def test_basis(self):
        """Standard basis vectors are 0-based."""
        assert Vector.basis(4, 2).entries == (0, 0, 1, 0)
        with pytest.raises(DimensionError):
            Vector.basis(4, 4)

    def test_mode_mixing(self):
        """Exact and float vectors do not combine."""
        with pytest.raises(ModeMismatchError):
            Vector([1, 2]) + Vector([1, 2], float_mode())


class TestMatrix:
    """Test matrix construction and operations."""

    def test_ragged_rows(self):
        """All rows have the same width."""
        with pytest.raises(DimensionError, match="Ragged"):
            Matrix([[1, 2], [3]])

    def test_index_out_of_range(self):
        """Out-of-range access raises."""
        with pytest.raises(DimensionError, match="out of range"):
            Matrix.identity(2)[2, 0]

    def test_matmul_and_transpose(self):
        """Products and transposes."""
        A = Matrix([[1, 2], [3, 4]])
        B = Matrix([[0, 1], [1, 0]])
        assert (A @ B).entries == ((2, 1), (4, 3))
        assert A.T.entries == ((1, 3), (2, 4))
        assert (A @ Vector([1, 1])).entries == (3, 7)

    def test_products_return_rationals(self):
        """Exact products come back as sympy rationals."""
        A = Matrix([[Rational(1, 2), 1], [0, Rational(2, 3)]])
        product = A @ A

        assert product.entries == ((Rational(1, 4), Rational(7, 6)), (0, Rational(4, 9)))
        assert all(isinstance(x, Rational) for row in product.entries for x in row)

    def test_radical_product(self):
        """Products with radical entries stay exact."""
        A = Matrix([[sqrt(2), 0], [0, 1]])

        assert (A @ A).entries == ((2, 0), (0, 1))
        assert (A @ Vector([sqrt(2), 1])).entries == (2, 1)

    def test_shape_mismatch(self):
        """Incompatible shapes do not multiply."""
        with pytest.raises(DimensionError, match="Cannot multiply"):
            Matrix([[1, 2, 3]]) @ Matrix([[1, 2, 3]])

    def test_det_and_inverse(self):
        """Exact inverse of a unimodular matrix."""
        A = Matrix([[2, 1], [1, 1]])
        assert A.det() == 1
        assert A.inverse().entries == ((1, -1), (-1, 2))
        assert (A @ A.inverse()).equals(Matrix.identity(2))

    def test_singular_inverse(self):
        """Singular matrices have no inverse."""
        with pytest.raises(DimensionError, match="singular"):
            Matrix([[1, 2], [2, 4]]).inverse()

    def test_rank_and_trace(self):
        """Rank and trace of a small matrix."""
        A = Matrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
        assert A.rank() == 2
        assert A.trace() == 6

    def test_submatrix(self):
        """Rows and columns are selected in the given order."""
        A = Matrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        assert A.submatrix([0, 2], [1, 2]).entries == ((2, 3), (8, 9))

    def test_from_columns(self):
        """Columns become matrix columns."""
        A = Matrix.from_columns([Vector([1, 2]), Vector([3, 4])])
        assert A.entries == ((1, 3), (2, 4))
        assert A.col(1).entries == (3, 4)

    def test_float_equality_within_tolerance(self):
        """Float matrices compare within tolerance."""
        mode = float_mode(1e-9)
        A = Matrix([[1.0, 0.0], [0.0, 1.0]], mode)
        B = Matrix([[1.0 + 1e-12, 0.0], [0.0, 1.0]], mode)
        assert A.equals(B)
        assert A != B

    def test_to_float(self):
        """Conversion keeps values."""
        A = Matrix([[Rational(1, 2)]]).to_float(1e-9)
        assert A[0, 0] == 0.5
        assert A.mode.kind == "float"


class TestLinearSystems:
    """Test nullspace and solve."""

    def test_nullspace(self):
        """The kernel has dimension cols - rank and is annihilated."""
        A = Matrix([[1, 2, 3], [2, 4, 6]])
        basis = nullspace(A)
        assert len(basis) == 2
        for v in basis:
            assert (A @ v).is_zero()

    def test_nullspace_trivial(self):
        """Invertible matrices have zero kernel."""
        assert nullspace(Matrix.identity(3)) == []

    def test_solve_unique(self):
        """Unique solutions are exact."""
        x = solve_linear(Matrix([[2, 1], [1, 3]]), Vector([3, 5]))
        assert isinstance(x, Vector)
        assert x.entries == (Rational(4, 5), Rational(7, 5))

    def test_solve_inconsistent(self):
        """Inconsistent systems return a value, not an exception."""
        result = solve_linear(Matrix([[1, 1], [1, 1]]), Vector([1, 2]))
        assert isinstance(result, NoSolution)

    def test_radical_nullspace(self):
        """Kernels over radicals are decided exactly."""
        A = Matrix([[1, sqrt(2)], [sqrt(2), 2]])
        assert A.det() == 0
        basis = nullspace(A)
        assert len(basis) == 1
        assert (A @ basis[0]).is_zero()

    def test_radical_solve(self):
        """A radical system has the exact solution."""
        x = solve_linear(Matrix([[sqrt(2), 0], [1, 1]]), Vector([2, 0]))
        assert x.entries == (sqrt(2), -sqrt(2))

    def test_float_solve_and_det(self):
        """Float mode runs on numpy within the tolerance."""
        mode = float_mode(1e-9)
        A = Matrix([[2.0, 1.0], [1.0, 3.0]], mode)
        assert A.det() == pytest.approx(5.0)
        x = solve_linear(A, Vector([3.0, 5.0], mode))
        assert x.entries == pytest.approx((0.8, 1.4))
        assert (A @ A.inverse()).equals(Matrix.identity(2, mode))

    def test_solve_rhs_mismatch(self):
        """The right-hand side must match the rows."""
        with pytest.raises(DimensionError):
            solve_linear(Matrix.identity(2), Vector([1, 2, 3]))


class TestCoframe:
    """Test positive definiteness and the triangular coframe."""

    def test_positive_definite(self):
        """Leading minors decide positive definiteness."""
        assert is_positive_definite(Matrix([[2, 1], [1, 1]]))
        assert not is_positive_definite(Matrix([[1, 2], [2, 1]]))
        assert not is_positive_definite(Matrix([[1, 1], [0, 1]]))

    def test_coframe_factorization(self):
        """gram = L^T L with L lower triangular."""
        gram = Matrix([[2, 1], [1, 1]])
        L = orthonormal_coframe(gram)
        assert L.entries == ((1, 0), (1, 1))
        assert (L.T @ L).equals(gram)

    def test_diagonal_coframe(self):
        """Diagonal Gram matrices give diagonal coframes."""
        L = orthonormal_coframe(Matrix.diag([4, 1, Rational(9, 4), 1]))
        assert L.entries[2][2] == Rational(3, 2)
        assert L.entries[0][0] == 2

    def test_radical_coframe(self):
        """Non-square pivots give exact square roots."""
        L = orthonormal_coframe(Matrix.diag([2, 1]))
        assert L[0, 0] == sqrt(2)
        assert L[1, 1] == 1

    def test_radical_coframe_offdiagonal(self):
        """An off-diagonal Gram matrix factors exactly through sqrt(2) and sqrt(6)."""
        gram = Matrix([[2, 1], [1, 2]])
        L = orthonormal_coframe(gram)
        assert L.entries == ((sqrt(6) / 2, 0), (sqrt(2) / 2, sqrt(2)))
        assert L.T @ L == gram

    def test_radical_frame_inverse(self):
        """The inverse of a radical coframe is exact."""
        L = orthonormal_coframe(Matrix([[2, 1, 0], [1, 3, 1], [0, 1, 5]]))
        assert (lower_triangular_inverse(L) @ L).equals(Matrix.identity(3))

    def test_float_coframe(self):
        """Float mode takes any root."""
        L = orthonormal_coframe(Matrix.diag([2.0, 1.0], float_mode()))
        assert abs(L[0, 0] ** 2 - 2.0) < 1e-12

    def test_not_spd(self):
        """Non-SPD Gram matrices are rejected."""
        with pytest.raises(NotPositiveDefiniteError):
            orthonormal_coframe(Matrix([[1, 2], [2, 1]]))

    def test_lower_triangular_inverse(self):
        """Forward substitution matches the general inverse."""
        L = Matrix([[2, 0, 0], [1, 3, 0], [Rational(1, 2), -1, 1]])
        assert lower_triangular_inverse(L).equals(L.inverse())

    def test_random_rational_nonzero(self):
        """nonzero=True never returns 0."""
        rng = Random(0)
        assert all(random_rational(rng, 1, nonzero=True) != 0 for _ in range(50))


class TestGroundDomain:
    """Test the conversion of exact arrays to the rational ground domain."""

    def test_rational_arrays(self):
        """Rational arrays and scalars convert together."""
        arr = np.array([[Rational(1, 2), 3]], dtype=object)
        grounded, half = over_qq(EXACT, arr, Rational(1, 2))

        assert grounded[0, 0] == QQ(1, 2)
        assert half == QQ(1, 2)
        assert canonical(grounded[0, 0] * half) == Rational(1, 4)

    def test_radical_keeps_everything(self):
        """One radical entry leaves every value as given."""
        rational = np.array([Rational(1, 2)], dtype=object)
        radical = np.array([sqrt(2)], dtype=object)
        values = over_qq(EXACT, rational, radical)

        assert values[0][0] is rational[0]
        assert values[1][0] is radical[0]

    def test_float_mode_untouched(self):
        """Float arrays pass through."""
        arr = np.array([0.5, 1.5])

        assert over_qq(float_mode(), arr)[0] is arr
