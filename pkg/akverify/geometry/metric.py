"""
Left-invariant metrics with an orientation.

A metric is stored as its Gram matrix ``g_ij = g(e_i, e_j)``. The
orthonormal coframe ``L`` satisfies ``gram = L^T L`` with ``L`` lower
triangular; row ``i`` of ``L`` is ``f^i`` and column ``j`` of ``L^-1`` is
the frame vector ``f_j``.
"""

from dataclasses import dataclass, field
from functools import cached_property
from random import Random

from sympy import Rational

from akverify.core.errors import DimensionError, NotPositiveDefiniteError
from akverify.core.matrix import (
    Matrix,
    Vector,
    is_positive_definite,
    lower_triangular_inverse,
    orthonormal_coframe,
    random_rational,
)
from akverify.core.scalar import EXACT, Scalar, ScalarMode


@dataclass(frozen=True)
class MetricFrame:
    """SPD Gram matrix plus an orientation sign relative to ``e^1 ^ .. ^ e^n``."""

    gram: Matrix
    orientation: int = 1
    given_coframe: Matrix | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise ValueError(f"Orientation must be +1 or -1, got {self.orientation}")
        if not self.gram.is_square():
            raise DimensionError(f"Gram matrix must be square, got {self.gram.shape}")
        if not is_positive_definite(self.gram):
            raise NotPositiveDefiniteError("Gram matrix is not symmetric positive definite")

    @classmethod
    def identity(cls, dim: int = 4, mode: ScalarMode = EXACT, orientation: int = 1) -> "MetricFrame":
        return cls.from_coframe(Matrix.identity(dim, mode), orientation)

    @classmethod
    def diagonal(cls, values: list[int | Scalar], mode: ScalarMode = EXACT, orientation: int = 1) -> "MetricFrame":
        return cls(Matrix.diag(values, mode), orientation)

    @classmethod
    def from_coframe(cls, coframe: Matrix, orientation: int = 1) -> "MetricFrame":
        """
        Metric whose orthonormal coframe is ``coframe``.

        Raises:
            NotPositiveDefiniteError: If the coframe is not lower triangular
                with a positive diagonal.
        """
        n = coframe.nrows
        if not coframe.is_square():
            raise DimensionError("Coframe must be square")
        for i in range(n):
            if coframe[i, i] <= 0:
                raise NotPositiveDefiniteError(f"Coframe diagonal entry {i + 1} is not positive")
            for j in range(i + 1, n):
                if not coframe.mode.is_zero(coframe[i, j]):
                    raise DimensionError("Coframe must be lower triangular")
        return cls(coframe.T @ coframe, orientation, coframe)

    @property
    def dim(self) -> int:
        return self.gram.nrows

    @property
    def mode(self) -> ScalarMode:
        return self.gram.mode

    @cached_property
    def gram_inverse(self) -> Matrix:
        return self.gram.inverse()

    @cached_property
    def coframe(self) -> Matrix:
        """Lower-triangular ``L`` with ``gram = L^T L``; exact square roots in exact mode."""
        if self.given_coframe is not None:
            return self.given_coframe
        return orthonormal_coframe(self.gram)

    @cached_property
    def frame(self) -> Matrix:
        """Columns are the orthonormal frame vectors ``f_j`` in the ``e`` basis."""
        return lower_triangular_inverse(self.coframe)

    @cached_property
    def volume_factor(self) -> Scalar:
        """``sqrt(det g) = det L``."""
        L = self.coframe
        result = self.mode.one
        for i in range(self.dim):
            result *= L[i, i]
        return self.mode.reduce(result)

    def frame_vector(self, j: int) -> Vector:
        return self.frame.col(j)

    def frame_vectors(self) -> list[Vector]:
        return self.frame.columns()

    def inner(self, u: Vector, v: Vector) -> Scalar:
        return u.dot(self.gram @ v)

    def norm_squared(self, u: Vector) -> Scalar:
        return self.inner(u, u)

    def frame_coordinates(self, u: Vector) -> Vector:
        """Coordinates of ``u`` in the orthonormal frame: ``f^i(u)``."""
        return self.coframe @ u

    def flipped(self) -> "MetricFrame":
        """Same metric with the opposite orientation."""
        return MetricFrame(self.gram, -self.orientation, self.given_coframe)

    def with_orientation(self, orientation: int) -> "MetricFrame":
        return self if orientation == self.orientation else self.flipped()

    def scaled(self, c: int | Scalar) -> "MetricFrame":
        """The metric ``c^2 g`` (``c > 0``)."""
        c = self.mode.coerce(c)
        if c <= 0:
            raise ValueError("Scale factor must be positive")
        return MetricFrame.from_coframe(self.coframe.scale(c), self.orientation)

    def to_float(self, tol: float) -> "MetricFrame":
        coframe = self.given_coframe.to_float(tol) if self.given_coframe is not None else None
        return MetricFrame(self.gram.to_float(tol), self.orientation, coframe)


def random_coframe(rng: Random, dim: int = 4, bound: int = 3, mode: ScalarMode = EXACT) -> Matrix:
    """Random lower-triangular rational coframe with positive diagonal."""
    rows = []
    for i in range(dim):
        row = []
        for j in range(dim):
            if j < i:
                row.append(random_rational(rng, bound))
            elif j == i:
                row.append(Rational(rng.randint(1, bound), rng.randint(1, bound)))
            else:
                row.append(Rational(0))
        rows.append(row)
    return Matrix(rows, mode)


def random_metric(rng: Random, dim: int = 4, bound: int = 3, mode: ScalarMode = EXACT) -> MetricFrame:
    """Random SPD metric ``L^T L`` with a random rational coframe."""
    return MetricFrame.from_coframe(random_coframe(rng, dim, bound, mode), orientation=rng.choice((1, -1)))
