"""Nijenhuis tensor of a left-invariant almost-complex structure."""

from dataclasses import dataclass

from sympy import Rational

from akverify.core.matrix import Vector
from akverify.core.scalar import Scalar, ScalarMode
from akverify.hermitian.structure import AlmostHermitianStructure
from akverify.lie.algebra import LieAlgebra

# Calibrated once against N(f1, f2) = (b2^2 + b3^2)/(2 a1) f2 on the
# conformally flat almost-Kahler family of r2prime; see docs/conventions.md.
NIJENHUIS_SCALE = Rational(1, 4)


def raw_nijenhuis(g: LieAlgebra, s: AlmostHermitianStructure, x: Vector, y: Vector) -> Vector:
    """``[JX, JY] - J[JX, Y] - J[X, JY] - [X, Y]`` without the scale factor."""
    J = s.J
    jx, jy = J @ x, J @ y
    return g.bracket(jx, jy) - J @ g.bracket(jx, y) - J @ g.bracket(x, jy) - g.bracket(x, y)


@dataclass(frozen=True)
class NijenhuisTensor:
    """``values[(i, j)] = N(e_i, e_j)`` for ``i < j``, already scaled."""

    structure: AlmostHermitianStructure
    values: dict
    scale: Scalar

    @property
    def mode(self) -> ScalarMode:
        return self.structure.mode

    @property
    def dim(self) -> int:
        return self.structure.dim

    def basis_value(self, i: int, j: int) -> Vector:
        if i == j:
            return Vector.zeros(self.dim, self.mode)
        if i < j:
            return self.values[(i, j)]
        return -self.values[(j, i)]

    def __call__(self, x: Vector, y: Vector) -> Vector:
        n = self.dim
        out = Vector.zeros(n, self.mode)
        for i in range(n):
            if not x.entries[i]:
                continue
            for j in range(n):
                coeff = x.entries[i] * y.entries[j]
                if coeff and i != j:
                    out = out + self.basis_value(i, j).scale(coeff)
        return out

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def frame_value(self, a: int, b: int) -> Vector:
        """``N(f_a, f_b)`` in frame coordinates."""
        m = self.structure.metric
        return m.frame_coordinates(self(m.frame_vector(a), m.frame_vector(b)))

    def naive_norm_squared(self) -> Scalar:
        """``sum_{a<b} |N(f_a, f_b)|^2`` in the orthonormal frame."""
        total = self.mode.zero
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                v = self.frame_value(a, b)
                total += v.dot(v)
        return total


def nijenhuis(g: LieAlgebra, s: AlmostHermitianStructure, scale: Scalar = NIJENHUIS_SCALE) -> NijenhuisTensor:
    """``N(X, Y) = scale * ([JX, JY] - J[JX, Y] - J[X, JY] - [X, Y])`` on basis pairs."""
    mode = s.mode
    n = s.dim
    k = mode.coerce(scale)
    basis = [Vector.basis(n, i, mode) for i in range(n)]
    values = {
        (i, j): raw_nijenhuis(g, s, basis[i], basis[j]).scale(k) for i in range(n) for j in range(i + 1, n)
    }
    return NijenhuisTensor(s, values, k)


def nijenhuis_norm_ratio(operational: Scalar, tensor: NijenhuisTensor) -> Scalar | None:
    """``operational / naive`` norm ratio; ``None`` when the naive norm vanishes."""
    naive = tensor.naive_norm_squared()
    if tensor.mode.is_zero(naive):
        return None
    return operational / naive
