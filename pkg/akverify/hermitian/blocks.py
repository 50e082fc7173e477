"""
W+ in a basis adapted to an almost-Hermitian structure.

For self-dual ``omega`` with coordinates ``c`` in the ``sigma`` basis of
Lambda+ (``|c| = 1``), the Householder reflection ``H = I - 2 v v^T / v^T v``
with ``v = c - e_1`` sends ``c`` to ``e_1`` and is rational. In the reflected
basis

    H W+ H = [[x,       W_omega^T         ],
              [W_omega, W_00 - (x/2) Id   ]]

and ``|W+|^2 = 2 |W_omega|^2 + |W_00|^2 + 3/2 x^2``. The operational
Nijenhuis norm is ``x - s/6``.
"""

from dataclasses import dataclass

from akverify.core.matrix import Matrix, Vector
from akverify.core.scalar import Scalar, ScalarMode
from akverify.geometry.hodge import CurvatureBlocks, OrientationMismatchError, curvature_blocks, sigma_coordinates
from akverify.geometry.metric import MetricFrame
from akverify.hermitian.structure import AlmostHermitianStructure
from akverify.lie.algebra import LieAlgebra


def householder_to_first_axis(c: Vector) -> Matrix:
    """Rational reflection ``H`` with ``H c = e_1`` for a unit vector ``c``."""
    mode = c.mode
    n = len(c)
    v = c - Vector.basis(n, 0, mode)
    identity = Matrix.identity(n, mode)
    if v.is_zero():
        return identity
    vv = v.dot(v)
    outer = Matrix._trusted([[a * b for b in v.entries] for a in v.entries], mode)
    return identity - outer.scale(2 / vv)


@dataclass(frozen=True)
class JBlockDecomposition:
    topleft: Scalar
    womega: Vector
    w00: Matrix
    reflection: Matrix
    coordinates: Vector
    scalar: Scalar

    @property
    def mode(self) -> ScalarMode:
        return self.w00.mode

    def reassemble(self) -> Matrix:
        """``H [[x, W_omega^T], [W_omega, W_00 - x/2]] H``."""
        mode = self.mode
        x = self.topleft
        half_x = x / 2
        a, b = self.womega.entries
        inner = Matrix._trusted(
            [
                [x, a, b],
                [a, self.w00[0, 0] - half_x, self.w00[0, 1]],
                [b, self.w00[1, 0], self.w00[1, 1] - half_x],
            ],
            mode,
        )
        return self.reflection @ inner @ self.reflection

    def norm_identity_rhs(self) -> Scalar:
        """``2 |W_omega|^2 + |W_00|^2 + 3/2 x^2``."""
        x = self.topleft
        return 2 * self.womega.dot(self.womega) + self.w00.frobenius_squared() + 3 * x * x / 2

    @property
    def nijenhuis_norm_squared(self) -> Scalar:
        """Operational ``|N_J|^2 = topleft - s/6``."""
        return self.topleft - self.scalar / 6


def wplus_J_blocks(
    g: LieAlgebra,
    m: MetricFrame,
    s: AlmostHermitianStructure,
    blocks: CurvatureBlocks | None = None,
) -> JBlockDecomposition:
    """
    Decompose W+ along ``omega`` and its complement in Lambda+.

    Raises:
        OrientationMismatchError: If ``omega`` is not self-dual for ``m``'s orientation.
    """
    if s.omega_orientation != m.orientation:
        raise OrientationMismatchError(
            f"omega is self-dual for orientation {s.omega_orientation}, metric has {m.orientation}; flip it first"
        )
    blocks = blocks if blocks is not None else curvature_blocks(g, m)
    c = sigma_coordinates(m, s.omega, self_dual=True)
    H = householder_to_first_axis(c)
    reflected = H @ blocks.wplus @ H
    x = reflected[0, 0]
    half_x = x / 2
    w00 = Matrix._trusted(
        [
            [reflected[1, 1] + half_x, reflected[1, 2]],
            [reflected[2, 1], reflected[2, 2] + half_x],
        ],
        m.mode,
    )
    return JBlockDecomposition(
        topleft=x,
        womega=Vector._trusted([reflected[1, 0], reflected[2, 0]], m.mode),
        w00=w00,
        reflection=H,
        coordinates=c,
        scalar=blocks.scalar,
    )
