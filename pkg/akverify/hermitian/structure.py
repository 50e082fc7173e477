"""
Almost-Hermitian structures ``(g, J, omega)`` on a four-dimensional Lie algebra.

``J`` acts on column vectors (column ``i`` is ``J e_i``) and
``omega(X, Y) = g(JX, Y)``, so ``Omega = J^T G`` and ``J = -G^-1 Omega``
for a compatible pair.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import Rational

from akverify.core.errors import AkverifyError, DimensionError
from akverify.core.matrix import Matrix, Vector, nullspace
from akverify.core.scalar import EXACT, Scalar, ScalarMode
from akverify.geometry.hodge import PAIRS, lambda_bases
from akverify.geometry.metric import MetricFrame
from akverify.lie.algebra import LieAlgebra
from akverify.lie.forms import InvariantForm, differential_matrix, exterior_d, top_coefficient, wedge


class DegenerateFormError(AkverifyError):
    """Raised when a 2-form has ``omega ^ omega = 0``."""

    pass


@dataclass(frozen=True)
class Incompatible:
    """The endomorphism induced by ``omega`` does not square to ``-Id``; ``defect = A^2 + Id``."""

    endomorphism: Matrix
    defect: Matrix
    reason: str = "A^2 != -Id"


def orientation_of(omega: InvariantForm) -> int:
    """Sign of ``omega ^ omega`` against ``e^1234``; 0 when degenerate."""
    if omega.dim != 4 or omega.degree != 2:
        raise DimensionError("orientation_of takes a 2-form in dimension 4")
    top = top_coefficient(wedge(omega, omega))
    if omega.mode.is_zero(top):
        return 0
    return 1 if top > 0 else -1


def flip_orientation(m: MetricFrame) -> MetricFrame:
    """The same metric with the opposite volume form."""
    return m.flipped()


def induced_endomorphism(m: MetricFrame, omega: InvariantForm) -> Matrix:
    """``A`` with ``omega(X, Y) = g(AX, Y)``."""
    return -(m.gram_inverse @ omega.matrix())


@dataclass(frozen=True)
class AlmostHermitianStructure:
    """Compatible triple; the constructor checks ``J^2 = -Id``, ``J^T G J = G`` and ``Omega = J^T G``."""

    metric: MetricFrame
    J: Matrix
    omega: InvariantForm

    def __post_init__(self):
        n = self.metric.dim
        if self.J.shape != (n, n) or self.omega.dim != n or self.omega.degree != 2:
            raise DimensionError("Structure pieces have inconsistent dimensions")
        G = self.metric.gram
        identity = Matrix.identity(n, self.metric.mode)
        if not (self.J @ self.J + identity).is_zero():
            raise ValueError("J^2 != -Id")
        if not (self.J.T @ G @ self.J - G).is_zero():
            raise ValueError("J is not g-orthogonal")
        if not (self.J.T @ G - self.omega.matrix()).is_zero():
            raise ValueError("omega != g(J., .)")
        if n == 4 and orientation_of(self.omega) == 0:
            raise DegenerateFormError("omega ^ omega = 0")

    @property
    def dim(self) -> int:
        return self.metric.dim

    @property
    def mode(self) -> ScalarMode:
        return self.metric.mode

    @property
    def omega_orientation(self) -> int:
        """The orientation ``omega ^ omega`` induces; ``omega`` is self-dual for it."""
        return orientation_of(self.omega)

    def is_self_dual(self) -> bool:
        return self.omega_orientation == self.metric.orientation

    def with_orientation(self, orientation: int) -> "AlmostHermitianStructure":
        return AlmostHermitianStructure(self.metric.with_orientation(orientation), self.J, self.omega)

    def self_dual_version(self) -> "AlmostHermitianStructure":
        """Same structure with the metric oriented by ``omega``."""
        return self.with_orientation(self.omega_orientation)

    def apply(self, x: Vector) -> Vector:
        return self.J @ x

    def is_almost_kahler(self, g: LieAlgebra) -> bool:
        return exterior_d(g, self.omega).is_zero()

    def frame_matrix(self) -> Matrix:
        """``J`` in the orthonormal frame: column ``i`` holds the ``f``-coordinates of ``J f_i``."""
        return self.metric.coframe @ self.J @ self.metric.frame

    def omega_display(self) -> Matrix:
        """Rows ``(omega(f_i, f_j))_j``; equals ``frame_matrix().T``."""
        F = self.metric.frame
        return F.T @ self.omega.matrix() @ F

    def frame_coefficients(self) -> Vector:
        """``omega = sum b_p f^{PAIRS[p]}``: the ``b`` coefficients."""
        W = self.omega_display()
        return Vector._trusted([W[a, b] for a, b in PAIRS], self.mode)


def from_metric_and_omega(
    g: LieAlgebra, m: MetricFrame, omega: InvariantForm
) -> AlmostHermitianStructure | Incompatible:
    """
    Structure induced by ``omega`` when compatible with ``m``.

    Raises:
        DegenerateFormError: If ``omega ^ omega = 0``.
    """
    if g.dim != m.dim or omega.dim != m.dim:
        raise DimensionError("Algebra, metric and form dimensions differ")
    if omega.degree != 2:
        raise DimensionError("omega must be a 2-form")
    if m.dim == 4 and orientation_of(omega) == 0:
        raise DegenerateFormError(f"omega ^ omega = 0 for omega = {omega}")
    A = induced_endomorphism(m, omega)
    defect = A @ A + Matrix.identity(m.dim, m.mode)
    if not defect.is_zero():
        return Incompatible(A, defect)
    return AlmostHermitianStructure(m, A, omega)


def frame_form(m: MetricFrame, coefficients: Sequence[int | Scalar]) -> InvariantForm:
    """The 2-form ``sum b_p f^{PAIRS[p]}`` written in the ``e^ij`` basis."""
    if len(coefficients) != len(PAIRS):
        raise DimensionError("A 2-form in dimension 4 takes six frame coefficients")
    mode = m.mode
    W = [[mode.zero] * 4 for _ in range(4)]
    for (a, b), value in zip(PAIRS, coefficients):
        v = mode.coerce(value)
        W[a][b] = v
        W[b][a] = -v
    L = m.coframe
    Omega = L.T @ Matrix._trusted(W, mode) @ L
    return InvariantForm(4, 2, tuple(Omega[i, j] for i, j in PAIRS), mode)


def from_frame_complex_structure(m: MetricFrame, J_frame: Matrix) -> AlmostHermitianStructure:
    """Structure whose ``J`` has matrix ``J_frame`` in the orthonormal frame."""
    J = m.frame @ J_frame @ m.coframe
    omega_matrix = J.T @ m.gram
    omega = InvariantForm(m.dim, 2, tuple(omega_matrix[i, j] for i, j in PAIRS), m.mode)
    return AlmostHermitianStructure(m, J, omega)


def closed_forms(g: LieAlgebra) -> list[InvariantForm]:
    """Basis of the closed invariant 2-forms (kernel of ``d`` on 2-forms)."""
    return [InvariantForm.from_vector(g.dim, 2, v) for v in nullspace(differential_matrix(g, 2))]


def circle_point(t: Rational) -> tuple[Rational, Rational]:
    """Rational point ``((1 - t^2)/(1 + t^2), 2t/(1 + t^2))`` of the unit circle."""
    t = Rational(t)
    denom = 1 + t * t
    return (1 - t * t) / denom, 2 * t / denom


def sphere_points(
    circle_points: Sequence[tuple[Scalar, Scalar]], mode: ScalarMode = EXACT
) -> list[tuple[Scalar, Scalar, Scalar]]:
    """
    Unit vectors of ``R^3`` sampled from circle points.

    Coordinate circles give ``(p, q, 0)``, ``(p, 0, q)`` and ``(0, p, q)``.
    Each pair of circle points ``(p1, q1)``, ``(p2, q2)`` also gives
    ``(p1 p2, p1 q2, q1)`` and its cyclic shifts, which have no zero
    coordinate when no ``p`` or ``q`` vanishes.
    """
    points: list[tuple[Scalar, Scalar, Scalar]] = []
    for p, q in circle_points:
        points += [(p, q, mode.zero), (p, mode.zero, q), (mode.zero, p, q)]
    for i, (p1, q1) in enumerate(circle_points):
        for p2, q2 in circle_points[i:]:
            u = (p1 * p2, p1 * q2, q1)
            points += [u, (u[1], u[2], u[0]), (u[2], u[0], u[1])]
    return points


def candidate_structures(
    g: LieAlgebra,
    m: MetricFrame,
    circle_points: Iterable[tuple[Scalar, Scalar]],
    closed_only: bool = True,
) -> list[AlmostHermitianStructure]:
    """
    Compatible structures sampled from Lambda+ and Lambda- of both orientations.

    Every unit vector ``u`` of ``R^3`` gives the compatible form
    ``sum u_i sigma_i``; ``u`` runs over :func:`sphere_points` of the
    circle points and their negatives.
    """
    mode = m.mode
    circles = [(mode.coerce(p), mode.coerce(q)) for p, q in circle_points]
    found: list[AlmostHermitianStructure] = []
    seen: set[tuple] = set()
    for eps in (1, -1):
        splus, _ = lambda_bases(eps, mode)
        for u in sphere_points(circles, mode):
            for sign in (1, -1):
                coeffs = splus @ Vector._trusted([mode.reduce(sign * x) for x in u], mode)
                omega = frame_form(m, coeffs.entries)
                key = omega.coefficients
                if key in seen:
                    continue
                seen.add(key)
                if closed_only and not exterior_d(g, omega).is_zero():
                    continue
                result = from_metric_and_omega(g, m, omega)
                if isinstance(result, AlmostHermitianStructure):
                    found.append(result)
    return found
