"""
Hodge star on 2-forms and the block decomposition of the curvature operator.

Everything block-related lives in the orthonormal coframe ``f^i`` of the
metric. The curvature operator is the symmetric 6x6 matrix
``O[(ab),(cd)] = Rm(f_a, f_b, f_c, f_d)`` on the basis ``f^ab`` (a < b), so
``trace O = s/2``. The self-dual and anti-self-dual spaces are spanned by
the un-normalized forms

    sigma_1 = f^12 + e f^34,  sigma_2 = f^13 - e f^24,  sigma_3 = f^14 + e f^23   (Lambda+)
    sigma_1 = f^12 - e f^34,  sigma_2 = f^13 + e f^24,  sigma_3 = f^14 - e f^23   (Lambda-)

with ``e`` the orientation sign. Each has squared norm 2, so blocks are
``1/2 S^T O S``.
"""

from dataclasses import dataclass
from functools import cached_property

from akverify.core.errors import AkverifyError, DimensionError
from akverify.core.matrix import Matrix, Vector
from akverify.core.scalar import Scalar, ScalarMode
from akverify.geometry.curvature import CurvatureData, change_frame, curvature
from akverify.geometry.metric import MetricFrame
from akverify.lie.algebra import LieAlgebra
from akverify.lie.forms import InvariantForm, form_basis, permutation_sign

PAIRS = form_basis(4, 2)


class OrientationMismatchError(AkverifyError):
    """Raised when a form is not self-dual for the stored orientation."""

    pass


def _require_dim4(m: MetricFrame) -> None:
    if m.dim != 4:
        raise DimensionError(f"Hodge decomposition of 2-forms needs dimension 4, got {m.dim}")


def hodge_star_2(m: MetricFrame) -> Matrix:
    """
    Hodge star on 2-forms in the ``e^ij`` basis; column ``p`` is ``*e^{PAIRS[p]}``.

    ``(*alpha)_kl = orientation * sqrt(det g) * sum_{i<j} alpha^ij sgn(i j k l)``.
    """
    _require_dim4(m)
    mode = m.mode
    Ginv = m.gram_inverse
    scale = m.orientation * m.volume_factor
    columns = []
    for i, j in PAIRS:
        # raised[a][b] = alpha^ab for alpha = e^ij
        raised = [[Ginv[a, i] * Ginv[b, j] - Ginv[a, j] * Ginv[b, i] for b in range(4)] for a in range(4)]
        out = []
        for k, l in PAIRS:
            a, b = [x for x in range(4) if x not in (k, l)]
            out.append(scale * raised[a][b] * permutation_sign((a, b, k, l)))
        columns.append(Vector._trusted(out, mode))
    return Matrix.from_columns(columns)


def apply_hodge_star(m: MetricFrame, form: InvariantForm) -> InvariantForm:
    if form.degree != 2:
        raise DimensionError("The Hodge star here acts on 2-forms")
    return InvariantForm.from_vector(4, 2, hodge_star_2(m) @ form.to_vector())


def lambda_bases(orientation: int, mode: ScalarMode) -> tuple[Matrix, Matrix]:
    """Columns ``sigma_1..3`` of Lambda+ and Lambda- in the ``f^ab`` basis."""
    e = orientation
    plus = [
        [1, 0, 0, 0, 0, e],
        [0, 1, 0, 0, -e, 0],
        [0, 0, 1, e, 0, 0],
    ]
    minus = [
        [1, 0, 0, 0, 0, -e],
        [0, 1, 0, 0, e, 0],
        [0, 0, 1, -e, 0, 0],
    ]
    return Matrix(plus, mode).T, Matrix(minus, mode).T


def form_in_frame(m: MetricFrame, form: InvariantForm) -> Vector:
    """Coefficients of a 2-form on the orthonormal basis ``f^ab``: ``form(f_a, f_b)``."""
    _require_dim4(m)
    F = m.frame
    W = F.T @ form.matrix() @ F
    return Vector._trusted([W[a, b] for a, b in PAIRS], m.mode)


def sigma_coordinates(m: MetricFrame, form: InvariantForm, self_dual: bool = True) -> Vector:
    """``<form, sigma_i> / 2`` against the Lambda+ (or Lambda-) basis."""
    splus, sminus = lambda_bases(m.orientation, m.mode)
    S = splus if self_dual else sminus
    half = m.mode.coerce(1) / 2
    return (S.T @ form_in_frame(m, form)).scale(half)


def is_self_dual(m: MetricFrame, form: InvariantForm) -> bool:
    return (apply_hodge_star(m, form) - form).is_zero()


def is_anti_self_dual(m: MetricFrame, form: InvariantForm) -> bool:
    return (apply_hodge_star(m, form) + form).is_zero()


def curvature_operator(data: CurvatureData) -> Matrix:
    """``O[(ab),(cd)] = Rm(f_a, f_b, f_c, f_d)`` on the orthonormal 2-form basis."""
    _require_dim4(data.metric)
    Rf = change_frame(data.riemann.components, data.metric.frame)
    return Matrix._trusted([[Rf[a][b][c][d] for c, d in PAIRS] for a, b in PAIRS], data.metric.mode)


def weyl_operator(data: CurvatureData) -> Matrix:
    """The Weyl tensor as a symmetric operator on the orthonormal 2-form basis."""
    _require_dim4(data.metric)
    Wf = change_frame(data.weyl, data.metric.frame)
    return Matrix._trusted([[Wf[a][b][c][d] for c, d in PAIRS] for a, b in PAIRS], data.metric.mode)


@dataclass(frozen=True)
class CurvatureBlocks:
    """
    Curvature operator split over Lambda+ and Lambda-.

    ``bplus = wplus + (s/12) Id`` and ``bminus = wminus + (s/12) Id``;
    ``offdiag`` is the traceless-Ricci block.
    """

    operator: Matrix
    bplus: Matrix
    bminus: Matrix
    wplus: Matrix
    wminus: Matrix
    offdiag: Matrix
    scalar: Scalar
    ricci: Matrix
    traceless_ricci: Matrix
    orientation: int

    @property
    def mode(self) -> ScalarMode:
        return self.operator.mode

    def is_einstein(self) -> bool:
        return self.traceless_ricci.is_zero()

    def is_conformally_flat(self) -> bool:
        return self.wplus.is_zero() and self.wminus.is_zero()

    @cached_property
    def wplus_norm_squared(self) -> Scalar:
        return self.wplus.frobenius_squared()

    def weyl_operator(self) -> Matrix:
        """``1/2 S+ W+ S+^T + 1/2 S- W- S-^T`` on the ``f^ab`` basis."""
        splus, sminus = lambda_bases(self.orientation, self.mode)
        half = self.mode.coerce(1) / 2
        return (splus @ self.wplus @ splus.T + sminus @ self.wminus @ sminus.T).scale(half)


def curvature_blocks(g: LieAlgebra, m: MetricFrame, data: CurvatureData | None = None) -> CurvatureBlocks:
    """Block decomposition of the curvature operator for ``(g, m)``."""
    _require_dim4(m)
    data = data if data is not None else curvature(g, m)
    mode = m.mode
    O = curvature_operator(data)
    splus, sminus = lambda_bases(m.orientation, mode)
    half = mode.coerce(1) / 2
    bplus = (splus.T @ O @ splus).scale(half)
    bminus = (sminus.T @ O @ sminus).scale(half)
    offdiag = (splus.T @ O @ sminus).scale(half)
    shift = Matrix.identity(3, mode).scale(data.scalar / 12)
    return CurvatureBlocks(
        operator=O,
        bplus=bplus,
        bminus=bminus,
        wplus=bplus - shift,
        wminus=bminus - shift,
        offdiag=offdiag,
        scalar=data.scalar,
        ricci=data.ricci,
        traceless_ricci=data.traceless_ricci,
        orientation=m.orientation,
    )
