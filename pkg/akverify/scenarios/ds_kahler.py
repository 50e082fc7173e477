"""
Self-dual, non-conformally flat metrics on the dS family are Kahler.

With ``gram = diag(k^2, 1, 1, 1)`` the closed 2-forms are
``a e12 + b e13 + c (-2 e14 + e23)``. Compatibility forces ``a = b = 0``,
``c = +-1`` and ``k^2 = 4``; both structures are integrable, while the
metric has ``W+ = 0`` and ``W- != 0`` in the natural orientation.
"""

from sympy import Rational

from akverify.core.matrix import Matrix, Vector
from akverify.core.scalar import EXACT, Scalar, ScalarMode, format_scalar
from akverify.geometry.curvature import curvature
from akverify.geometry.hodge import curvature_blocks
from akverify.geometry.metric import MetricFrame
from akverify.geometry.report import format_matrix, format_vector
from akverify.hermitian.blocks import wplus_J_blocks
from akverify.hermitian.compatibility import solve_compatibility
from akverify.hermitian.connection import Constant, constant_H_test
from akverify.hermitian.nijenhuis import nijenhuis
from akverify.hermitian.structure import AlmostHermitianStructure, closed_forms, from_metric_and_omega
from akverify.lie.algebra import LieAlgebra, jacobi_check
from akverify.lie.catalog import CatalogError, instantiate
from akverify.lie.forms import InvariantForm, exterior_d
from akverify.scenarios.report import CheckLogger, ReportBuilder, VerificationReport
from akverify.scenarios.samples import DS_K_VALUES

CLAIM = "dS-kahler"
KAHLER_K_SQUARED = 4
# curvature entries are polynomials of degree at most 2 in lambda
LAMBDA_DEGREE = 2


def ds_closed_basis(mode: ScalarMode = EXACT) -> list[InvariantForm]:
    """``e12, e13, -2 e14 + e23``, coordinates ``(a, b, c)``."""
    return [
        InvariantForm.from_terms(4, {(1, 2): 1}, mode),
        InvariantForm.from_terms(4, {(1, 3): 1}, mode),
        InvariantForm.from_terms(4, {(1, 4): -2, (2, 3): 1}, mode),
    ]


def ds_metric(k: int | Scalar, mode: ScalarMode = EXACT, orientation: int = 1) -> MetricFrame:
    k = mode.coerce(k)
    return MetricFrame.diagonal([k * k, 1, 1, 1], mode, orientation)


def _span_rank(forms: list[InvariantForm], mode: ScalarMode) -> int:
    return Matrix([f.coefficients for f in forms], mode).rank()


def _check_closed_forms(builder: ReportBuilder, g: LieAlgebra, mode: ScalarMode) -> None:
    closed = closed_forms(g)
    expected = ds_closed_basis(mode)
    builder.check("expected forms are closed", all(exterior_d(g, f).is_zero() for f in expected))
    same_span = len(closed) == 3 and _span_rank(closed + expected, mode) == 3
    builder.check("closed 2-forms = span{e12, e13, -2e14+e23}", same_span, f"dim = {len(closed)}")
    builder.add_evidence("closed_forms", [f.to_dict() for f in closed])


def _check_structures(
    builder: ReportBuilder, g: LieAlgebra, k: Scalar, mode: ScalarMode
) -> list[AlmostHermitianStructure]:
    tag = f"k={format_scalar(k)}"
    m = ds_metric(k, mode)
    basis = ds_closed_basis(mode)
    solution = solve_compatibility(m, basis)
    if not mode.equal(k * k, mode.coerce(KAHLER_K_SQUARED)):
        builder.check(f"{tag} no compatible closed form", not solution.consistent)
        builder.add_evidence(f"{tag} compatibility", "inconsistent")
        return []

    points = {tuple(p.entries) for p in solution.points}
    expected = {(0, 0, 1), (0, 0, -1)}
    builder.check(
        f"{tag} compatibility forces a = b = 0, c = +-1",
        solution.unique and points == {tuple(mode.coerce(x) for x in p) for p in expected},
    )
    builder.add_evidence(f"{tag} compatibility", [format_vector(p) for p in solution.points])
    structures = []
    for omega in solution.forms(basis):
        s = from_metric_and_omega(g, m, omega)
        if not isinstance(s, AlmostHermitianStructure):
            builder.check(f"{tag} recovered form is compatible", False)
            continue
        sign = "+" if omega.coefficient((1, 2)) > 0 else "-"
        builder.check(f"{tag} omega {sign}: almost-Kahler", s.is_almost_kahler(g))
        builder.check(f"{tag} omega {sign}: N = 0", nijenhuis(g, s).is_zero())
        structures.append(s)
    plus = [s for s in structures if s.omega.coefficient((1, 2)) > 0]
    if plus:
        J = plus[0].J
        builder.check(f"{tag} J e1 = -2 e4", J.col(0).equals(Vector([0, 0, 0, -2], mode)))
        builder.check(f"{tag} J e4 = e1/2", J.col(3).equals(Vector([Rational(1, 2), 0, 0, 0], mode)))
        builder.add_evidence(f"{tag} J", format_matrix(J))
    return structures


def _check_curvature(builder: ReportBuilder, g: LieAlgebra, k: Scalar, mode: ScalarMode) -> Scalar:
    tag = f"k={format_scalar(k)}"
    m = ds_metric(k, mode)
    data = curvature(g, m)
    blocks = curvature_blocks(g, m, data)
    flipped = curvature_blocks(g, m.flipped(), data)
    builder.check(f"{tag} W+ = 0", blocks.wplus.is_zero())
    builder.check(f"{tag} W- != 0", not blocks.wminus.is_zero())
    builder.check(f"{tag} W != 0", not data.weyl_is_zero())
    builder.check(
        f"{tag} orientation flip swaps W+ and W-",
        flipped.wplus.equals(blocks.wminus) and flipped.wminus.equals(blocks.wplus),
    )
    kahler_k = mode.equal(k * k, mode.coerce(KAHLER_K_SQUARED))
    builder.check(f"{tag} Einstein iff k^2 = 4", blocks.is_einstein() == kahler_k)
    builder.add_evidence(
        f"{tag} curvature",
        {
            "scalar": format_scalar(data.scalar),
            "wminus": format_matrix(blocks.wminus),
            "ricci": format_matrix(data.ricci),
        },
    )
    return data.scalar


def _check_kahler_geometry(
    builder: ReportBuilder, g: LieAlgebra, s: AlmostHermitianStructure, scalar: Scalar, mode: ScalarMode
) -> None:
    """Complex hyperbolic plane: ``s = -6``, constant ``H = -1``, ``topleft = s/6``."""
    builder.check("k=2 s = -6", mode.equal(scalar, mode.coerce(-6)), f"s = {format_scalar(scalar)}")
    verdict = constant_H_test(g, s.metric, s)
    builder.check(
        "k=2 H constant = -1",
        isinstance(verdict, Constant) and mode.equal(verdict.kappa, mode.coerce(-1)),
    )
    m = s.metric.with_orientation(s.omega_orientation)
    decomposition = wplus_J_blocks(g, m, s)
    builder.check("k=2 topleft = s/6 in the omega orientation", mode.equal(decomposition.topleft, scalar / 6))
    builder.check("k=2 |N|^2 = topleft - s/6 = 0", mode.is_zero(decomposition.nijenhuis_norm_squared))
    builder.add_evidence("k=2 omega sigma coordinates", format_vector(decomposition.coordinates))


def verify_dS_kahler(
    lam: int | str | Scalar = 0,
    mode: ScalarMode = EXACT,
    logger: CheckLogger | None = None,
    algebra: LieAlgebra | None = None,
    k_values: tuple[Scalar, ...] = DS_K_VALUES,
) -> VerificationReport:
    """
    Replay the dS argument at one ``lambda``.

    ``algebra`` replaces the catalog instance (negative controls pass a
    corrupted bracket table).

    Raises:
        CatalogError: If ``lambda < 0``.
    """
    lam = mode.parse(lam) if isinstance(lam, str) else mode.coerce(lam)
    if lam < 0:
        raise CatalogError(f"dS needs lambda >= 0, got {format_scalar(lam)}")
    g = algebra if algebra is not None else instantiate("dS", mode, **{"lambda": lam})
    builder = ReportBuilder(
        CLAIM,
        {"lambda": format_scalar(lam), "k": [format_scalar(mode.coerce(k)) for k in k_values], "mode": mode.label()},
        logger,
    )
    builder.degree_bound("dS curvature in lambda", LAMBDA_DEGREE)
    jacobi = jacobi_check(g)
    builder.check("jacobi", jacobi.passed, "" if jacobi.passed else f"fails at {jacobi.triple}")
    if not jacobi.passed:
        return builder.build()

    _check_closed_forms(builder, g, mode)
    for k in k_values:
        k = mode.coerce(k)
        structures = _check_structures(builder, g, k, mode)
        scalar = _check_curvature(builder, g, k, mode)
        plus = [s for s in structures if s.omega.coefficient((1, 2)) > 0]
        if plus:
            _check_kahler_geometry(builder, g, plus[0], scalar, mode)
    return builder.build()


def kahler_structures(g: LieAlgebra, mode: ScalarMode = EXACT) -> list[AlmostHermitianStructure]:
    """The compatible closed structures for ``k = 2``."""
    m = ds_metric(2, mode)
    basis = ds_closed_basis(mode)
    found = []
    for omega in solve_compatibility(m, basis).forms(basis):
        s = from_metric_and_omega(g, m, omega)
        if isinstance(s, AlmostHermitianStructure):
            found.append(s)
    return found
