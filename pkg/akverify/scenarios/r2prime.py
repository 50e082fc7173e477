"""
Metrics and almost-Kahler structures on r2prime in the Gram-Schmidt coframe

    f^1 = a1 e^1
    f^2 = a2 f^1 + a3 e^2
    f^3 = a4 f^1 + a5 f^2 + a6 e^3
    f^4 = a7 f^1 + a8 f^2 + a9 f^3 + a10 e^4        (a1, a3, a6, a10 > 0)

together with the closed-form Weyl components that drive the conformal
flatness elimination, the closedness relations for
``omega = sum b_p f^{PAIRS[p]}`` and the expected Nijenhuis and H values.
"""

from typing import Mapping

from sympy import Rational

from akverify.core.matrix import Matrix, NoSolution, Vector, solve_linear
from akverify.core.scalar import EXACT, Scalar, ScalarMode
from akverify.geometry.curvature import CurvatureData, curvature, weyl_component
from akverify.geometry.metric import MetricFrame
from akverify.hermitian.nijenhuis import raw_nijenhuis
from akverify.hermitian.structure import AlmostHermitianStructure, circle_point, frame_form, from_metric_and_omega
from akverify.lie.algebra import LieAlgebra
from akverify.lie.catalog import CatalogError, instantiate
from akverify.lie.forms import InvariantForm, exterior_d

PARAMETER_NAMES = tuple(f"a{i}" for i in range(1, 11))
FREE_PARAMETERS = PARAMETER_NAMES[:6]
POSITIVE_PARAMETERS = ("a1", "a3", "a6", "a10")

# relation name -> parameter it determines
RELATIONS = {"a10=a6": "a10", "a9=0": "a9", "a8": "a8", "a7": "a7"}

# 0-based frame indices of the displayed Weyl components
W_1323 = (0, 2, 1, 2)
W_1324 = (0, 2, 1, 3)
W_1223 = (0, 1, 1, 2)
W_2434 = (1, 3, 2, 3)


def r2prime_algebra(mode: ScalarMode = EXACT) -> LieAlgebra:
    return instantiate("r2prime", mode)


def _coerced(a: Mapping[str, int | Scalar], names, mode: ScalarMode) -> dict[str, Scalar]:
    missing = [n for n in names if n not in a]
    if missing:
        raise CatalogError(f"Missing coframe parameter(s): {', '.join(missing)}")
    values = {n: mode.coerce(a[n]) for n in names}
    for n in POSITIVE_PARAMETERS:
        if n in values and values[n] <= 0:
            raise CatalogError(f"Coframe parameter {n} must be positive, got {values[n]}")
    return values


def r2prime_coframe(a: Mapping[str, int | Scalar], mode: ScalarMode = EXACT) -> Matrix:
    """
    Lower-triangular coframe ``L`` (row ``i`` is ``f^{i+1}`` in the ``e^j``).

    Raises:
        CatalogError: On missing parameters or non-positive ``a1, a3, a6, a10``.
    """
    p = _coerced(a, PARAMETER_NAMES, mode)
    zero = mode.zero
    row1 = [p["a1"], zero, zero, zero]
    row2 = [p["a2"] * x for x in row1]
    row2[1] += p["a3"]
    row3 = [p["a4"] * x + p["a5"] * y for x, y in zip(row1, row2)]
    row3[2] += p["a6"]
    row4 = [p["a7"] * x + p["a8"] * y + p["a9"] * z for x, y, z in zip(row1, row2, row3)]
    row4[3] += p["a10"]
    return Matrix._trusted([row1, row2, row3, row4], mode)


def r2prime_metric(a: Mapping[str, int | Scalar], mode: ScalarMode = EXACT, orientation: int = 1) -> MetricFrame:
    return MetricFrame.from_coframe(r2prime_coframe(a, mode), orientation)


def conformally_flat_r2prime(a: Mapping[str, int | Scalar], mode: ScalarMode = EXACT) -> dict[str, Scalar]:
    """
    Complete ``a1..a6`` to a conformally flat coframe.

    ``a10 = a6``, ``a9 = 0``, ``a8 = (a1 a2 a5 + a1 a4)/a3`` and
    ``a7 = (-a1^2 a2^2 a5 - a1^2 a2 a4 - a3^2 a5)/(a1 a3)``.
    """
    p = _coerced(a, FREE_PARAMETERS, mode)
    a1, a2, a3, a4, a5, a6 = (p[n] for n in FREE_PARAMETERS)
    p["a10"] = a6
    p["a9"] = mode.zero
    p["a8"] = (a1 * a2 * a5 + a1 * a4) / a3
    p["a7"] = (-a1 * a1 * a2 * a2 * a5 - a1 * a1 * a2 * a4 - a3 * a3 * a5) / (a1 * a3)
    return p


def perturb_relation(a: Mapping[str, Scalar], relation: str, delta: Scalar) -> dict[str, Scalar]:
    """Copy of ``a`` with the parameter fixed by ``relation`` shifted by ``delta``."""
    if relation not in RELATIONS:
        raise CatalogError(f"Unknown relation {relation!r}")
    p = dict(a)
    name = RELATIONS[relation]
    p[name] = p[name] + delta
    return p


def frame_weyl(
    g: LieAlgebra, m: MetricFrame, indices: tuple[int, int, int, int], data: CurvatureData | None = None
) -> Scalar:
    """``W(f_i, f_j, f_k, f_l)`` for 0-based frame indices."""
    vectors = [m.frame_vector(i) for i in indices]
    return weyl_component(g, m, vectors, data)


def _branch_factors(p: Mapping[str, Scalar]) -> tuple[Scalar, Scalar]:
    a6, a9, a10 = p["a6"], p["a9"], p["a10"]
    return (a9 * a9 - 1) * a6 * a6 + a10 * a10, (a9 * a9 + 1) * a6 * a6 + a10 * a10


def weyl_display_generic(p: Mapping[str, Scalar]) -> Scalar:
    """``[a2 P Q a1 - 2 a10 a3 a6^3 a9] / (a1 a3^2 a10^2 a6^2)``; twice ``W(f1,f3,f2,f3)``."""
    P, Q = _branch_factors(p)
    a1, a2, a3, a6, a9, a10 = (p[n] for n in ("a1", "a2", "a3", "a6", "a9", "a10"))
    num = a2 * P * Q * a1 - 2 * a10 * a3 * a6**3 * a9
    return num / (a1 * a3 * a3 * a10 * a10 * a6 * a6)


def on_a9_branch(p: Mapping[str, Scalar]) -> bool:
    return _branch_factors(p)[0] == 0


def a2_substitution(p: Mapping[str, Scalar]) -> Scalar:
    """
    The value of ``a2`` that kills the generic display off the ``a9`` branch.

    Raises:
        CatalogError: On the branch ``(a9^2 - 1) a6^2 + a10^2 = 0``.
    """
    P, Q = _branch_factors(p)
    if P == 0:
        raise CatalogError("a2 substitution is undefined on the a9 branch")
    return 2 * p["a10"] * p["a3"] * p["a6"] ** 3 * p["a9"] / (P * Q * p["a1"])


def weyl_display_substituted(p: Mapping[str, Scalar]) -> Scalar:
    """``W(f1,f3,f2,f4)`` once ``a2`` is substituted."""
    a1, a3, a6, a9, a10 = (p[n] for n in ("a1", "a3", "a6", "a9", "a10"))
    s = a6 * a6 * a9 * a9 + a10 * a10 + a6 * a6
    num = (s - 2 * a10 * a6) * (s + 2 * a10 * a6)
    den = -2 * a3 * a10 * (a6 * a6 * a9 * a9 + a10 * a10 - a6 * a6) * a6 * a1
    return num / den


def weyl_display_branch(p: Mapping[str, Scalar]) -> Scalar:
    """``W(f1,f3,f2,f3)`` on the ``a9`` branch: ``-a6 a9 / (a1 a3 a10)``.

    The displayed ``+-`` root is taken with the sign opposite to ``a9``.
    """
    return -p["a6"] * p["a9"] / (p["a1"] * p["a3"] * p["a10"])


def weyl_display_1223(p: Mapping[str, Scalar]) -> Scalar:
    """``W(f1,f2,f2,f3)`` once ``a9 = 0`` and ``a10 = a6``."""
    a1, a2, a3, a4, a5, a8 = (p[n] for n in ("a1", "a2", "a3", "a4", "a5", "a8"))
    return (a1 * a2 * a5 + a1 * a4 - a3 * a8) / (-4 * a3 * a3 * a1)


def weyl_display_2434(p: Mapping[str, Scalar]) -> Scalar:
    """``W(f2,f4,f3,f4)`` once the ``a8`` relation holds as well."""
    a1, a2, a3, a4, a5, a7 = (p[n] for n in ("a1", "a2", "a3", "a4", "a5", "a7"))
    num = a1 * a1 * a2 * a2 * a5 + a1 * a1 * a2 * a4 + a1 * a3 * a7 + a3 * a3 * a5
    return num / (-4 * a3 * a3 * a1 * a1)


def closedness_formulas(p: Mapping[str, Scalar], b2: Scalar, b3: Scalar) -> tuple[Scalar, Scalar, Scalar]:
    """``(b4, b5, b6)`` making ``omega`` closed for conformally flat parameters."""
    a1, a2, a3 = p["a1"], p["a2"], p["a3"]
    b4 = (-a1 * a1 * a2 * b2 + a1 * a3 * b3) / (a1 * a1 * a2 * a2 + a3 * a3)
    b5 = -a1 * (a2 * b4 + b2) / a3
    return b4, b5, b2 * 0


def frame_differentials(g: LieAlgebra, m: MetricFrame) -> Matrix:
    """Column ``p`` is ``d f^{PAIRS[p]}`` in the ``e^ijk`` basis."""
    mode = m.mode
    columns = []
    for p in range(6):
        unit = [mode.one if q == p else mode.zero for q in range(6)]
        columns.append(exterior_d(g, frame_form(m, unit)).to_vector())
    return Matrix.from_columns(columns)


def solve_closed_tail(
    g: LieAlgebra, m: MetricFrame, b1: Scalar, b2: Scalar, b3: Scalar
) -> Vector | NoSolution:
    """Solve ``d omega = 0`` for ``(b4, b5, b6)`` given ``(b1, b2, b3)``."""
    D = frame_differentials(g, m)
    head = D.submatrix(range(4), range(3))
    tail = D.submatrix(range(4), range(3, 6))
    rhs = -(head @ Vector([b1, b2, b3], m.mode))
    return solve_linear(tail, rhs)


def closed_family(p: Mapping[str, Scalar], m: MetricFrame) -> list[InvariantForm]:
    """Closed forms with ``(b1, b2, b3)`` running over the unit vectors."""
    mode = m.mode
    forms = []
    for unit in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        b1, b2, b3 = (mode.coerce(x) for x in unit)
        b4, b5, b6 = closedness_formulas(p, b2, b3)
        forms.append(frame_form(m, [b1, b2, b3, b4, b5, b6]))
    return forms


def omega_display_matrix(
    p: Mapping[str, Scalar], b1: Scalar, b2: Scalar, b3: Scalar, mode: ScalarMode = EXACT
) -> Matrix:
    """Rows ``(omega(f_i, f_j))_j`` of a closed ``omega``, written out from the closedness formulas."""
    b4, b5, _ = closedness_formulas(p, b2, b3)
    zero = mode.zero
    rows = [
        [zero, b1, b2, b3],
        [-b1, zero, b4, b5],
        [-b2, -b4, zero, zero],
        [-b3, -b5, zero, zero],
    ]
    return Matrix([[mode.coerce(x) for x in row] for row in rows], mode)


def ak_parameters(a1: Scalar, a4: Scalar, a5: Scalar, a6: Scalar, mode: ScalarMode = EXACT) -> dict[str, Scalar]:
    """Conformally flat parameters with ``a2 = 0`` and ``a3 = a1``."""
    return conformally_flat_r2prime({"a1": a1, "a2": 0, "a3": a1, "a4": a4, "a5": a5, "a6": a6}, mode)


def ak_structure(
    g: LieAlgebra,
    p: Mapping[str, Scalar],
    b2: Scalar,
    b3: Scalar,
    mode: ScalarMode = EXACT,
) -> AlmostHermitianStructure:
    """
    The almost-Kahler structure with ``b1 = 0`` and unit ``(b2, b3)``.

    Raises:
        ValueError: If the parameters do not give a compatible form.
    """
    m = r2prime_metric(p, mode)
    b4, b5, b6 = closedness_formulas(p, b2, b3)
    omega = frame_form(m, [mode.zero, b2, b3, b4, b5, b6])
    result = from_metric_and_omega(g, m, omega)
    if not isinstance(result, AlmostHermitianStructure):
        raise ValueError("Parameters do not give a compatible structure")
    return result


def ak_structure_at(
    g: LieAlgebra, a1: Scalar, a4: Scalar, a5: Scalar, a6: Scalar, t: Rational, mode: ScalarMode = EXACT
) -> tuple[dict[str, Scalar], AlmostHermitianStructure, Scalar, Scalar]:
    """Structure at the circle point of ``t``; returns ``(parameters, structure, b2, b3)``."""
    p = ak_parameters(a1, a4, a5, a6, mode)
    b2, b3 = (mode.coerce(x) for x in circle_point(t))
    return p, ak_structure(g, p, b2, b3, mode), b2, b3


def expected_H(a1: Scalar, b2: Scalar, b3: Scalar) -> tuple[Scalar, Scalar, Scalar, Scalar]:
    """``H(f_1..f_4) = -1/a1^2, -1/(2 a1^2), -(1+b2^2)/(2 a1^2), -(1+b3^2)/(2 a1^2)``."""
    s = a1 * a1
    return -1 / s, -1 / (2 * s), -(1 + b2 * b2) / (2 * s), -(1 + b3 * b3) / (2 * s)


def expected_nijenhuis_f1f2(a1: Scalar, b2: Scalar, b3: Scalar) -> Scalar:
    """``f2``-coefficient of ``N(f1, f2)``: ``(b2^2 + b3^2)/(2 a1)``."""
    return (b2 * b2 + b3 * b3) / (2 * a1)


def calibrate_nijenhuis_scale(g: LieAlgebra, s: AlmostHermitianStructure, a1: Scalar, b2: Scalar, b3: Scalar) -> Scalar:
    """Ratio between the expected ``N(f1, f2)`` and the unscaled bracket expression."""
    m = s.metric
    raw = m.frame_coordinates(raw_nijenhuis(g, s, m.frame_vector(0), m.frame_vector(1)))
    return expected_nijenhuis_f1f2(a1, b2, b3) / raw[1]


def conf_flat_scalar(a1: Scalar) -> Scalar:
    """Scalar curvature of every conformally flat r2prime metric: ``-6/a1^2``."""
    return -6 / (a1 * a1)


def curvature_of(p: Mapping[str, Scalar], mode: ScalarMode = EXACT) -> tuple[LieAlgebra, MetricFrame, CurvatureData]:
    g = r2prime_algebra(mode)
    m = r2prime_metric(p, mode)
    return g, m, curvature(g, m)
