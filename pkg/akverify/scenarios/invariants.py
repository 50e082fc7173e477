"""
Property suites over random catalog instances and random exact metrics.

``verify_tensor_invariants`` checks the identities every curvature and
Hermitian computation must satisfy; ``verify_mode_agreement`` compares
exact mode, float mode and the numpy oracle on shared inputs.
"""

from collections import defaultdict
from random import Random
from typing import Callable

import numpy as np
from sympy import Rational

from akverify.core.matrix import Matrix, Vector, random_rational
from akverify.core.scalar import DEFAULT_TOLERANCE, EXACT, ScalarMode, format_scalar
from akverify.geometry.curvature import CurvatureData, curvature, tensor_is_zero, weyl_is_traceless
from akverify.geometry.hodge import curvature_blocks
from akverify.geometry.metric import MetricFrame, random_metric
from akverify.geometry.oracle import oracle_curvature
from akverify.hermitian.blocks import wplus_J_blocks
from akverify.hermitian.connection import canonical_connection, connection_curvature, hermitian_H
from akverify.hermitian.nijenhuis import nijenhuis
from akverify.hermitian.structure import AlmostHermitianStructure, from_frame_complex_structure
from akverify.lie.algebra import LieAlgebra
from akverify.lie.catalog import catalog
from akverify.scenarios.report import CheckLogger, ReportBuilder, VerificationReport

TENSOR_CLAIM = "tensor-invariants"
MODE_CLAIM = "mode-agreement"
AGREEMENT_TOLERANCE = 1e-9
AGREEMENT_COFRAME_BOUND = 2

STANDARD_J = Matrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])


def random_instance(rng: Random, mode: ScalarMode = EXACT) -> LieAlgebra:
    """A random family from the catalog at a random admissible parameter."""
    entry = rng.choice(catalog())
    params = {slot.name: Rational(rng.randint(0, 6), rng.randint(1, 3)) for slot in entry.parameters}
    return entry.instantiate(mode, **params)


def cayley_orthogonal(rng: Random, n: int = 4, mode: ScalarMode = EXACT) -> Matrix:
    """Rational orthogonal ``(I - A)(I + A)^-1`` for a random skew ``A``."""
    rows = [[mode.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = mode.coerce(random_rational(rng, 2))
            rows[i][j] = v
            rows[j][i] = -v
    A = Matrix(rows, mode)
    identity = Matrix.identity(n, mode)
    return (identity - A) @ (identity + A).inverse()


def random_structure(rng: Random, m: MetricFrame) -> AlmostHermitianStructure:
    """``J`` conjugate to the standard one by a random rational rotation of the frame."""
    Q = cayley_orthogonal(rng, m.dim, m.mode)
    J0 = Matrix(STANDARD_J.entries, m.mode)
    return from_frame_complex_structure(m, Q @ J0 @ Q.T)


def _random_vector(rng: Random, m: MetricFrame) -> Vector:
    while True:
        v = Vector([random_rational(rng, 3) for _ in range(m.dim)], m.mode)
        if not v.is_zero():
            return v


def _curvature_properties(data: CurvatureData, rng: Random) -> dict[str, bool]:
    g, m = data.algebra, data.metric
    mode = m.mode
    r = data.riemann
    blocks = curvature_blocks(g, m, data)
    c = mode.coerce(Rational(rng.randint(1, 4), rng.randint(1, 4)))
    scaled = curvature(g, m.scaled(c))
    c2 = c * c
    difference = scaled.weyl - data.weyl * c2
    return {
        "riemann symmetries": not r.symmetry_failures(),
        "first Bianchi": r.first_bianchi_holds(),
        "Weyl traceless": weyl_is_traceless(m, data.weyl),
        "operator trace = s/2": mode.equal(blocks.operator.trace(), data.scalar / 2),
        "W+ and W- traceless": mode.is_zero(blocks.wplus.trace()) and mode.is_zero(blocks.wminus.trace()),
        "W(c^2 g) = c^2 W(g)": tensor_is_zero(difference, mode),
        "s(c^2 g) = s(g)/c^2": mode.equal(scaled.scalar * c2, data.scalar),
        "Levi-Civita torsion-free": data.connection.is_torsion_free(),
        "Levi-Civita metric": data.connection.is_metric(),
    }


def _hermitian_properties(data: CurvatureData, s: AlmostHermitianStructure, rng: Random) -> dict[str, bool]:
    g, m = data.algebra, data.metric
    mode = m.mode
    conn = canonical_connection(g, m, s)
    oriented = m.with_orientation(s.omega_orientation)
    blocks = curvature_blocks(g, oriented, data)
    decomposition = wplus_J_blocks(g, oriented, s, blocks)
    N = nijenhuis(g, s)
    x, y = _random_vector(rng, m), _random_vector(rng, m)
    r = connection_curvature(g, conn)
    hx = hermitian_H(g, m, s, x, r)
    c = mode.coerce(Rational(rng.randint(1, 4), rng.randint(1, 4)))
    return {
        "canonical connection preserves g": conn.is_metric(),
        "canonical connection preserves J": conn.preserves(s.J),
        "J-block reassembly": decomposition.reassemble().equals(blocks.wplus),
        "|W+|^2 norm identity": mode.equal(decomposition.norm_identity_rhs(), blocks.wplus_norm_squared),
        "N antisymmetric": N(x, y).equals(-N(y, x)),
        "N(JX, Y) = -J N(X, Y)": N(s.J @ x, y).equals(-(s.J @ N(x, y))),
        "H scale invariant": mode.equal(hermitian_H(g, m, s, x.scale(c), r), hx),
        "H J-invariant": mode.equal(hermitian_H(g, m, s, s.J @ x, r), hx),
    }


def _record(failures: dict[str, list[int]], index: int, results: dict[str, bool]) -> None:
    for name, passed in results.items():
        failures.setdefault(name, [])
        if not passed:
            failures[name].append(index)


def verify_tensor_invariants(
    count: int = 1000,
    seed: int = 0,
    mode: ScalarMode = EXACT,
    logger: CheckLogger | None = None,
) -> VerificationReport:
    """One check per identity, each over ``count`` random (algebra, metric, J) triples."""
    builder = ReportBuilder(TENSOR_CLAIM, {"count": count, "seed": seed, "mode": mode.label()}, logger)
    if count <= 0:
        builder.check("samples", False, "insufficient samples")
        return builder.build()
    rng = Random(seed)
    failures: dict[str, list[int]] = {}
    families: dict[str, int] = defaultdict(int)
    for index in range(count):
        g = random_instance(rng, mode)
        families[g.name.split("(")[0]] += 1
        m = random_metric(rng, 4, mode=mode)
        data = curvature(g, m)
        _record(failures, index, _curvature_properties(data, rng))
        _record(failures, index, _hermitian_properties(data, random_structure(rng, m), rng))
        if logger is not None and (index + 1) % 100 == 0:
            logger.debug(f"{TENSOR_CLAIM}: {index + 1}/{count} samples")
    for name, failed in failures.items():
        detail = f"{count} samples" if not failed else f"fails at samples {failed[:5]}"
        builder.check(name, not failed, detail)
    builder.add_evidence("families", dict(sorted(families.items())))
    return builder.build()


def relative_deviation(exact: object, other: object) -> float:
    """``max |exact - other| / max(1, max |exact|)`` over all components."""
    e = np.asarray(exact, dtype=float)
    scale = max(1.0, float(np.max(np.abs(e))))
    return float(np.max(np.abs(e - np.asarray(other, dtype=float)))) / scale


def _agreement(g: LieAlgebra, m: MetricFrame, tol: float) -> dict[str, float]:
    """Largest relative deviation of float mode and of the oracle from exact mode, per quantity."""
    exact = curvature(g, m)
    floats = curvature(g.to_float(tol), m.to_float(tol))
    oracle = oracle_curvature(g, m)
    quantities: dict[str, tuple[object, object, object]] = {
        "riemann": (exact.riemann.components, floats.riemann.components, oracle.riemann),
        "ricci": (exact.ricci.entries, floats.ricci.entries, oracle.ricci),
        "scalar": (exact.scalar, floats.scalar, oracle.scalar),
        "weyl": (exact.weyl, floats.weyl, oracle.weyl),
    }
    deviations = {}
    for name, (e, f, o) in quantities.items():
        deviations[f"{name} float"] = relative_deviation(e, f)
        deviations[f"{name} oracle"] = relative_deviation(e, o)
    return deviations


def verify_mode_agreement(
    count: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOLERANCE,
    logger: CheckLogger | None = None,
    sampler: Callable[[Random], tuple[LieAlgebra, MetricFrame]] | None = None,
) -> VerificationReport:
    """
    Float mode and the numpy oracle agree with exact mode on shared rational inputs.

    Each quantity passes when its largest deviation, relative to
    ``max(1, max |exact|)``, stays within ``AGREEMENT_TOLERANCE``.
    """
    builder = ReportBuilder(MODE_CLAIM, {"count": count, "seed": seed, "tol": tol}, logger)
    if count <= 0:
        builder.check("samples", False, "insufficient samples")
        return builder.build()
    rng = Random(seed)
    worst: dict[str, float] = {}
    for _ in range(count):
        if sampler is not None:
            g, m = sampler(rng)
        else:
            g = random_instance(rng)
            m = random_metric(rng, 4, bound=AGREEMENT_COFRAME_BOUND)
        for name, deviation in _agreement(g, m, tol).items():
            worst[name] = max(worst.get(name, 0.0), deviation)
    for name in sorted(worst):
        within = worst[name] <= AGREEMENT_TOLERANCE
        builder.check(f"{name} within {AGREEMENT_TOLERANCE} relative", within, f"max {worst[name]:.3e}")
    builder.add_evidence("max_deviation", {name: format_scalar(value) for name, value in sorted(worst.items())})
    return builder.build()
