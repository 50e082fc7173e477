"""
Almost-Kahler structures on conformally flat r2prime metrics.

Closedness pins ``b4, b5`` and ``b6 = 0``; the lifted compatibility system
forces ``b1 = 0``, ``b2^2 + b3^2 = 1``, ``a2 = 0`` and ``a3 = a1``. The
surviving structures are not Kahler and their Hermitian holomorphic
sectional curvature is not constant.
"""

from random import Random
from typing import Mapping, Sequence

from akverify.core.matrix import NoSolution, Vector
from akverify.core.scalar import EXACT, Scalar, ScalarMode, format_scalar
from akverify.geometry.hodge import curvature_blocks
from akverify.geometry.report import format_matrix, format_vector
from akverify.hermitian.blocks import wplus_J_blocks
from akverify.hermitian.compatibility import solve_compatibility
from akverify.hermitian.connection import (
    NonConstant,
    canonical_connection,
    connection_curvature,
    constant_H_test,
    hermitian_H,
)
from akverify.hermitian.nijenhuis import NIJENHUIS_SCALE, nijenhuis, nijenhuis_norm_ratio
from akverify.hermitian.structure import DegenerateFormError, frame_form, from_metric_and_omega
from akverify.lie.forms import exterior_d
from akverify.scenarios.r2prime import (
    FREE_PARAMETERS,
    ak_structure_at,
    calibrate_nijenhuis_scale,
    closed_family,
    closedness_formulas,
    conformally_flat_r2prime,
    expected_H,
    expected_nijenhuis_f1f2,
    omega_display_matrix,
    r2prime_algebra,
    r2prime_metric,
    solve_closed_tail,
)
from akverify.scenarios.report import CheckLogger, ReportBuilder, VerificationReport, format_parameters
from akverify.scenarios.samples import PERTURBATION, random_ak_samples, random_conf_flat_tuples

CLAIM = "r2prime-ak"

WORKED_SAMPLES: tuple[dict[str, int | str], ...] = (
    {"a1": 1, "a4": 0, "a5": 0, "a6": 1, "t": "1/2"},
    {"a1": 2, "a4": 0, "a5": 0, "a6": 1, "t": 0},
)


def default_samples(seed: int = 0, count: int = 5, mode: ScalarMode = EXACT) -> list[dict[str, Scalar]]:
    worked = [
        {k: mode.parse(v) if isinstance(v, str) else mode.coerce(v) for k, v in sample.items()}
        for sample in WORKED_SAMPLES
    ]
    return worked + random_ak_samples(Random(seed), count)


def _check_closedness(builder: ReportBuilder, free: Mapping[str, Scalar], tag: str, mode: ScalarMode) -> None:
    """``d omega = 0`` solved for ``(b4, b5, b6)`` against the closed-form expressions."""
    g = r2prime_algebra(mode)
    p = conformally_flat_r2prime(free, mode)
    m = r2prime_metric(p, mode)
    for b1, b2, b3 in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (2, -3, 5)):
        b1, b2, b3 = mode.coerce(b1), mode.coerce(b2), mode.coerce(b3)
        tail = solve_closed_tail(g, m, b1, b2, b3)
        expected = closedness_formulas(p, b2, b3)
        ok = not isinstance(tail, NoSolution) and all(mode.equal(x, y) for x, y in zip(tail, expected))
        builder.check(f"{tag} closedness at b=({b1},{b2},{b3})", ok)
    b4, b5, b6 = closedness_formulas(p, mode.one, mode.one)
    off = frame_form(m, [mode.zero, mode.one, mode.one, b4 + mode.coerce(PERTURBATION), b5, b6])
    builder.check(f"{tag} perturbed b4 is not closed", not exterior_d(g, off).is_zero())


def _check_compatibility_forced(builder: ReportBuilder, free: Mapping[str, Scalar], tag: str, mode: ScalarMode) -> None:
    """The closed family admits a compatible member iff ``a2 = 0`` and ``a3 = a1``."""
    p = conformally_flat_r2prime(free, mode)
    m = r2prime_metric(p, mode)
    solution = solve_compatibility(m, closed_family(p, m))
    expected = mode.is_zero(p["a2"]) and mode.equal(p["a3"], p["a1"])
    builder.check(
        f"{tag} compatible member exists iff a2 = 0 and a3 = a1",
        solution.consistent == expected,
        f"a2={format_scalar(p['a2'])} a3={format_scalar(p['a3'])} a1={format_scalar(p['a1'])}",
    )
    if solution.consistent:
        b1_sq = solution.implied_value({(0, 0): 1})
        circle = solution.implied_value({(1, 1): 1, (2, 2): 1})
        builder.check(f"{tag} forces b1 = 0", b1_sq is not None and mode.is_zero(b1_sq))
        builder.check(f"{tag} forces b2^2 + b3^2 = 1", circle is not None and mode.equal(circle, mode.one))


def _check_structure(builder: ReportBuilder, index: int, sample: Mapping[str, Scalar], mode: ScalarMode) -> None:
    g = r2prime_algebra(mode)
    tag = f"sample[{index}]"
    p, s, b2, b3 = ak_structure_at(g, sample["a1"], sample["a4"], sample["a5"], sample["a6"], sample["t"], mode)
    m = s.metric
    a1 = p["a1"]

    free = {k: p[k] for k in FREE_PARAMETERS}
    _check_compatibility_forced(builder, free, tag, mode)
    for name in ("a2", "a3"):
        shifted = dict(free)
        shifted[name] = shifted[name] + mode.coerce(PERTURBATION)
        _check_compatibility_forced(builder, shifted, f"{tag} shifted {name}", mode)

    builder.check(f"{tag} almost-Kahler", s.is_almost_kahler(g))
    display = omega_display_matrix(p, mode.zero, b2, b3, mode)
    builder.check(f"{tag} omega display", s.omega_display().equals(display))

    try:
        from_metric_and_omega(g, m, frame_form(m, [mode.one] + [mode.zero] * 5))
        degenerate = False
    except DegenerateFormError:
        degenerate = True
    builder.check(f"{tag} b1 != 0 forces omega ^ omega = 0", degenerate)

    N = nijenhuis(g, s)
    n12 = N.frame_value(0, 1)
    expected_n = Vector([0, expected_nijenhuis_f1f2(a1, b2, b3), 0, 0], mode)
    builder.check(
        f"{tag} N(f1,f2) = (b2^2+b3^2)/(2 a1) f2",
        n12.equals(expected_n),
        f"N(f1,f2) = {format_vector(n12)}",
    )
    builder.check(f"{tag} N != 0", not N.is_zero())
    scale = calibrate_nijenhuis_scale(g, s, a1, b2, b3)
    builder.check(
        f"{tag} Nijenhuis scale",
        mode.equal(scale, mode.coerce(NIJENHUIS_SCALE)),
        f"scale = {format_scalar(scale)}",
    )

    r = connection_curvature(g, canonical_connection(g, m, s))
    values = [hermitian_H(g, m, s, f, r) for f in m.frame_vectors()]
    expected = expected_H(a1, b2, b3)
    builder.check(
        f"{tag} H(f1..f4)",
        all(mode.equal(x, y) for x, y in zip(values, expected)),
        "H = " + ", ".join(format_scalar(v) for v in values),
    )
    verdict = constant_H_test(g, m, s)
    witness_ok = (
        isinstance(verdict, NonConstant)
        and verdict.first.equals(m.frame_vector(0))
        and verdict.second.equals(m.frame_vector(1))
    )
    builder.check(f"{tag} H not constant, witness (f1, f2)", witness_ok)

    blocks = curvature_blocks(g, m)
    decomposition = wplus_J_blocks(g, m, s, blocks)
    builder.check(f"{tag} topleft = 0", mode.is_zero(decomposition.topleft))
    builder.check(f"{tag} reassembly", decomposition.reassemble().equals(blocks.wplus))
    operational = decomposition.nijenhuis_norm_squared
    builder.check(
        f"{tag} |N|^2 = 1/a1^2",
        mode.equal(operational, 1 / (a1 * a1)),
        f"|N|^2 = {format_scalar(operational)}",
    )
    ratio = nijenhuis_norm_ratio(operational, N)

    builder.add_evidence(
        f"{tag}",
        {
            "parameters": format_parameters(p),
            "b": [format_scalar(b2), format_scalar(b3)],
            "omega_display": format_matrix(s.omega_display()),
            "H": [format_scalar(v) for v in values],
            "N(f1,f2)": format_vector(n12),
            "nijenhuis_norm_squared": format_scalar(operational),
            "nijenhuis_norm_ratio": None if ratio is None else format_scalar(ratio),
        },
    )


def verify_r2prime_ak(
    samples: Sequence[Mapping[str, int | Scalar]] | None = None,
    seed: int = 0,
    mode: ScalarMode = EXACT,
    logger: CheckLogger | None = None,
) -> VerificationReport:
    """
    Check the almost-Kahler structures on conformally flat r2prime.

    Each sample carries ``a1, a4, a5, a6`` and a circle parameter ``t``
    giving ``(b2, b3)``; generic conformally flat tuples drawn from ``seed``
    exercise the closedness relations and the forced ``a2 = 0, a3 = a1``.

    Raises:
        CatalogError: If a sample violates positivity.
    """
    samples = default_samples(seed, mode=mode) if samples is None else [
        {k: mode.coerce(v) for k, v in s.items()} for s in samples
    ]
    builder = ReportBuilder(
        CLAIM,
        {"seed": seed, "mode": mode.label(), "samples": [format_parameters(s) for s in samples]},
        logger,
    )
    if not samples:
        builder.check("samples", False, "insufficient samples")
        return builder.build()
    for index, free in enumerate(random_conf_flat_tuples(Random(seed), count=3)):
        tag = f"generic[{index}]"
        _check_closedness(builder, free, tag, mode)
        _check_compatibility_forced(builder, free, tag, mode)
    for index, sample in enumerate(samples):
        _check_structure(builder, index, sample, mode)
    builder.add_evidence("nijenhuis_scale", format_scalar(NIJENHUIS_SCALE))
    return builder.build()
