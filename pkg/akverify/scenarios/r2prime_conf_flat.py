"""Conformally flat metrics on r2prime: the four coframe relations and the elimination behind them."""

from random import Random
from typing import Mapping, Sequence

from akverify.core.scalar import EXACT, Scalar, ScalarMode, format_scalar
from akverify.geometry.curvature import curvature
from akverify.scenarios.r2prime import (
    RELATIONS,
    W_1223,
    W_1323,
    W_1324,
    W_2434,
    a2_substitution,
    conf_flat_scalar,
    conformally_flat_r2prime,
    frame_weyl,
    on_a9_branch,
    perturb_relation,
    r2prime_algebra,
    r2prime_metric,
    weyl_display_1223,
    weyl_display_2434,
    weyl_display_branch,
    weyl_display_generic,
    weyl_display_substituted,
)
from akverify.scenarios.report import CheckLogger, ReportBuilder, VerificationReport, format_parameters
from akverify.scenarios.samples import (
    CONF_FLAT_EXAMPLE,
    GENERIC_A2_VALUES,
    PERTURBATION,
    PYTHAGOREAN_BRANCH,
    WEYL_A2_DEGREE,
    random_conf_flat_tuples,
    random_coframe_parameters,
)

CLAIM = "r2prime-conf-flat"


def default_samples(seed: int = 0, count: int = 5) -> list[dict[str, Scalar]]:
    """The worked example followed by ``count`` random tuples."""
    return [dict(CONF_FLAT_EXAMPLE)] + random_conf_flat_tuples(Random(seed), count)


def _generic_base(rng: Random) -> dict[str, Scalar]:
    while True:
        p = random_coframe_parameters(rng)
        if not on_a9_branch(p) and p["a9"] != 0:
            return p


def _check_relations(builder: ReportBuilder, index: int, free: Mapping[str, Scalar], mode: ScalarMode) -> None:
    g = r2prime_algebra(mode)
    p = conformally_flat_r2prime(free, mode)
    data = curvature(g, r2prime_metric(p, mode))
    tag = f"sample[{index}]"
    builder.check(f"{tag} relations give W = 0", data.weyl_is_zero())
    s = data.scalar
    builder.check(f"{tag} s < 0", s < 0, f"s = {format_scalar(s)}")
    builder.check(f"{tag} s = -6/a1^2", mode.equal(s, conf_flat_scalar(p["a1"])), f"s = {format_scalar(s)}")

    delta = mode.coerce(PERTURBATION)
    perturbed = {}
    for relation in RELATIONS:
        q = perturb_relation(p, relation, delta)
        perturbed[relation] = q
        qdata = curvature(g, r2prime_metric(q, mode))
        builder.check(f"{tag} perturbed {relation} gives W != 0", not qdata.weyl_is_zero())

    # the last two displays stay valid with a8 (resp. a7) off its relation
    q = perturbed["a8"]
    m = r2prime_metric(q, mode)
    computed = frame_weyl(g, m, W_1223)
    builder.check(
        f"{tag} W(f1,f2,f2,f3) display",
        mode.equal(computed, weyl_display_1223(q)),
        f"computed {format_scalar(computed)}",
    )
    q = perturbed["a7"]
    m = r2prime_metric(q, mode)
    computed = frame_weyl(g, m, W_2434)
    builder.check(
        f"{tag} W(f2,f4,f3,f4) display",
        mode.equal(computed, weyl_display_2434(q)),
        f"computed {format_scalar(computed)}",
    )
    builder.add_evidence(f"{tag} parameters", format_parameters(p))
    builder.add_evidence(f"{tag} scalar", format_scalar(s))


def _check_generic_display(builder: ReportBuilder, rng: Random, mode: ScalarMode) -> None:
    """``2 W(f1,f3,f2,f3)`` against the generic display at ``WEYL_A2_DEGREE + 1`` values of ``a2``."""
    g = r2prime_algebra(mode)
    base = _generic_base(rng)
    for a2 in GENERIC_A2_VALUES:
        p = {name: mode.coerce(v) for name, v in base.items()}
        p["a2"] = mode.coerce(a2)
        computed = frame_weyl(g, r2prime_metric(p, mode), W_1323)
        builder.check(
            f"generic W(f1,f3,f2,f3) display at a2={format_scalar(p['a2'])}",
            mode.equal(2 * computed, weyl_display_generic(p)),
            f"computed {format_scalar(computed)}",
        )
    builder.degree_bound("W(f1,f3,f2,f3) in a2", WEYL_A2_DEGREE)
    builder.add_evidence("generic base parameters", format_parameters(base))


def _check_substitution(builder: ReportBuilder, rng: Random, mode: ScalarMode, count: int) -> None:
    g = r2prime_algebra(mode)
    for index in range(count):
        p = {name: mode.coerce(v) for name, v in _generic_base(rng).items()}
        p["a2"] = a2_substitution(p)
        m = r2prime_metric(p, mode)
        data = curvature(g, m)
        tag = f"substitution[{index}]"
        builder.check(f"{tag} W(f1,f3,f2,f3) = 0", mode.is_zero(frame_weyl(g, m, W_1323, data)))
        computed = frame_weyl(g, m, W_1324, data)
        builder.check(
            f"{tag} W(f1,f3,f2,f4) display",
            mode.equal(computed, weyl_display_substituted(p)),
            f"computed {format_scalar(computed)}",
        )


def _check_branch(builder: ReportBuilder, rng: Random, mode: ScalarMode) -> None:
    """On ``a9^2 = 1 - a10^2/a6^2`` the component is nonzero, which forces ``a10 = a6``."""
    g = r2prime_algebra(mode)
    for a6, a10, a9 in PYTHAGOREAN_BRANCH:
        p = {name: mode.coerce(v) for name, v in random_coframe_parameters(rng).items()}
        p.update(a6=mode.coerce(a6), a10=mode.coerce(a10), a9=mode.coerce(a9))
        tag = f"branch a6={a6} a10={a10} a9={a9}"
        computed = frame_weyl(g, r2prime_metric(p, mode), W_1323)
        builder.check(
            f"{tag} W(f1,f3,f2,f3) display",
            mode.equal(computed, weyl_display_branch(p)),
            f"computed {format_scalar(computed)}",
        )
        builder.check(f"{tag} W(f1,f3,f2,f3) != 0", not mode.is_zero(computed))
        builder.check(f"{tag} sign opposite to a9", (computed > 0) == (p["a9"] < 0))


def verify_r2prime_conf_flat(
    samples: Sequence[Mapping[str, int | Scalar]] | None = None,
    seed: int = 0,
    mode: ScalarMode = EXACT,
    logger: CheckLogger | None = None,
) -> VerificationReport:
    """
    Replay the conformal flatness elimination on r2prime.

    Forward: the four relations give ``W = 0`` and ``s = -6/a1^2 < 0``.
    Backward: shifting any single relation by ``PERTURBATION`` gives ``W != 0``.
    Intermediate: each displayed Weyl quotient matches ``weyl_component``.

    Raises:
        CatalogError: If a sample has non-positive ``a1``, ``a3`` or ``a6``.
    """
    samples = default_samples(seed) if samples is None else list(samples)
    builder = ReportBuilder(
        CLAIM,
        {"seed": seed, "mode": mode.label(), "samples": [format_parameters(s) for s in samples]},
        logger,
    )
    if not samples:
        builder.check("samples", False, "insufficient samples")
        return builder.build()
    for index, free in enumerate(samples):
        _check_relations(builder, index, free, mode)
    rng = Random(seed)
    _check_generic_display(builder, rng, mode)
    _check_substitution(builder, rng, mode, count=3)
    _check_branch(builder, rng, mode)
    builder.add_evidence("scalar curvature", "s = -6/a1^2 at every sample (sampled, not proved)")
    return builder.build()
