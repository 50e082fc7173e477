"""Conformally flat metrics on the abelian algebra and on rr30 are flat, and their almost-Kahler structures Kahler."""

from random import Random

from akverify.core.matrix import Matrix
from akverify.core.scalar import EXACT, ScalarMode, format_scalar
from akverify.geometry.curvature import curvature
from akverify.geometry.hodge import curvature_blocks
from akverify.geometry.metric import MetricFrame, random_metric
from akverify.geometry.report import format_matrix
from akverify.hermitian.blocks import wplus_J_blocks
from akverify.hermitian.nijenhuis import nijenhuis
from akverify.hermitian.structure import candidate_structures, circle_point
from akverify.lie.algebra import LieAlgebra
from akverify.lie.catalog import instantiate
from akverify.scenarios.report import CheckLogger, ReportBuilder, VerificationReport
from akverify.scenarios.samples import CIRCLE_TS

CLAIM = "abelian-rr30"
ALGEBRAS = ("abelian", "rr30")


def rr30_flat_metric(a, b, c, mode: ScalarMode = EXACT) -> MetricFrame:
    """Coframe ``diag(a, a, b, c)``; flat for every ``a, b, c > 0``."""
    return MetricFrame.from_coframe(Matrix.diag([a, a, b, c], mode))


def _sample_metrics(name: str, rng: Random, samples: int, mode: ScalarMode) -> list[tuple[str, MetricFrame]]:
    metrics = [("identity", MetricFrame.identity(4, mode))]
    metrics += [(f"random[{i}]", random_metric(rng, 4, mode=mode)) for i in range(samples)]
    if name == "rr30":
        for i in range(samples):
            a, b, c = (rng.randint(1, 5) for _ in range(3))
            metrics.append((f"flat-family[{i}]", rr30_flat_metric(a, b, c, mode)))
    return metrics


def _check_metric(
    builder: ReportBuilder, g: LieAlgebra, m: MetricFrame, tag: str, circles, mode: ScalarMode
) -> bool:
    """Checks for one metric; False when ``W != 0`` excludes it from the sample set."""
    data = curvature(g, m)
    if not data.weyl_is_zero():
        return False
    blocks = curvature_blocks(g, m, data)
    flipped = curvature_blocks(g, m.flipped(), data)
    builder.check(f"{tag} curvature operator = 0", blocks.operator.is_zero())
    candidates = candidate_structures(g, m, circles)
    builder.check(f"{tag} almost-Kahler structures found", bool(candidates), f"{len(candidates)} structures")
    topleft_zero = True
    integrable = True
    for s in candidates:
        oriented = m.with_orientation(s.omega_orientation)
        own = blocks if oriented.orientation == m.orientation else flipped
        topleft_zero &= mode.is_zero(wplus_J_blocks(g, oriented, s, own).topleft)
        integrable &= nijenhuis(g, s).is_zero()
    builder.check(f"{tag} topleft = 0 for every structure", topleft_zero)
    builder.check(f"{tag} N = 0 for every structure", integrable)
    return True


def verify_abelian_rr30(
    seed: int = 0,
    samples: int = 3,
    mode: ScalarMode = EXACT,
    logger: CheckLogger | None = None,
    circle_ts=CIRCLE_TS,
) -> VerificationReport:
    """
    Sample metrics on both algebras, keep the conformally flat ones and
    check that they are flat and every sampled almost-Kahler structure is Kahler.
    """
    builder = ReportBuilder(CLAIM, {"seed": seed, "samples": samples, "mode": mode.label()}, logger)
    rng = Random(seed)
    circles = [circle_point(t) for t in circle_ts]
    for name in ALGEBRAS:
        g = instantiate(name, mode)
        kept, excluded = [], []
        for label, m in _sample_metrics(name, rng, samples, mode):
            tag = f"{name} {label}"
            if _check_metric(builder, g, m, tag, circles, mode):
                kept.append(label)
            else:
                excluded.append({"metric": label, "gram": format_matrix(m.gram)})
        builder.check(f"{name} conformally flat samples", bool(kept), f"{len(kept)} kept, {len(excluded)} excluded")
        builder.add_evidence(f"{name}", {"kept": kept, "excluded_weyl_nonzero": excluded})
    builder.add_evidence("circle_points", [[format_scalar(x) for x in p] for p in circles])
    return builder.build()
