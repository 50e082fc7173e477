"""
Every self-dual almost-Kahler metric on a four-dimensional Lie group is Kahler.

The proof is replayed in its own order: the dS family with ``W+ = 0`` and
``W != 0`` carries only Kahler structures; conformally flat metrics on the
abelian algebra and on rr30 are flat and their structures Kahler;
conformally flat r2prime carries non-Kahler almost-Kahler structures
whose H is not constant. The step from constant H to self-duality is a
cited fact; it is checked for consistency on every structure found here.
"""

from typing import Mapping, Sequence

from akverify.core.scalar import EXACT, Scalar, ScalarMode, format_scalar
from akverify.geometry.hodge import curvature_blocks
from akverify.geometry.metric import MetricFrame
from akverify.hermitian.connection import Constant, constant_H_test
from akverify.hermitian.structure import AlmostHermitianStructure, candidate_structures, circle_point
from akverify.lie.algebra import LieAlgebra
from akverify.lie.catalog import instantiate
from akverify.scenarios import abelian_rr30, ds_kahler, r2prime_ak, r2prime_conf_flat
from akverify.scenarios.r2prime import ak_structure_at, r2prime_algebra
from akverify.scenarios.report import CheckLogger, ReportBuilder, VerificationReport, merge_reports
from akverify.scenarios.samples import CIRCLE_TS, DS_LAMBDAS

CLAIM = "main-theorem"
SUB_CLAIMS = ("dS-kahler", "abelian-rr30", "r2prime-ak")


def _found_structures(
    lambdas: Sequence[Scalar], ak_samples: Sequence[Mapping[str, Scalar]], mode: ScalarMode
) -> list[tuple[str, LieAlgebra, AlmostHermitianStructure]]:
    found = []
    for lam in lambdas:
        g = instantiate("dS", mode, **{"lambda": lam})
        label = f"dS lambda={format_scalar(mode.coerce(lam))}"
        found += [(label, g, s) for s in ds_kahler.kahler_structures(g, mode)]
    circles = [circle_point(t) for t in CIRCLE_TS[:2]]
    for name in abelian_rr30.ALGEBRAS:
        g = instantiate(name, mode)
        found += [(name, g, s) for s in candidate_structures(g, MetricFrame.identity(4, mode), circles)]
    g = r2prime_algebra(mode)
    for sample in ak_samples:
        _, s, _, _ = ak_structure_at(g, sample["a1"], sample["a4"], sample["a5"], sample["a6"], sample["t"], mode)
        found.append(("r2prime", g, s))
    return found


def _check_cited_fact(
    builder: ReportBuilder,
    lambdas: Sequence[Scalar],
    ak_samples: Sequence[Mapping[str, Scalar]],
    mode: ScalarMode,
) -> None:
    """Every structure with constant H has ``W- = 0`` in the orientation of its ``omega``."""
    found = _found_structures(lambdas, ak_samples, mode)
    constant: dict[str, int] = {}
    violations = []
    for label, g, s in found:
        if not isinstance(constant_H_test(g, s.metric, s), Constant):
            continue
        constant[label] = constant.get(label, 0) + 1
        blocks = curvature_blocks(g, s.metric.with_orientation(s.omega_orientation))
        if not blocks.wminus.is_zero():
            violations.append(label)
    total = sum(constant.values())
    builder.check(
        "cited-fact-consistency",
        total > 0 and not violations,
        f"{total} of {len(found)} structures have constant H" + (f"; W- != 0 on {violations}" if violations else ""),
    )
    builder.add_evidence("cited-fact-consistency", {"constant_H": constant, "structures": len(found)})


def verify_main_theorem(
    seed: int = 0,
    lambdas: Sequence[int | Scalar] = DS_LAMBDAS,
    conf_flat_samples: Sequence[Mapping[str, int | Scalar]] | None = None,
    ak_samples: Sequence[Mapping[str, int | Scalar]] | None = None,
    mode: ScalarMode = EXACT,
    logger: CheckLogger | None = None,
) -> VerificationReport:
    """
    Compose the claim verifiers in the order of the proof.

    Sub-claims are ``dS-kahler`` (at every ``lambda``), ``abelian-rr30`` and
    ``r2prime-ak``; ``r2prime-conf-flat`` runs as the precondition of the last.
    An empty sample set fails with "insufficient samples".
    """
    lambdas = [mode.coerce(lam) for lam in lambdas]
    builder = ReportBuilder(
        CLAIM,
        {"seed": seed, "lambda": [format_scalar(lam) for lam in lambdas], "mode": mode.label()},
        logger,
    )
    empty = [
        name
        for name, given in (("lambda", lambdas), ("conf_flat", conf_flat_samples), ("ak", ak_samples))
        if given is not None and len(given) == 0
    ]
    if empty:
        builder.check("samples", False, f"insufficient samples: {', '.join(empty)}")
        return builder.build()

    labelled = [(f"lambda={format_scalar(lam)}", ds_kahler.verify_dS_kahler(lam, mode, logger)) for lam in lambdas]
    builder.add_sub_report(merge_reports("dS-kahler", labelled))
    builder.add_sub_report(abelian_rr30.verify_abelian_rr30(seed, mode=mode, logger=logger))

    conf = r2prime_conf_flat.verify_r2prime_conf_flat(conf_flat_samples, seed, mode, logger)
    detail = "" if conf.passed else "failed: " + ", ".join(conf.failed_checks())
    builder.check("r2prime-conf-flat precondition", conf.passed, detail)
    builder.add_evidence("r2prime-conf-flat", conf.model_dump(exclude_none=True, exclude={"elapsed_seconds"}))
    builder.add_sub_report(r2prime_ak.verify_r2prime_ak(ak_samples, seed, mode, logger))

    cited = ak_samples if ak_samples is not None else r2prime_ak.default_samples(seed, count=0, mode=mode)
    cited = [{k: mode.coerce(v) for k, v in s.items()} for s in cited]
    _check_cited_fact(builder, lambdas, cited, mode)
    return builder.build()
