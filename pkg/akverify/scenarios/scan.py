"""Sample metrics on one catalog family and tally structures and their H verdicts."""

from random import Random
from typing import Any

from pydantic import BaseModel, ConfigDict, Field
from sympy import Rational

from akverify.core.schemas import SCHEMA_VERSION
from akverify.core.scalar import EXACT, ScalarMode, format_scalar
from akverify.geometry.curvature import curvature
from akverify.geometry.hodge import curvature_blocks
from akverify.geometry.metric import MetricFrame, random_metric
from akverify.hermitian.connection import Constant, constant_H_test
from akverify.hermitian.structure import AlmostHermitianStructure, candidate_structures, circle_point
from akverify.lie.algebra import LieAlgebra
from akverify.lie.catalog import get_entry, instantiate
from akverify.scenarios.ds_kahler import KAHLER_K_SQUARED, ds_metric, kahler_structures
from akverify.scenarios.r2prime import ak_parameters, ak_structure, conformally_flat_r2prime, r2prime_metric
from akverify.scenarios.report import CheckLogger, format_parameters
from akverify.scenarios.samples import CIRCLE_TS, DS_K_VALUES, random_ak_samples, random_conf_flat_tuples

DEFAULT_SCAN_SAMPLES = 10


class ScanEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    label: str
    parameters: dict[str, str] = Field(default_factory=dict)
    scalar: str
    flat: bool
    weyl_zero: bool
    wplus_zero: bool
    structures: int
    constant_H: list[str] = Field(default_factory=list)
    nonconstant_H: int = 0


class ScanSummary(BaseModel):
    """Counts over every sampled metric of one family."""

    model_config = ConfigDict(extra="forbid")

    schema_version: str = SCHEMA_VERSION
    family: str
    samples: int
    seed: int
    metrics: int
    flat: int
    conformally_flat: int
    wplus_zero: int
    structures: int
    constant_H: int
    nonconstant_H: int
    kappas: list[str] = Field(default_factory=list)
    entries: list[ScanEntry] = Field(default_factory=list)
    run: dict[str, Any] | None = None

    def to_json_dict(self) -> dict[str, Any]:
        return self.model_dump(exclude_none=True)


def _entry(
    label: str,
    g: LieAlgebra,
    m: MetricFrame,
    structures: list[AlmostHermitianStructure],
    parameters: dict[str, str],
) -> ScanEntry:
    data = curvature(g, m)
    blocks = curvature_blocks(g, m, data)
    kappas, nonconstant = [], 0
    for s in structures:
        verdict = constant_H_test(g, m, s)
        if isinstance(verdict, Constant):
            kappas.append(format_scalar(verdict.kappa))
        else:
            nonconstant += 1
    return ScanEntry(
        label=label,
        parameters=parameters,
        scalar=format_scalar(data.scalar),
        flat=data.riemann.is_zero(),
        weyl_zero=data.weyl_is_zero(),
        wplus_zero=blocks.wplus.is_zero(),
        structures=len(structures),
        constant_H=kappas,
        nonconstant_H=nonconstant,
    )


def _scan_ds(rng: Random, samples: int, mode: ScalarMode) -> list[ScanEntry]:
    entries = []
    for index in range(samples):
        lam = Rational(rng.randint(0, 6), rng.randint(1, 3))
        k = rng.choice(DS_K_VALUES)
        g = instantiate("dS", mode, **{"lambda": lam})
        m = ds_metric(k, mode)
        params = {"lambda": format_scalar(lam), "k": format_scalar(k)}
        # compatible closed structures exist only for k^2 = 4
        kahler_k = mode.equal(mode.coerce(k * k), mode.coerce(KAHLER_K_SQUARED))
        structures = kahler_structures(g, mode) if kahler_k else []
        entries.append(_entry(f"dS[{index}]", g, m, structures, params))
    return entries


def _scan_r2prime(rng: Random, samples: int, mode: ScalarMode, circles) -> list[ScanEntry]:
    """Alternate almost-Kahler parameter points (``a2 = 0, a3 = a1``) with generic conformally flat ones."""
    g = instantiate("r2prime", mode)
    entries = []
    for index in range(samples):
        if index % 2 == 0:
            s = random_ak_samples(rng, count=1)[0]
            p = ak_parameters(s["a1"], s["a4"], s["a5"], s["a6"], mode)
        else:
            p = conformally_flat_r2prime(random_conf_flat_tuples(rng, count=1)[0], mode)
        m = r2prime_metric(p, mode)
        structures = []
        if mode.is_zero(p["a2"]) and mode.equal(p["a3"], p["a1"]):
            for b2, b3 in circles:
                structures.append(ak_structure(g, p, mode.coerce(b2), mode.coerce(b3), mode))
        entries.append(_entry(f"r2prime[{index}]", g, m, structures, format_parameters(p)))
    return entries


def _scan_flat_candidates(name: str, rng: Random, samples: int, mode: ScalarMode, circles) -> list[ScanEntry]:
    g = instantiate(name, mode)
    metrics = [("identity", MetricFrame.identity(4, mode))]
    metrics += [(f"random[{i}]", random_metric(rng, 4, mode=mode)) for i in range(max(samples - 1, 0))]
    return [
        _entry(f"{name} {label}", g, m, candidate_structures(g, m, circles), {})
        for label, m in metrics
    ]


def scan_family(
    name: str,
    samples: int = DEFAULT_SCAN_SAMPLES,
    seed: int = 0,
    mode: ScalarMode = EXACT,
    logger: CheckLogger | None = None,
) -> ScanSummary:
    """
    Deterministic scan of ``samples`` metrics on one family.

    Raises:
        CatalogError: If ``name`` is not a catalog family.
    """
    family = get_entry(name).name
    rng = Random(seed)
    circles = [circle_point(t) for t in CIRCLE_TS[:2]]
    if family == "dS":
        entries = _scan_ds(rng, samples, mode)
    elif family == "r2prime":
        entries = _scan_r2prime(rng, samples, mode, circles)
    else:
        entries = _scan_flat_candidates(family, rng, samples, mode, circles[:1])
    if logger is not None:
        logger.debug(f"scan {family}: {len(entries)} metrics")
    kappas = sorted({k for e in entries for k in e.constant_H})
    return ScanSummary(
        family=family,
        samples=samples,
        seed=seed,
        metrics=len(entries),
        flat=sum(e.flat for e in entries),
        conformally_flat=sum(e.weyl_zero for e in entries),
        wplus_zero=sum(e.wplus_zero for e in entries),
        structures=sum(e.structures for e in entries),
        constant_H=sum(len(e.constant_H) for e in entries),
        nonconstant_H=sum(e.nonconstant_H for e in entries),
        kappas=kappas,
        entries=entries,
    )
