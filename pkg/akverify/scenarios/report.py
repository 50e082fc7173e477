"""Verification reports shared by every claim verifier."""

import time
from typing import Any, Literal, Mapping, Protocol, Sequence

from pydantic import BaseModel, ConfigDict, Field

from akverify.core.scalar import Scalar, format_scalar
from akverify.core.schemas import SCHEMA_VERSION


class CheckModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    passed: bool
    detail: str = ""


class VerificationReport(BaseModel):
    """Outcome of one claim: every asserted identity with its verdict plus evidence."""

    model_config = ConfigDict(extra="forbid")

    schema_version: str = SCHEMA_VERSION
    claim: str
    status: Literal["pass", "fail"]
    parameters: dict[str, Any] = Field(default_factory=dict)
    checks: list[CheckModel] = Field(default_factory=list)
    evidence: dict[str, Any] = Field(default_factory=dict)
    sub_claims: list[str] = Field(default_factory=list)
    degree_bounds: dict[str, int] = Field(default_factory=dict)
    run: dict[str, Any] | None = None
    inputs: dict[str, str] = Field(default_factory=dict)
    elapsed_seconds: float | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def failed_checks(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_json_dict(self) -> dict[str, Any]:
        """JSON payload; ``elapsed_seconds`` only when it was requested."""
        return self.model_dump(exclude_none=True)


class CheckLogger(Protocol):
    def log_check(self, claim: str, check: str, passed: bool, detail: str = "") -> None: ...

    def debug(self, message: str) -> None: ...


class ReportBuilder:
    """Collects checks and evidence while a verifier runs."""

    def __init__(self, claim: str, parameters: dict[str, Any] | None = None, logger: CheckLogger | None = None):
        self.claim = claim
        self.parameters = dict(parameters or {})
        self.logger = logger
        self.checks: list[CheckModel] = []
        self.evidence: dict[str, Any] = {}
        self.sub_claims: list[str] = []
        self.degree_bounds: dict[str, int] = {}
        self._start = time.perf_counter()

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        passed = bool(passed)
        self.checks.append(CheckModel(name=name, passed=passed, detail=detail))
        if self.logger is not None:
            self.logger.log_check(self.claim, name, passed, detail)
        return passed

    def add_evidence(self, key: str, value: Any) -> None:
        self.evidence[key] = value

    def add_sub_report(self, report: VerificationReport) -> None:
        """Record a composed claim as one check plus its full report as evidence."""
        self.sub_claims.append(report.claim)
        detail = "" if report.passed else "failed: " + ", ".join(report.failed_checks())
        self.check(report.claim, report.passed, detail)
        nested = report.model_dump(exclude_none=True, exclude={"elapsed_seconds"})
        self.evidence.setdefault("sub_reports", {})[report.claim] = nested

    def degree_bound(self, identity: str, degree: int) -> None:
        self.degree_bounds[identity] = degree

    def build(self) -> VerificationReport:
        status = "pass" if self.checks and all(c.passed for c in self.checks) else "fail"
        elapsed = time.perf_counter() - self._start
        if self.logger is not None:
            self.logger.debug(f"{self.claim}: {len(self.checks)} checks in {elapsed:.3f}s -> {status}")
        return VerificationReport(
            claim=self.claim,
            status=status,
            parameters=self.parameters,
            checks=self.checks,
            evidence=self.evidence,
            sub_claims=self.sub_claims,
            degree_bounds=self.degree_bounds,
            elapsed_seconds=elapsed,
        )


def finalize(
    report: VerificationReport,
    run: dict[str, Any] | None = None,
    inputs: dict[str, str] | None = None,
    timing: bool = False,
) -> VerificationReport:
    """Attach the run record; drop the elapsed time unless timing was requested."""
    return report.model_copy(
        update={
            "run": run,
            "inputs": dict(inputs or {}),
            "elapsed_seconds": report.elapsed_seconds if timing else None,
        }
    )


def format_parameters(values: Mapping[str, Scalar]) -> dict[str, str]:
    """Scalars as ``"p/q"`` strings, keys sorted."""
    return {name: format_scalar(values[name]) for name in sorted(values)}


def merge_reports(claim: str, labelled: Sequence[tuple[str, VerificationReport]]) -> VerificationReport:
    """One report for a claim run at several parameter points; check names get the point label."""
    checks = [
        CheckModel(name=f"{label} {c.name}", passed=c.passed, detail=c.detail)
        for label, report in labelled
        for c in report.checks
    ]
    degree_bounds: dict[str, int] = {}
    for _, report in labelled:
        degree_bounds.update(report.degree_bounds)
    passed = bool(checks) and all(report.passed for _, report in labelled)
    return VerificationReport(
        claim=claim,
        status="pass" if passed else "fail",
        parameters={label: report.parameters for label, report in labelled},
        checks=checks,
        evidence={label: report.evidence for label, report in labelled},
        degree_bounds=degree_bounds,
    )
