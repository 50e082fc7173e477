"""Tests for the claim verifiers, their reports and the family scan."""

import time
from random import Random

import numpy as np
import pytest
from sympy import Rational

from akverify.core.matrix import Matrix
from akverify.geometry.curvature import curvature
from akverify.geometry.metric import random_metric
from akverify.hermitian.nijenhuis import NIJENHUIS_SCALE
from akverify.lie.catalog import CatalogError, instantiate
from akverify.scenarios import (
    scan_family,
    verify_abelian_rr30,
    verify_dS_kahler,
    verify_main_theorem,
    verify_mode_agreement,
    verify_r2prime_ak,
    verify_r2prime_conf_flat,
    verify_tensor_invariants,
)
from akverify.scenarios.abelian_rr30 import rr30_flat_metric
from akverify.scenarios.invariants import cayley_orthogonal, random_structure, relative_deviation
from akverify.scenarios.r2prime import (
    a2_substitution,
    ak_parameters,
    ak_structure_at,
    calibrate_nijenhuis_scale,
    conf_flat_scalar,
    conformally_flat_r2prime,
    curvature_of,
    perturb_relation,
    r2prime_algebra,
    r2prime_metric,
)
from akverify.scenarios.report import CheckModel, ReportBuilder, VerificationReport, finalize, merge_reports
from akverify.scenarios.samples import CONF_FLAT_EXAMPLE, PERTURBATION


def failing_report(claim: str) -> VerificationReport:
    return VerificationReport(claim=claim, status="fail", checks=[CheckModel(name="forced", passed=False)])


def passing_report(claim: str) -> VerificationReport:
    return VerificationReport(claim=claim, status="pass", checks=[CheckModel(name="ok", passed=True)])


class TestReportBuilder:
    """Test check collection and report assembly."""

    def test_all_passing(self):
        """Test that a report passes when every check passes."""
        builder = ReportBuilder("demo", {"seed": 0})
        builder.check("one", True)
        builder.check("two", True, "detail")
        report = builder.build()

        assert report.passed
        assert report.failed_checks() == []
        assert report.parameters == {"seed": 0}

    def test_no_checks_fails(self):
        """Test that an empty report is a failure."""
        assert not ReportBuilder("demo").build().passed

    def test_logger_receives_checks(self, mocker):
        """Test that every check is forwarded to the logger."""
        logger = mocker.Mock()
        builder = ReportBuilder("demo", logger=logger)
        builder.check("one", False, "why")
        builder.build()

        logger.log_check.assert_called_once_with("demo", "one", False, "why")
        logger.debug.assert_called_once()

    def test_sub_report(self):
        """Test that a composed claim becomes one check plus nested evidence."""
        builder = ReportBuilder("outer")
        builder.add_sub_report(failing_report("inner"))
        report = builder.build()

        assert report.sub_claims == ["inner"]
        assert report.failed_checks() == ["inner"]
        assert report.checks[0].detail == "failed: forced"
        assert report.evidence["sub_reports"]["inner"]["status"] == "fail"

    def test_finalize_drops_elapsed(self):
        """Test that elapsed time is only kept with timing."""
        builder = ReportBuilder("demo")
        builder.check("one", True)
        report = builder.build()

        assert "elapsed_seconds" not in finalize(report, {"seed": 0}).to_json_dict()
        assert "elapsed_seconds" in finalize(report, {"seed": 0}, timing=True).to_json_dict()
        assert finalize(report, {"seed": 0}).run == {"seed": 0}

    def test_merge_reports(self):
        """Test that merged check names carry their point label."""
        labelled = [("lambda=0", passing_report("dS-kahler")), ("lambda=1", failing_report("dS-kahler"))]
        merged = merge_reports("dS-kahler", labelled)

        assert not merged.passed
        assert merged.failed_checks() == ["lambda=1 forced"]
        assert set(merged.parameters) == {"lambda=0", "lambda=1"}


class TestDSKahler:
    """Test the dS verifier."""

    @pytest.mark.parametrize("lam", [0, Rational(1, 2), "3"])
    def test_passes(self, lam):
        """Test the claim at several lambda values."""
        report = verify_dS_kahler(lam)

        assert report.passed, report.failed_checks()
        assert report.degree_bounds == {"dS curvature in lambda": 2}

    def test_corrupted_bracket(self):
        """Test that a bracket table violating Jacobi fails on the first check."""
        g = instantiate("dS", **{"lambda": 1}).with_constant(1, 4, 4, -2)
        report = verify_dS_kahler(1, algebra=g)

        assert not report.passed
        assert report.failed_checks() == ["jacobi"]

    def test_negative_lambda(self):
        """Test that lambda < 0 is an input error."""
        with pytest.raises(CatalogError, match="lambda >= 0"):
            verify_dS_kahler(-1)

    def test_evidence(self):
        """Test the recorded J and closed forms."""
        report = verify_dS_kahler(0)

        assert report.evidence["k=2 J"][0] == ["0", "0", "0", "1/2"]
        assert len(report.evidence["closed_forms"]) == 3


class TestAbelianRR30:
    """Test the flat algebras verifier."""

    def test_passes(self):
        """Test the claim with a small sample."""
        report = verify_abelian_rr30(seed=1, samples=1)

        assert report.passed, report.failed_checks()
        assert "identity" in report.evidence["rr30"]["kept"]

    def test_flat_family(self):
        """Test that the coframes diag(a, a, b, c) are flat on rr30."""
        data = curvature(instantiate("rr30"), rr30_flat_metric(2, 3, 5))

        assert data.riemann.is_zero()


class TestR2primeConfFlat:
    """Test the conformal flatness elimination."""

    def test_worked_example(self):
        """Test the completed parameters of the worked example."""
        p = conformally_flat_r2prime(CONF_FLAT_EXAMPLE)

        assert p["a10"] == 1
        assert p["a9"] == 0
        assert p["a8"] == Rational(-1, 2)
        assert p["a7"] == 4
        g, m, data = curvature_of(p)
        assert data.weyl_is_zero()
        assert data.scalar == conf_flat_scalar(p["a1"]) == -6

    @pytest.mark.parametrize("relation", ["a10=a6", "a9=0", "a8", "a7"])
    def test_perturbed_relation_breaks_flatness(self, relation):
        """Test that each relation is needed."""
        p = perturb_relation(conformally_flat_r2prime(CONF_FLAT_EXAMPLE), relation, PERTURBATION)
        _, _, data = curvature_of(p)

        assert not data.weyl_is_zero()

    def test_passes(self):
        """Test the full replay."""
        report = verify_r2prime_conf_flat(seed=0)

        assert report.passed, report.failed_checks()

    def test_empty_samples(self):
        """Test that an empty sample set fails."""
        report = verify_r2prime_conf_flat(samples=[])

        assert not report.passed
        assert report.checks[0].detail == "insufficient samples"

    def test_non_positive_parameter(self):
        """Test that a1 <= 0 is an input error."""
        bad = dict(CONF_FLAT_EXAMPLE, a1=Rational(-1))

        with pytest.raises(CatalogError, match="a1 must be positive"):
            verify_r2prime_conf_flat(samples=[bad])

    def test_substitution_undefined_on_branch(self):
        """Test the a9 branch guard."""
        p = {"a1": 1, "a3": 1, "a6": Rational(5), "a9": Rational(3, 5), "a10": Rational(4)}

        with pytest.raises(CatalogError, match="branch"):
            a2_substitution(p)


class TestR2primeAK:
    """Test the almost-Kahler r2prime verifier."""

    def test_passes(self):
        """Test the claim at a single worked sample."""
        report = verify_r2prime_ak(samples=[{"a1": 1, "a4": 0, "a5": 0, "a6": 1, "t": Rational(1, 2)}])

        assert report.passed, report.failed_checks()
        assert report.evidence["nijenhuis_scale"] == "1/4"

    def test_ak_parameters(self):
        """Test the locus a2 = 0, a3 = a1."""
        p = ak_parameters(Rational(2), Rational(0), Rational(0), Rational(1))

        assert p["a2"] == 0
        assert p["a3"] == 2
        assert p["a8"] == 0
        assert p["a7"] == 0

    def test_nijenhuis_scale_calibration(self):
        """Test that the calibrated scale is the one in use."""
        g = r2prime_algebra()
        p, s, b2, b3 = ak_structure_at(g, Rational(2), Rational(1), Rational(-1), Rational(3), Rational(1, 3))

        assert calibrate_nijenhuis_scale(g, s, p["a1"], b2, b3) == NIJENHUIS_SCALE

    def test_metric_is_conformally_flat(self):
        """Test that the almost-Kahler parameters lie on the conformally flat locus."""
        p = ak_parameters(Rational(1), Rational(2), Rational(-1), Rational(1))
        data = curvature(r2prime_algebra(), r2prime_metric(p))

        assert data.weyl_is_zero()


class TestMainTheorem:
    """Test the composed claim."""

    @pytest.mark.slow
    def test_passes(self):
        """Test the whole argument with default samples."""
        report = verify_main_theorem(seed=0)

        assert report.passed, report.failed_checks()
        assert report.sub_claims == ["dS-kahler", "abelian-rr30", "r2prime-ak"]

    def test_failing_sub_claim(self, mocker):
        """Test that one failing sub-claim fails the theorem."""
        mocker.patch("akverify.scenarios.ds_kahler.verify_dS_kahler", return_value=passing_report("dS-kahler"))
        mocker.patch("akverify.scenarios.abelian_rr30.verify_abelian_rr30", return_value=passing_report("abelian-rr30"))
        mocker.patch(
            "akverify.scenarios.r2prime_conf_flat.verify_r2prime_conf_flat",
            return_value=passing_report("r2prime-conf-flat"),
        )
        mocker.patch("akverify.scenarios.r2prime_ak.verify_r2prime_ak", return_value=failing_report("r2prime-ak"))

        report = verify_main_theorem(seed=0, lambdas=[0])

        assert not report.passed
        assert report.failed_checks() == ["r2prime-ak"]

    def test_failing_precondition(self, mocker):
        """Test that a failed conformal flatness replay is reported as the precondition."""
        mocker.patch("akverify.scenarios.ds_kahler.verify_dS_kahler", return_value=passing_report("dS-kahler"))
        mocker.patch("akverify.scenarios.abelian_rr30.verify_abelian_rr30", return_value=passing_report("abelian-rr30"))
        mocker.patch(
            "akverify.scenarios.r2prime_conf_flat.verify_r2prime_conf_flat",
            return_value=failing_report("r2prime-conf-flat"),
        )
        mocker.patch("akverify.scenarios.r2prime_ak.verify_r2prime_ak", return_value=passing_report("r2prime-ak"))

        report = verify_main_theorem(seed=0, lambdas=[0])

        assert report.failed_checks() == ["r2prime-conf-flat precondition"]

    def test_empty_lambdas(self):
        """Test that an empty sample set fails without running anything."""
        report = verify_main_theorem(lambdas=[])

        assert not report.passed
        assert "insufficient samples: lambda" in report.checks[0].detail


class TestInvariants:
    """Test the randomized identity suites."""

    def test_tensor_invariants(self):
        """Test every identity on a handful of random triples."""
        report = verify_tensor_invariants(count=3, seed=2)

        assert report.passed, report.failed_checks()
        assert "first Bianchi" in [c.name for c in report.checks]
        assert sum(report.evidence["families"].values()) == 3

    def test_tensor_invariants_time_bound(self):
        """Test that exact sweeps stay fast enough to run per commit."""
        start = time.perf_counter()
        report = verify_tensor_invariants(count=25, seed=1)
        elapsed = time.perf_counter() - start

        assert report.passed, report.failed_checks()
        assert elapsed < 10, f"25 samples took {elapsed:.1f}s"

    @pytest.mark.slow
    def test_tensor_invariants_full(self):
        """Test the default suite size."""
        assert verify_tensor_invariants(seed=0).passed

    def test_zero_count(self):
        """Test that no samples is a failure."""
        assert not verify_tensor_invariants(count=0).passed

    def test_mode_agreement(self):
        """Test float mode and the oracle against exact mode at the default sample count."""
        report = verify_mode_agreement(seed=0)

        assert report.passed, report.failed_checks()
        assert report.parameters["count"] == 100
        assert "weyl oracle within 1e-09 relative" in [c.name for c in report.checks]

    def test_relative_deviation_scales_with_magnitude(self):
        """Test that deviations are measured against the size of the exact values."""
        exact = np.array([[Rational(-176212890625, 10**9), 0], [0, 1]], dtype=object)
        rounded = np.array([[-176.2128906237922, 0.0], [0.0, 1.0]])

        assert relative_deviation(exact, rounded) < 1e-11
        assert relative_deviation([Rational(1, 3)], [0.3]) == pytest.approx(1 / 30)

    def test_mode_agreement_sampler(self):
        """Test a custom sampler of algebra and metric."""
        def sampler(rng):
            return instantiate("dS", **{"lambda": 1}), random_metric(rng)

        report = verify_mode_agreement(count=1, sampler=sampler)

        assert report.passed

    def test_cayley_orthogonal(self):
        """Test that the Cayley transform is orthogonal."""
        Q = cayley_orthogonal(Random(0))

        assert Q.T @ Q == Matrix.identity(4)

    def test_random_structure(self):
        """Test that random structures are compatible with their metric."""
        m = random_metric(Random(4))
        s = random_structure(Random(5), m)

        assert s.metric is m
        assert (s.J @ s.J + Matrix.identity(4)).is_zero()


class TestScan:
    """Test the family scan."""

    def test_abelian(self):
        """Test that every sampled structure on R^4 is Kahler with H = 0."""
        summary = scan_family("abelian", samples=3)

        assert summary.metrics == 3
        assert summary.flat == 3
        assert summary.conformally_flat == 3
        assert summary.structures > 0
        assert summary.constant_H == summary.structures
        assert summary.kappas == ["0"]

    def test_ds(self):
        """Test that only k = 2 carries structures, with H = -1."""
        summary = scan_family("dS", samples=4, seed=1)

        assert summary.wplus_zero == summary.metrics == 4
        for entry in summary.entries:
            if entry.parameters["k"] == "2":
                assert entry.structures == 2
                assert entry.constant_H == ["-1", "-1"]
            else:
                assert entry.structures == 0

    def test_r2prime(self):
        """Test that almost-Kahler points carry structures with non-constant H."""
        summary = scan_family("r2prime", samples=2)

        assert summary.conformally_flat == 2
        assert summary.entries[0].structures == 2
        assert summary.entries[0].nonconstant_H == 2
        assert summary.constant_H == 0

    def test_deterministic(self):
        """Test that the same seed gives the same summary."""
        assert scan_family("rr30", samples=2, seed=4) == scan_family("rr30", samples=2, seed=4)

    def test_json_leaves_out_run(self):
        """Test that the run record only appears once attached."""
        data = scan_family("rr30", samples=1).to_json_dict()

        assert "run" not in data
        assert data["family"] == "rr30"

    def test_unknown_family(self):
        """Test an unknown family name."""
        with pytest.raises(CatalogError):
            scan_family("sl2")
