"""CLI running one claim verifier and writing its report; exit 0 iff the claim passes."""

import sys
from typing import Callable

from akverify.cli.common import (
    COMMON_OPTIONS_HELP,
    EXIT_ERROR,
    EXIT_FAIL,
    EXIT_PASS,
    CommonOptions,
    UsageError,
    build_run_config,
    emit,
    emit_error,
    parse_common,
    parse_int,
    run_logged,
    take_value,
)
from akverify.core.config import Config, RunConfig
from akverify.core.logger import SessionLogger
from akverify.core.scalar import Scalar, ScalarMode, format_scalar
from akverify.scenarios import abelian_rr30, ds_kahler, invariants, main_theorem, r2prime_ak, r2prime_conf_flat
from akverify.scenarios.r2prime import FREE_PARAMETERS
from akverify.scenarios.report import VerificationReport, finalize, merge_reports
from akverify.scenarios.samples import DS_LAMBDAS

AK_DEFAULTS = {"a4": "0", "a5": "0", "a6": "1", "t": "0"}
PARAMETER_FLAGS = ("--lambda", "--t") + tuple(f"--{name}" for name in FREE_PARAMETERS)
DEFAULT_AGREEMENT_SAMPLES = 100


def print_usage():
    """Print usage information."""
    print("akverify verify")
    print()
    print("Replay one claim and report every asserted identity with its verdict.")
    print()
    print("Usage:")
    print("  akverify verify <claim> [--lambda <p/q>] [--a1 .. --a6 <p/q>] [--t <p/q>] [--samples <n>] [options]")
    print()
    print("Examples:")
    print("  akverify verify main-theorem")
    print("  akverify verify dS-kahler --lambda 1/2")
    print("  akverify verify r2prime-ak --a1 1 --t 1/2")
    print("  akverify verify tensor-invariants --samples 200 --seed 3")
    print()
    print("Claims:")
    print("  dS-kahler           W+ = 0, W != 0 dS metrics are Kahler (every sampled lambda)")
    print("  abelian-rr30        Conformally flat metrics there are flat, structures Kahler")
    print("  r2prime-conf-flat   Conformal flatness relations and Weyl component displays")
    print("  r2prime-ak          Almost-Kahler structures, Nijenhuis value, H list, non-constant H")
    print("  main-theorem        The three sub-claims in proof order plus the cited-fact check")
    print("  tensor-invariants   Curvature and Hermitian identities on random metrics")
    print("  mode-agreement      Float mode and the numpy oracle against exact mode")
    print()
    print("Options:")
    print("  --lambda <p/q>        dS parameter (default: 0, 1/2, 1, 3)")
    print("  --a1 .. --a6 <p/q>    r2prime parameters; r2prime-ak uses a1, a4, a5, a6")
    print("  --t <p/q>             Circle parameter of (b2, b3) (default: 0)")
    print("  --samples <n>         Sample count (tensor-invariants: $AKVERIFY_RANDOM_METRICS)")
    for line in COMMON_OPTIONS_HELP:
        print(line)


def parse_args(args: list[str]) -> tuple[str, dict[str, str], int | None, CommonOptions]:
    """Parse command line arguments.

    Returns:
        (claim, parameter overrides, sample count, common options)
    """
    if not args or args[0].startswith("--"):
        raise UsageError("Missing claim")
    claim = args[0]
    parameters: dict[str, str] = {}
    samples = None
    options = CommonOptions()
    i = 1
    while i < len(args):
        if args[i] in PARAMETER_FLAGS:
            parameters[args[i][2:]] = take_value(args, i)
            i += 2
        elif args[i] == "--samples":
            samples = parse_int("--samples", take_value(args, i))
            i += 2
        else:
            nxt = parse_common(args, i, options)
            if nxt is None:
                raise UsageError(f"Unknown argument {args[i]!r}")
            i = nxt
    return claim, parameters, samples, options


def _lambdas(run: RunConfig, mode: ScalarMode) -> list[Scalar]:
    lam = run.parameter("lambda")
    return [mode.parse(lam)] if lam is not None else [mode.coerce(v) for v in DS_LAMBDAS]


def _conf_flat_samples(run: RunConfig, mode: ScalarMode) -> list[dict[str, Scalar]] | None:
    given = {name: run.parameter(name) for name in FREE_PARAMETERS if run.parameter(name) is not None}
    if not given:
        return r2prime_conf_flat.default_samples(run.seed, run.samples) if run.samples is not None else None
    if len(given) != len(FREE_PARAMETERS):
        raise UsageError("r2prime-conf-flat needs all of --a1 .. --a6")
    return [{name: mode.parse(text) for name, text in given.items()}]


def _ak_samples(run: RunConfig, mode: ScalarMode) -> list[dict[str, Scalar]] | None:
    names = ("a1", "a4", "a5", "a6", "t")
    if all(run.parameter(name) is None for name in names):
        return r2prime_ak.default_samples(run.seed, run.samples, mode) if run.samples is not None else None
    if run.parameter("a1") is None:
        raise UsageError("r2prime-ak needs --a1 when --a4, --a5, --a6 or --t is given")
    return [{name: mode.parse(run.parameter(name) or AK_DEFAULTS[name]) for name in names}]


def _verify_ds(run: RunConfig, mode: ScalarMode, logger: SessionLogger) -> VerificationReport:
    lambdas = _lambdas(run, mode)
    if len(lambdas) == 1:
        return ds_kahler.verify_dS_kahler(lambdas[0], mode, logger)
    labelled = [(f"lambda={format_scalar(lam)}", ds_kahler.verify_dS_kahler(lam, mode, logger)) for lam in lambdas]
    return merge_reports(ds_kahler.CLAIM, labelled)


def _verify_abelian(run: RunConfig, mode: ScalarMode, logger: SessionLogger) -> VerificationReport:
    samples = run.samples if run.samples is not None else 3
    return abelian_rr30.verify_abelian_rr30(run.seed, samples, mode, logger)


def _verify_conf_flat(run: RunConfig, mode: ScalarMode, logger: SessionLogger) -> VerificationReport:
    return r2prime_conf_flat.verify_r2prime_conf_flat(_conf_flat_samples(run, mode), run.seed, mode, logger)


def _verify_ak(run: RunConfig, mode: ScalarMode, logger: SessionLogger) -> VerificationReport:
    return r2prime_ak.verify_r2prime_ak(_ak_samples(run, mode), run.seed, mode, logger)


def _verify_main(run: RunConfig, mode: ScalarMode, logger: SessionLogger) -> VerificationReport:
    return main_theorem.verify_main_theorem(
        seed=run.seed,
        lambdas=_lambdas(run, mode),
        conf_flat_samples=_conf_flat_samples(run, mode),
        ak_samples=_ak_samples(run, mode),
        mode=mode,
        logger=logger,
    )


def _verify_tensor(run: RunConfig, mode: ScalarMode, logger: SessionLogger) -> VerificationReport:
    return invariants.verify_tensor_invariants(run.samples, run.seed, mode, logger)


def _verify_agreement(run: RunConfig, mode: ScalarMode, logger: SessionLogger) -> VerificationReport:
    return invariants.verify_mode_agreement(run.samples, run.seed, run.tol, logger)


VERIFIERS: dict[str, Callable[[RunConfig, ScalarMode, SessionLogger], VerificationReport]] = {
    ds_kahler.CLAIM: _verify_ds,
    abelian_rr30.CLAIM: _verify_abelian,
    r2prime_conf_flat.CLAIM: _verify_conf_flat,
    r2prime_ak.CLAIM: _verify_ak,
    main_theorem.CLAIM: _verify_main,
    invariants.TENSOR_CLAIM: _verify_tensor,
    invariants.MODE_CLAIM: _verify_agreement,
}


def default_sample_count(claim: str, samples: int | None) -> int | None:
    """Suites always record their count; the environment sizes the invariant suite."""
    if samples is not None:
        return samples
    if claim == invariants.TENSOR_CLAIM:
        return Config.from_env().random_metrics
    if claim == invariants.MODE_CLAIM:
        return DEFAULT_AGREEMENT_SAMPLES
    return None


def main(argv: list[str] | None = None) -> int:
    """Main CLI entry point."""
    args = sys.argv[1:] if argv is None else argv
    if not args or args[0] in ("-h", "--help", "help"):
        print_usage()
        return EXIT_PASS if args else EXIT_ERROR
    try:
        claim, parameters, samples, options = parse_args(args)
        if claim not in VERIFIERS:
            raise UsageError(f"Unknown claim {claim!r}. Known: {', '.join(VERIFIERS)}")
        run = build_run_config(
            "verify",
            options,
            target=claim,
            samples=default_sample_count(claim, samples),
            parameters=parameters,
        )
    except (UsageError, ValueError) as e:
        return emit_error(e)

    def body(logger: SessionLogger) -> int:
        mode = run.scalar_mode()
        logger.info(f"Claim: {claim} (mode {mode.label()}, seed {run.seed})")
        report = VERIFIERS[claim](run, mode, logger)
        report = finalize(report, run.to_dict(), timing=run.timing)
        checks = len(report.checks)
        if report.passed:
            logger.success(f"{claim}: pass ({checks} checks)")
        else:
            logger.error(f"{claim}: fail ({', '.join(report.failed_checks())})")
        emit(report.to_json_dict(), options)
        return EXIT_PASS if report.passed else EXIT_FAIL

    return run_logged(run, options.quiet, body)
