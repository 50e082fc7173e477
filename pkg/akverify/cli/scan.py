"""CLI sampling metrics on one family and summarizing the structures found."""

import sys
import time

from akverify.cli.common import (
    COMMON_OPTIONS_HELP,
    EXIT_ERROR,
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
from akverify.core.logger import SessionLogger
from akverify.scenarios.scan import DEFAULT_SCAN_SAMPLES, scan_family


def print_usage():
    """Print usage information."""
    print("akverify scan")
    print()
    print("Sample metrics on one family; count flat, conformally flat and W+ = 0 metrics,")
    print("compatible structures and their constant-H verdicts.")
    print()
    print("Usage:")
    print("  akverify scan <family> [--samples <n>] [options]")
    print()
    print("Examples:")
    print("  akverify scan dS --samples 20 --seed 7")
    print("  akverify scan r2prime --samples 10 --seed 1")
    print("  akverify scan abelian")
    print()
    print("Options:")
    print(f"  --samples <n>         Number of sampled metrics (default: {DEFAULT_SCAN_SAMPLES})")
    for line in COMMON_OPTIONS_HELP:
        print(line)


def parse_args(args: list[str]) -> tuple[str, int, CommonOptions]:
    """Parse command line arguments.

    Returns:
        (family, samples, common options)
    """
    if not args or args[0].startswith("--"):
        raise UsageError("Missing family name")
    name = args[0]
    samples = DEFAULT_SCAN_SAMPLES
    options = CommonOptions()
    i = 1
    while i < len(args):
        if args[i] == "--samples":
            samples = parse_int("--samples", take_value(args, i))
            i += 2
        else:
            nxt = parse_common(args, i, options)
            if nxt is None:
                raise UsageError(f"Unknown argument {args[i]!r}")
            i = nxt
    return name, samples, options


def main(argv: list[str] | None = None) -> int:
    """Main CLI entry point."""
    args = sys.argv[1:] if argv is None else argv
    if not args or args[0] in ("-h", "--help", "help"):
        print_usage()
        return EXIT_PASS if args else EXIT_ERROR
    try:
        name, samples, options = parse_args(args)
        run = build_run_config("scan", options, target=name, samples=samples)
    except (UsageError, ValueError) as e:
        return emit_error(e)

    def body(logger: SessionLogger) -> int:
        start = time.perf_counter()
        summary = scan_family(name, samples, run.seed, run.scalar_mode(), logger)
        elapsed = time.perf_counter() - start
        logger.info(
            f"{summary.family}: {summary.metrics} metrics, {summary.structures} structures, "
            f"{summary.constant_H} constant H, {summary.nonconstant_H} non-constant H"
        )
        payload = summary.model_copy(update={"run": run.to_dict()}).to_json_dict()
        if run.timing:
            payload["elapsed_seconds"] = elapsed
        emit(payload, options)
        return EXIT_PASS

    return run_logged(run, options.quiet, body)
