"""CLI listing the algebra families and their bracket tables."""

import sys

from akverify.cli.common import (
    COMMON_OPTIONS_HELP,
    EXIT_PASS,
    CommonOptions,
    UsageError,
    build_run_config,
    emit,
    emit_error,
    parse_common,
    run_logged,
    take_value,
)
from akverify.core.logger import SessionLogger
from akverify.core.scalar import format_scalar
from akverify.core.schemas import SCHEMA_VERSION
from akverify.lie.algebra import LieAlgebra, is_unimodular, jacobi_check
from akverify.lie.catalog import CatalogEntry, catalog, get_entry


def print_usage():
    """Print usage information."""
    print("akverify catalog")
    print()
    print("List the four algebra families with bracket tables and parameter slots.")
    print()
    print("Usage:")
    print("  akverify catalog [--name <family>] [--lambda <p/q>] [options]")
    print()
    print("Examples:")
    print("  akverify catalog")
    print("  akverify catalog --json")
    print("  akverify catalog --name dS --lambda 1")
    print()
    print("Options:")
    print("  --name <family>       Only this family (abelian, rr30, r2prime, dS)")
    print("  --lambda <p/q>        dS parameter for the bracket table (default: 0)")
    for line in COMMON_OPTIONS_HELP:
        print(line)


def parse_args(args: list[str]) -> tuple[str | None, str | None, CommonOptions]:
    """Parse command line arguments.

    Returns:
        (name, lambda, common options)
    """
    name = None
    lam = None
    options = CommonOptions()
    i = 0
    while i < len(args):
        if args[i] == "--name":
            name = take_value(args, i)
            i += 2
        elif args[i] == "--lambda":
            lam = take_value(args, i)
            i += 2
        else:
            nxt = parse_common(args, i, options)
            if nxt is None:
                raise UsageError(f"Unknown argument {args[i]!r}")
            i = nxt
    return name, lam, options


def entry_json(entry: CatalogEntry, g: LieAlgebra) -> dict:
    return {
        "name": entry.name,
        "description": entry.description,
        "provenance": entry.provenance,
        "unimodular": entry.unimodular,
        "parameters": [
            {"name": slot.name, "constraint": slot.constraint, "default": format_scalar(slot.default)}
            for slot in entry.parameters
        ],
        "instance": g.name,
        "algebra": g.to_json_dict(),
        "jacobi": jacobi_check(g).passed,
        "trace_unimodular": is_unimodular(g),
    }


def bracket_lines(g: LieAlgebra) -> list[str]:
    """One line per nonzero bracket ``[e_i, e_j]``."""
    terms: dict[tuple[int, int], list[str]] = {}
    for i, j, k, v in g.nonzero_brackets():
        terms.setdefault((i, j), []).append(f"{format_scalar(v)} e{k}")
    return [f"  [e{i},e{j}] = {' + '.join(t)}" for (i, j), t in terms.items()] or ["  (all brackets vanish)"]


def print_entry(entry: CatalogEntry, g: LieAlgebra):
    print(f"{entry.name}: {entry.description}")
    print(f"  unimodular: {'yes' if entry.unimodular else 'no'}")
    for slot in entry.parameters:
        print(f"  parameter {slot.name}: {slot.constraint} (default {format_scalar(slot.default)})")
    print(f"  instance {g.name}:")
    for line in bracket_lines(g):
        print(f"  {line}")
    print()


def _applicable(entry: CatalogEntry, params: dict[str, str], strict: bool) -> dict[str, str]:
    """Listing every family applies --lambda only where the slot exists."""
    if strict:
        return params
    slots = {slot.name for slot in entry.parameters}
    return {k: v for k, v in params.items() if k in slots}


def main(argv: list[str] | None = None) -> int:
    """Main CLI entry point."""
    args = sys.argv[1:] if argv is None else argv
    if args and args[0] in ("-h", "--help", "help"):
        print_usage()
        return EXIT_PASS
    try:
        name, lam, options = parse_args(args)
        run = build_run_config("catalog", options, target=name, parameters={"lambda": lam} if lam else None)
    except (UsageError, ValueError) as e:
        return emit_error(e)

    def body(logger: SessionLogger) -> int:
        mode = run.scalar_mode()
        entries = [get_entry(name)] if name else catalog()
        params = {"lambda": lam} if lam is not None else {}
        instances = [
            (entry, entry.instantiate(mode, **_applicable(entry, params, strict=bool(name)))) for entry in entries
        ]
        logger.info(f"{len(instances)} families")
        if options.json or options.out:
            emit(
                {
                    "schema_version": SCHEMA_VERSION,
                    "families": [entry_json(entry, g) for entry, g in instances],
                    "run": run.to_dict(),
                },
                options,
            )
        if not options.json:
            for entry, g in instances:
                print_entry(entry, g)
        return EXIT_PASS

    return run_logged(run, options.quiet, body)
