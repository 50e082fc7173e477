"""CLI commands for akverify."""

import sys

from akverify.cli.common import EXIT_ERROR, EXIT_PASS

COMMANDS = ("catalog", "curvature", "verify", "scan")


def print_usage():
    """Print usage information."""
    print("akverify - exact curvature and almost-Hermitian verification on 4-dimensional Lie algebras")
    print()
    print("Usage:")
    print("  akverify <command> [options]")
    print()
    print("Commands:")
    print("  catalog     List the algebra families")
    print("  curvature   Curvature report of one algebra and metric")
    print("  verify      Replay a claim and report every check")
    print("  scan        Sample metrics on a family and tally structures")
    print()
    print("Run 'akverify <command> --help' for the options of a command.")
    print()
    print("Exit codes: 0 pass, 1 verified fail, 2 usage or input error.")


def main(argv: list[str] | None = None) -> int:
    """Dispatch to the subcommand module."""
    args = sys.argv[1:] if argv is None else argv
    if not args or args[0] in ("-h", "--help", "help"):
        print_usage()
        return EXIT_PASS if args else EXIT_ERROR

    command, rest = args[0], args[1:]
    if command == "catalog":
        from akverify.cli.catalog import main as run
    elif command == "curvature":
        from akverify.cli.curvature import main as run
    elif command == "verify":
        from akverify.cli.verify import main as run
    elif command == "scan":
        from akverify.cli.scan import main as run
    else:
        print(f"Error: unknown command {command!r}. Use one of: {', '.join(COMMANDS)}", file=sys.stderr)
        return EXIT_ERROR
    return run(rest)


__all__ = ["main", "COMMANDS"]
