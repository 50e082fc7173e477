"""Option parsing, report output and error mapping shared by every akverify subcommand."""

import sys
from dataclasses import dataclass
from typing import Any, Callable

from pydantic import ValidationError

from akverify.core.config import Config, RunConfig
from akverify.core.errors import AkverifyError
from akverify.core.file_ops import dump_json, write_file
from akverify.core.logger import SessionLogger
from akverify.core.schemas import ErrorReport

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

COMMON_OPTIONS_HELP = (
    "  --mode <exact|float>  Scalar mode (default: $AKVERIFY_MODE or exact)",
    "  --tol <real>          Float-mode zero tolerance (default: 1e-9)",
    "  --seed <uint>         Random seed (default: $AKVERIFY_SEED or 0)",
    "  --json                Print the JSON report on stdout even with --out",
    "  --out <path>          Write the JSON report to a file (atomic)",
    "  --timing              Include elapsed seconds in the report",
    "  --log-dir <dir>       Directory for run logs (default: logs)",
    "  --quiet               No console echo on stderr",
)


class UsageError(AkverifyError):
    """Raised for malformed command lines."""

    pass


@dataclass
class CommonOptions:
    """Flags every subcommand accepts; ``None`` means "take it from the environment"."""

    mode: str | None = None
    tol: float | None = None
    seed: int | None = None
    json: bool = False
    out: str | None = None
    timing: bool = False
    log_dir: str | None = None
    quiet: bool = False


def take_value(args: list[str], i: int) -> str:
    """Value following the flag at ``args[i]``."""
    if i + 1 >= len(args) or args[i + 1].startswith("--"):
        raise UsageError(f"Missing value for {args[i]}")
    return args[i + 1]


def parse_int(flag: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{flag} expects an integer, got {text!r}")


def parse_common(args: list[str], i: int, options: CommonOptions) -> int | None:
    """
    Consume one common flag at ``args[i]``.

    Returns:
        Index of the next unread argument, or None if ``args[i]`` is not a common flag.

    Raises:
        UsageError: On a missing or malformed value.
    """
    flag = args[i]
    if flag == "--mode":
        options.mode = take_value(args, i)
        if options.mode not in ("exact", "float"):
            raise UsageError(f"Invalid mode {options.mode!r}. Use 'exact' or 'float'.")
        return i + 2
    if flag == "--tol":
        value = take_value(args, i)
        try:
            options.tol = float(value)
        except ValueError:
            raise UsageError(f"--tol expects a real number, got {value!r}")
        return i + 2
    if flag == "--seed":
        options.seed = parse_int(flag, take_value(args, i))
        return i + 2
    if flag == "--out":
        options.out = take_value(args, i)
        return i + 2
    if flag == "--log-dir":
        options.log_dir = take_value(args, i)
        return i + 2
    if flag == "--json":
        options.json = True
        return i + 1
    if flag == "--timing":
        options.timing = True
        return i + 1
    if flag == "--quiet":
        options.quiet = True
        return i + 1
    return None


def build_run_config(command: str, options: CommonOptions, **overrides: Any) -> RunConfig:
    """
    Environment config with the command-line flags applied.

    Raises:
        ValueError: On invalid environment variables or flag values.
    """
    return RunConfig.from_config(
        Config.from_env(),
        command,
        mode=options.mode,
        tol=options.tol,
        seed=options.seed,
        output_path=options.out,
        timing=options.timing,
        log_dir=options.log_dir,
        **overrides,
    )


def emit(payload: dict[str, Any], options: CommonOptions) -> None:
    """Write the report to ``--out`` and/or stdout; stdout unless only ``--out`` was given."""
    text = dump_json(payload)
    if options.out:
        write_file(options.out, text)
    if options.json or not options.out:
        sys.stdout.write(text)
        sys.stdout.flush()


def emit_error(exc: Exception) -> int:
    """Print the error object on stdout."""
    sys.stdout.write(dump_json(ErrorReport.from_exception(exc).model_dump()))
    sys.stdout.flush()
    return EXIT_ERROR


def run_logged(run: RunConfig, quiet: bool, body: Callable[[SessionLogger], int]) -> int:
    """
    Run ``body`` inside a session log and map failures to exit code 2.

    ``body`` emits its report as its last step, so an error never leaves a
    partial report on stdout.
    """
    try:
        logger = SessionLogger(
            command=run.command,
            target=run.target or "",
            mode=run.mode,
            seed=run.seed,
            output_file=run.output_path,
            log_dir=run.log_dir,
            quiet=quiet,
        )
    except OSError as e:
        return emit_error(e)

    try:
        with logger:
            code = body(logger)
            logger.set_exit_code(code)
            return code
    except (AkverifyError, ValidationError, ValueError, ZeroDivisionError) as e:
        return emit_error(e)
