"""CLI computing the full curvature report of one (algebra, metric) pair."""

import sys
import time
from pathlib import Path

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
from akverify.core.errors import DimensionError
from akverify.core.file_ops import file_sha256
from akverify.core.logger import SessionLogger
from akverify.core.matrix import Matrix
from akverify.core.scalar import ScalarMode, parse_scalar
from akverify.core.schemas import SCHEMA_VERSION, load_algebra_file, load_structure_file
from akverify.geometry.metric import MetricFrame
from akverify.geometry.report import curvature_report
from akverify.lie.algebra import LieAlgebra, require_jacobi
from akverify.lie.catalog import instantiate
from akverify.scenarios.ds_kahler import ds_metric
from akverify.scenarios.r2prime import FREE_PARAMETERS, PARAMETER_NAMES, conformally_flat_r2prime, r2prime_metric

COFRAME_FLAGS = tuple(f"--{name}" for name in PARAMETER_NAMES)


def print_usage():
    """Print usage information."""
    print("akverify curvature")
    print()
    print("Connection, Riemann, Ricci, scalar curvature, curvature-operator blocks and W+/W-.")
    print()
    print("Usage:")
    print("  akverify curvature (--algebra <file> | --name <family> [--lambda <p/q>])")
    print("                     [--structure <file> | --gram <rows> | --k <p/q> | --a1 .. --a10] [options]")
    print()
    print("Examples:")
    print("  akverify curvature --name abelian")
    print("  akverify curvature --name dS --lambda 1 --k 2")
    print("  akverify curvature --name r2prime --a1 1 --a2 2 --a3 3 --a4 1/2 --a5 -1 --a6 1")
    print("  akverify curvature --algebra my_algebra.json --gram '2,1;1,1' --orientation -1")
    print()
    print("Metric (identity when omitted):")
    print("  --structure <file>    Structure file with gram, orientation and optional omega")
    print("  --gram <rows>         Gram matrix, rows separated by ';' and entries by ','")
    print("  --k <p/q>             dS metric diag(k^2, 1, 1, 1)")
    print("  --a1 .. --a10         r2prime coframe parameters; a1..a6 alone give the conformally flat metric")
    print("  --orientation <+-1>   Orientation relative to e1^e2^e3^e4 (default: 1)")
    print()
    print("Options:")
    for line in COMMON_OPTIONS_HELP:
        print(line)


def parse_args(args: list[str]) -> tuple[dict[str, str], CommonOptions]:
    """Parse command line arguments.

    Returns:
        (selectors keyed by flag name without dashes, common options)
    """
    selected: dict[str, str] = {}
    options = CommonOptions()
    i = 0
    while i < len(args):
        flag = args[i]
        if flag in ("--algebra", "--name", "--lambda", "--structure", "--gram", "--k", "--orientation") or (
            flag in COFRAME_FLAGS
        ):
            selected[flag[2:]] = take_value(args, i)
            i += 2
        else:
            nxt = parse_common(args, i, options)
            if nxt is None:
                raise UsageError(f"Unknown argument {flag!r}")
            i = nxt
    if ("algebra" in selected) == ("name" in selected):
        raise UsageError("Give exactly one of --algebra or --name")
    if "lambda" in selected and "name" not in selected:
        raise UsageError("--lambda needs --name")
    metric_specs = [k for k in ("structure", "gram", "k") if k in selected]
    if any(name in selected for name in PARAMETER_NAMES):
        metric_specs.append("a1..a10")
    if len(metric_specs) > 1:
        raise UsageError(f"Give at most one metric, got {', '.join(metric_specs)}")
    return selected, options


def parse_gram(text: str, mode: ScalarMode) -> Matrix:
    """``"a,b;c,d"`` as a matrix of rationals."""
    rows = [[parse_scalar(x.strip(), mode) for x in row.split(",")] for row in text.split(";") if row.strip()]
    if not rows or any(len(row) != len(rows) for row in rows):
        raise DimensionError(f"--gram must describe a square matrix, got {text!r}")
    return Matrix(rows, mode)


def load_algebra(selected: dict[str, str], mode: ScalarMode) -> LieAlgebra:
    if "algebra" in selected:
        path = selected["algebra"]
        return load_algebra_file(path).to_algebra(mode, name=Path(path).stem)
    params = {"lambda": selected["lambda"]} if "lambda" in selected else {}
    return instantiate(selected["name"], mode, **params)


def load_metric(selected: dict[str, str], dim: int, mode: ScalarMode) -> MetricFrame:
    """
    The metric named on the command line.

    Raises:
        UsageError: If only some of the r2prime parameters are given.
    """
    orientation = parse_int("--orientation", selected.get("orientation", "1"))
    coframe = {name: selected[name] for name in PARAMETER_NAMES if name in selected}
    if "structure" in selected:
        m = load_structure_file(selected["structure"]).to_metric(mode)
    elif "gram" in selected:
        m = MetricFrame(parse_gram(selected["gram"], mode))
    elif "k" in selected:
        m = ds_metric(parse_scalar(selected["k"], mode), mode)
    elif coframe:
        values = {name: parse_scalar(text, mode) for name, text in coframe.items()}
        if set(coframe) == set(FREE_PARAMETERS):
            m = r2prime_metric(conformally_flat_r2prime(values, mode), mode)
        elif set(coframe) == set(PARAMETER_NAMES):
            m = r2prime_metric(values, mode)
        else:
            raise UsageError("Give a1..a6 (conformally flat) or all of a1..a10")
    else:
        m = MetricFrame.identity(dim, mode)
    if "orientation" in selected:
        m = m.with_orientation(orientation)
    if m.dim != dim:
        raise DimensionError(f"Metric has dimension {m.dim}, algebra has dimension {dim}")
    return m


def main(argv: list[str] | None = None) -> int:
    """Main CLI entry point."""
    args = sys.argv[1:] if argv is None else argv
    if not args or args[0] in ("-h", "--help", "help"):
        print_usage()
        return EXIT_PASS if args else EXIT_ERROR
    try:
        selected, options = parse_args(args)
        inputs = [selected[k] for k in ("algebra", "structure") if k in selected]
        parameters = {k: v for k, v in selected.items() if k not in ("algebra", "structure", "name")}
        run = build_run_config(
            "curvature",
            options,
            target=selected.get("name") or selected.get("algebra"),
            input_paths=inputs,
            parameters=parameters,
        )
    except (UsageError, ValueError) as e:
        return emit_error(e)

    def body(logger: SessionLogger) -> int:
        start = time.perf_counter()
        mode = run.scalar_mode()
        g = load_algebra(selected, mode)
        require_jacobi(g)
        m = load_metric(selected, g.dim, mode)
        logger.info(f"Algebra: {g.name}")
        logger.debug(f"Gram: {[[str(x) for x in row] for row in m.gram.entries]}")
        report = curvature_report(g, m)
        elapsed = time.perf_counter() - start
        logger.info(f"Scalar curvature: {report.scalar}")
        logger.info(f"Computed in {elapsed:.3f}s")
        payload = report.model_dump()
        payload["schema_version"] = SCHEMA_VERSION
        payload["run"] = run.to_dict()
        payload["inputs"] = {path: file_sha256(path) for path in run.input_paths}
        if run.timing:
            payload["elapsed_seconds"] = elapsed
        emit(payload, options)
        return EXIT_PASS

    return run_logged(run, options.quiet, body)
