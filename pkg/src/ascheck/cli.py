"""Command-line interface.

Exit status: 0 when a trend direction was produced, 2 when the check completed
but found no linear trend (zero gradient), 1 on any error.
"""

from __future__ import annotations

import argparse
import os
import shlex
import sys
from typing import Optional, Sequence

from ascheck.check import CheckReport, analyze, attach_known_direction, run_check, write_outputs
from ascheck.domain import DomainError, read_bounds, write_bounds
from ascheck.model_io import ModelCommand, SchemaError, ingest_csv
from ascheck.regression import FitError
from ascheck.sampling import ModelEvaluationError
from ascheck.testfns import NAMES, builtin, export_script

EXIT_OK, EXIT_ERROR, EXIT_NO_TREND = 0, 1, 2


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return v


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=_positive_int, default=None, help="number of samples (default 4m)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--out-dir", default=".", help="directory for reports and data (default .)")
    p.add_argument("--workers", type=_positive_int, default=None,
                   help="max concurrent model evaluations (default: CPU count)")
    p.add_argument("--plot", choices=("svg", "csv", "both"), default="both")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ascheck",
        description="Quick check for a one-dimensional active subspace of a scalar model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run the check on an external model or sample file")
    check.add_argument("--bounds", required=True, help="bounds file: 'name lower upper' per line")
    src = check.add_mutually_exclusive_group(required=True)
    src.add_argument("--model-cmd", help="model command line (shell-style quoting)")
    src.add_argument("--samples-in", help="CSV of precomputed samples (x1..xm,f)")
    check.add_argument("--timeout", type=float, default=None,
                       help="per-evaluation timeout in seconds (default: none)")
    _add_run_flags(check)

    testfn = sub.add_parser("testfn", help="run the check on a built-in analytic model")
    testfn.add_argument("name", help="one of: " + ", ".join(NAMES))
    _add_run_flags(testfn)

    export = sub.add_parser("export-testfn", help="write a built-in model as a protocol script")
    export.add_argument("name")
    export.add_argument("script", help="path of the script to write")
    export.add_argument("--seed", type=int, default=0)
    export.add_argument("--bounds-out", help="also write the model's bounds file here")
    return parser


def _finish(report: CheckReport, args) -> int:
    write_outputs(report, args.out_dir, plot=args.plot)
    sys.stdout.write(report.to_text())
    return EXIT_OK if report.has_trend else EXIT_NO_TREND


def cmd_check(args) -> int:
    domain = read_bounds(args.bounds)
    if args.samples_in:
        if args.n is not None:
            raise ValueError("--n cannot be combined with --samples-in")
        samples = ingest_csv(args.samples_in, domain)
        report = analyze(samples, source=f"samples-in {args.samples_in}")
    else:
        model = ModelCommand(
            shlex.split(args.model_cmd),
            timeout=args.timeout,
            workers=args.workers or os.cpu_count() or 1,
        )
        report = run_check(
            domain, model, n=args.n, seed=args.seed, workers=model.workers,
            source=f"model-cmd {args.model_cmd}",
        )
    return _finish(report, args)


def cmd_testfn(args) -> int:
    model = builtin(args.name, seed=args.seed)
    report = run_check(
        model.domain, model, n=args.n, seed=args.seed, workers=args.workers,
        source=f"testfn {args.name}",
    )
    attach_known_direction(report, model.name, model.known_direction, model.coefficients)
    return _finish(report, args)


def cmd_export(args) -> int:
    model = builtin(args.name, seed=args.seed)
    export_script(model, args.script)
    if args.bounds_out:
        write_bounds(model.domain, args.bounds_out)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"check": cmd_check, "testfn": cmd_testfn, "export-testfn": cmd_export}[args.command]
    try:
        return handler(args)
    except (DomainError, SchemaError, FitError, ModelEvaluationError, KeyError,
            ValueError, OSError) as exc:
        kind = type(exc).__name__
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {kind}: {msg}", file=sys.stderr)
        return EXIT_ERROR


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
