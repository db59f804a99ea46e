import argparse
import logging
import re
import sys
from pathlib import Path
from typing import List, Optional

import pandas as pd

from src.config import (
    DEFAULT_MU_GRID,
    DEFAULT_N_MAX,
    DEFAULT_PARALLELISM,
    DEFAULT_QUAD_PRECISION,
    DEFAULT_ROOT_DIGITS,
    DEFAULT_SERIES_ORDER,
    LOG_LEVEL,
)
from src.mellin import mellin_transform, poly_factor
from src.reports import (
    PolyRecord,
    RunConfig,
    TransformRecord,
    VerificationReport,
    parse_mu,
    render_rational,
)
from src.suites import SUITES, TABLE_COLUMNS, run_suite, zeros_record, zeros_table

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3


class OutputError(OSError):
    """Writing command output failed."""


def _configure_logging(verbose: bool):
    logging.basicConfig(
        level=getattr(logging, LOG_LEVEL, logging.INFO),
        format='%(asctime)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)


def _emit(text: str, out: Optional[str]):
    if not text.endswith("\n"):
        text += "\n"
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    except OSError as e:
        raise OutputError(f"Cannot write {out}: {e}") from e
    logger.info(f"Wrote {Path(out).resolve()}")


def _poly_record(poly) -> PolyRecord:
    return PolyRecord(coefficients=[render_rational(c) for c in poly.coeffs], rendered=poly.render("s"))


# Commands

def cmd_transform(n: int, mu, output_format: str = "human") -> str:
    expr = mellin_transform(n, mu)
    factor = poly_factor(n, mu)
    record = TransformRecord(
        index=n,
        mu=render_rational(factor.mu),
        constant=render_rational(expr.c),
        two_power_offset=expr.k,
        gamma_shift=expr.delta,
        rendered=expr.render(),
        phat=_poly_record(factor.phat),
        pscaled=_poly_record(factor.pscaled),
    )
    if output_format == "json":
        return record.model_dump_json(indent=2)
    if output_format == "csv":
        frame = pd.DataFrame([{
            "n": n,
            "mu": record.mu,
            "constant": record.constant,
            "two_power_offset": record.two_power_offset,
            "gamma_shift": record.gamma_shift,
            "phat": record.phat.rendered,
            "pscaled": record.pscaled.rendered,
        }])
        return frame.to_csv(index=False, lineterminator="\n")
    return "\n".join([
        f"M_{n}^({record.mu})(s) = {record.rendered}",
        f"  constant         {record.constant}",
        f"  2-power offset   {record.two_power_offset}",
        f"  Gamma shift      {record.gamma_shift}",
        f"  phat(s)    = {record.phat.rendered}",
        f"  pscaled(s) = {record.pscaled.rendered}",
    ])


def cmd_zeros(n: int, mu, digits: int, output_format: str = "human"):
    """Returns (text, certified)."""
    record = zeros_record(n, mu, digits)
    if output_format == "json":
        text = record.model_dump_json(indent=2)
    elif output_format == "csv":
        rows = [{"n": n, "mu": record.mu, "t": t, "digits": digits} for t in record.zeros_t]
        text = pd.DataFrame(rows, columns=TABLE_COLUMNS).to_csv(index=False, lineterminator="\n")
    else:
        status = "certified" if record.certified else "NOT CERTIFIED"
        lines = [
            f"n={n} mu={record.mu}: degree {record.degree}, {record.real_root_count} real zeros in t, {status}",
            f"  squarefree={record.squarefree} symmetric={record.symmetric}",
        ]
        lines.extend(f"  s = {z}" for z in record.zeros_s)
        text = "\n".join(lines)
    if not record.certified:
        logger.error(f"Critical-line certification failed for n={n}, mu={record.mu}")
    return text, record.certified


def _render_report(report: VerificationReport, output_format: str) -> str:
    if output_format == "json":
        return report.model_dump_json(indent=2)
    if output_format == "csv":
        rows = [{
            "suite": r.suite,
            "identity": r.identity,
            "params": ";".join(f"{k}={v}" for k, v in r.params.items()),
            "passed": r.passed,
            "informational": r.informational,
            "skipped": r.skipped,
            "witness": r.witness or "",
        } for r in report.records]
        return pd.DataFrame(rows).to_csv(index=False, lineterminator="\n")
    s = report.summary
    lines = [
        f"suite {report.suite} (version {report.version}): {s.total} checks in {report.wall_clock_seconds}s",
        f"  passed {s.passed}, failed {s.failed}, skipped {s.skipped}, informational {s.informational}",
    ]
    for record in report.failures():
        params = ", ".join(f"{k}={v}" for k, v in record.params.items())
        lines.append(f"  FAIL {record.suite}/{record.identity} [{params}]: {record.witness}")
    lines.append("OK" if report.ok else "FAILED")
    return "\n".join(lines)


def cmd_verify(suite: str, config: RunConfig, out: Optional[str] = None, show_progress: bool = True) -> int:
    report = run_suite(suite, config, show_progress=show_progress)
    _emit(_render_report(report, config.output_format), out)
    return EXIT_OK if report.ok else EXIT_FAILURE


def cmd_table(config: RunConfig, out: Optional[str] = None, show_progress: bool = True) -> int:
    frame, failed = zeros_table(config, show_progress=show_progress)
    if config.output_format == "json":
        text = frame.to_json(orient="records", indent=2)
    else:
        text = frame.to_csv(index=False, lineterminator="\n")
    _emit(text, out)
    for n, mu in failed:
        logger.error(f"Critical-line certification failed for n={n}, mu={mu}")
    return EXIT_FAILURE if failed else EXIT_OK


# Argument parsing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="Debug logging on stderr")
    common.add_argument("--out", type=str, help="Write output to this file instead of stdout")
    common.add_argument("--no-progress", action="store_true", help="Hide progress bars")

    parser = argparse.ArgumentParser(
        description="Exact Mellin transforms of generalized Hermite polynomials and critical-line certificates"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    transform = sub.add_parser("transform", parents=[common], help="Closed form of M_n^mu(s)")
    transform.add_argument("--n", type=int, required=True, help="Hermite index")
    transform.add_argument("--mu", type=str, default="0", help="Parameter mu as an exact rational, e.g. 1/3")
    transform.add_argument("--format", choices=["human", "json", "csv"], default="human")

    zeros = sub.add_parser("zeros", parents=[common], help="Certify and print the zeros of one factor")
    zeros.add_argument("--n", type=int, required=True, help="Hermite index")
    zeros.add_argument("--mu", type=str, default="0", help="Parameter mu as an exact rational")
    zeros.add_argument("--digits", type=int, default=DEFAULT_ROOT_DIGITS, help="Decimals per zero")
    zeros.add_argument("--format", choices=["human", "json", "csv"], default="human")

    default_grid = ",".join(render_rational(mu) for mu in DEFAULT_MU_GRID)
    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--nmax", type=int, default=DEFAULT_N_MAX, help="Largest Hermite index")
    grid.add_argument("--mu", type=str, default=None, help=f"Comma-separated mu grid (default {default_grid})")
    grid.add_argument("--parallelism", type=int, default=DEFAULT_PARALLELISM, help="Worker processes")

    verify = sub.add_parser("verify", parents=[common, grid], help="Run verification suites")
    verify.add_argument("--suite", choices=SUITES, default="all")
    verify.add_argument("--order", type=int, default=DEFAULT_SERIES_ORDER, help="Series order N")
    verify.add_argument("--precision", type=int, default=DEFAULT_QUAD_PRECISION, help="Oracle precision in bits")
    verify.add_argument("--format", choices=["human", "json", "csv"], default="human")

    table = sub.add_parser("table", parents=[common, grid], help="Bulk zeros table")
    table.add_argument("--digits", type=int, default=DEFAULT_ROOT_DIGITS, help="Decimals per zero")
    table.add_argument("--format", choices=["csv", "json"], default="csv")
    return parser


def _run_config(args) -> RunConfig:
    values = {
        "n_max": args.nmax,
        "parallelism": args.parallelism,
        "output_format": args.format,
    }
    if args.mu is not None:
        values["mu_list"] = args.mu
    if getattr(args, "order", None) is not None:
        values["series_order"] = args.order
    if getattr(args, "precision", None) is not None:
        values["quad_precision_bits"] = args.precision
    if getattr(args, "digits", None) is not None:
        values["root_digits"] = args.digits
    return RunConfig(**values)


# argparse only recognises plain negative numbers, so "--mu -1/4" would read as a flag
_SIGNED_RATIONALS = re.compile(r"^-\d+(?:/\d+)?(?:,[+-]?\d+(?:/\d+)?)*$")
_VALUE_OPTIONS = ("--mu",)


def join_signed_values(argv: List[str]) -> List[str]:
    joined = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in _VALUE_OPTIONS and i + 1 < len(argv) and _SIGNED_RATIONALS.match(argv[i + 1]):
            joined.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        joined.append(token)
        i += 1
    return joined


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(join_signed_values(sys.argv[1:] if argv is None else list(argv)))
    _configure_logging(args.verbose)
    show_progress = not args.no_progress

    try:
        if args.command == "transform":
            if args.n < 0:
                raise ValueError(f"--n must be nonnegative, got {args.n}")
            _emit(cmd_transform(args.n, parse_mu(args.mu), args.format), args.out)
            return EXIT_OK
        if args.command == "zeros":
            if args.n < 0:
                raise ValueError(f"--n must be nonnegative, got {args.n}")
            if args.digits < 1:
                raise ValueError(f"--digits must be at least 1, got {args.digits}")
            text, certified = cmd_zeros(args.n, parse_mu(args.mu), args.digits, args.format)
            _emit(text, args.out)
            return EXIT_OK if certified else EXIT_FAILURE
        config = _run_config(args)
        if args.command == "verify":
            return cmd_verify(args.suite, config, args.out, show_progress)
        return cmd_table(config, args.out, show_progress)
    except OutputError as e:
        logger.error(str(e))
        return EXIT_IO
    except ValueError as e:
        logger.error(f"Invalid parameters: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
