"""
Command-line module for the Goldbach sieve toolkit.

This module parses the `sieve`, `group`, `scan`, `verify` and `serve`
subcommands and maps their outcomes to exit codes: 0 on success, 1 on a
strict-mode failure or an I/O failure, 2 on usage or input errors.
"""

import argparse
import logging
import sys
from typing import List, Optional

from .config import API_HOST, API_PORT, DEFAULT_JOBS
from .database import configure_database, initialize_database, store_records
from .errors import CapacityError, ReportError
from .regression import SUITES, run_suite
from .scanner import REPORT_FORMATS, emit_report, scan_range, summarize
from .sieve import build_sieve, format_sieve
from .symmetry import decompose, symmetry_group_for

# Configure logging
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="goldbach",
        description="Dihedral Goldbach sieves and their affine symmetry groups.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sieve = commands.add_parser("sieve", help="Print the sieve of N.")
    sieve.add_argument("N", type=int, help="An even number >= 2.")

    group = commands.add_parser("group", help="Print the symmetry group G_N.")
    group.add_argument("N", type=int, help="An even number >= 2.")
    group.add_argument("--elements", action="store_true", help="Also list the elements of G_N.")

    scan = commands.add_parser("scan", help="Classify every even N in a range and write a report.")
    scan.add_argument("--from", dest="start", type=int, required=True, help="Lowest N (rounded up to even).")
    scan.add_argument("--to", dest="stop", type=int, required=True, help="Highest N (rounded down to even).")
    scan.add_argument("--jobs", type=int, default=DEFAULT_JOBS, help=f"Worker processes (default {DEFAULT_JOBS}).")
    scan.add_argument("--format", dest="fmt", choices=REPORT_FORMATS, default="jsonl", help="Report format.")
    scan.add_argument("--out", required=True, help="Report path.")
    scan.add_argument("--strict", action="store_true", help="Exit 1 if any strong conjecture match is false.")
    scan.add_argument("--abort", action="store_true", help="Stop at the first N over capacity.")
    scan.add_argument("--db", default=None, help="Also store records in this database URL.")

    verify = commands.add_parser("verify", help="Run a regression suite.")
    verify.add_argument("--suite", choices=sorted(SUITES), default="paper", help="Suite name.")
    verify.add_argument("--jobs", type=int, default=DEFAULT_JOBS, help="Worker processes for scanning checks.")

    serve = commands.add_parser("serve", help="Run the HTTP API.")
    serve.add_argument("--host", default=API_HOST, help=f"Bind address (default {API_HOST}).")
    serve.add_argument("--port", type=int, default=API_PORT, help=f"Port (default {API_PORT}).")
    return parser


def _run_sieve(args) -> int:
    print(format_sieve(build_sieve(args.N)))
    return EXIT_OK


def _run_group(args) -> int:
    group = symmetry_group_for(args.N)
    report = decompose(group)
    print(f"order={group.order}")
    print(f"name={group.descriptor.name}")
    print(f"g1={group.g1_generator or 0}")
    print(f"H={','.join(str(v) for v in group.unit_part)}")
    print(f"regime={report.regime}")
    if args.elements:
        print(f"elements={','.join(f.label for f in group.elements)}")
    return EXIT_OK


def _run_scan(args) -> int:
    if args.jobs < 1:
        raise ValueError(f"--jobs must be positive, got {args.jobs}")
    records = scan_range(args.start, args.stop, jobs=args.jobs, abort=args.abort)
    emit_report(records, args.fmt, args.out)
    if args.db:
        configure_database(args.db)
        if not initialize_database() or store_records(records) is None:
            print(f"error: could not store records in {args.db}", file=sys.stderr)
            return EXIT_FAILURE
    print(summarize(records).render())
    if args.strict:
        failed = [r.N for r in records if r.strong_conjecture_match is False]
        if failed:
            print(f"strong conjecture mismatch at N={','.join(str(N) for N in failed)}", file=sys.stderr)
            return EXIT_FAILURE
    return EXIT_OK


def _run_verify(args) -> int:
    outcomes = run_suite(args.suite, jobs=args.jobs)
    for outcome in outcomes:
        status = "PASS" if outcome.passed else "FAIL"
        print(f"{status} {outcome.name}: {outcome.detail}")
    failed = sum(not o.passed for o in outcomes)
    print(f"{len(outcomes) - failed}/{len(outcomes)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_FAILURE


def _run_serve(args) -> int:
    from .main import serve

    serve(host=args.host, port=args.port)
    return EXIT_OK


HANDLERS = {
    "sieve": _run_sieve,
    "group": _run_group,
    "scan": _run_scan,
    "verify": _run_verify,
    "serve": _run_serve,
}


def cli(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand and return its exit code.

    Args:
        argv (list, optional): Arguments without the program name, defaults to sys.argv[1:]

    Returns:
        int: 0 on success, 1 on strict or I/O failure, 2 on usage or input errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        return HANDLERS[args.command](args)
    except (ValueError, CapacityError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ReportError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(cli())
