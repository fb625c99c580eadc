#!/usr/bin/env python
"""Command-line front end: sweeps, single-prime searches, verification,
table dumps, the embedded appendix dataset and the HTTP service.

Exit status: 0 when everything was found or verified, 1 when at least one
prime is bottom or one check failed, 2 on an operational error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from app.certify import verify
from app.certify.appendix import RECORDS, dataset_checksum, is_known_discrepancy, verify_appendix
from app.certify.codec import read_certificate_file
from app.errors import HoweError
from app.ff import make_context
from app.howe import ENGINES, SearchConfig, search
from app.ssec import build_tables
from app.sweep import REPORT_NAME, SweepConfig, run_sweep, write_certificate
from howe_config import get_out_dir, get_pair_bound, get_seed, get_threads, init_logging

logger = logging.getLogger("howe")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

STRATEGIES = sorted({strategy for _, strategy in ENGINES})


def _add_search_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--genus", type=int, choices=(4, 5, 6), required=True)
    parser.add_argument("--strategy", choices=STRATEGIES, default="auto")
    parser.add_argument("--seed", type=int, default=None, help="Root-finding seed (CLI > env:HOWE_SEED > 0)")
    parser.add_argument("--threads", type=int, default=None, help="Worker processes (CLI > env:HOWE_THREADS > 1)")
    parser.add_argument(
        "--deterministic",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="Report the first hit in canonical order even with several workers",
    )
    parser.add_argument("--out", default=None, help="Certificate directory (CLI > env:HOWE_OUT_DIR > certificates)")
    parser.add_argument("--no-restricted-first", dest="restricted_first", action="store_false")
    parser.add_argument("--exhaustive", action="store_true", help="Collect every hit instead of stopping at the first")
    parser.add_argument("--max-pairs", type=int, default=None, help="Stop with status interrupted after this many pairs")


def _search_config(args: argparse.Namespace, threads: int) -> SearchConfig:
    return SearchConfig(
        seed=args.seed,
        threads=threads,
        deterministic=args.deterministic,
        exhaustive=args.exhaustive,
        restricted_first=args.restricted_first,
        pair_bound=get_pair_bound(args.genus) if args.genus in (5, 6) else None,
        max_pairs=args.max_pairs,
    )


def _resolve_env(args: argparse.Namespace) -> None:
    if args.seed is None:
        args.seed = get_seed()
    if args.threads is None:
        args.threads = get_threads()
    if args.out is None:
        args.out = get_out_dir()


def cmd_sweep(args: argparse.Namespace) -> int:
    _resolve_env(args)
    pmin = args.pmin
    if pmin <= 5:
        logger.info("primes 2, 3 and 5 are excluded; sweeping from p=7")
        pmin = 7
    base = _search_config(args, args.threads)
    cfg = SweepConfig(
        genus=args.genus,
        pmin=pmin,
        pmax=args.pmax,
        strategy=args.strategy,
        seed=args.seed,
        threads=args.threads,
        deterministic=args.deterministic,
        out_dir=args.out,
        restricted_first=args.restricted_first,
        exhaustive=args.exhaustive,
        max_pairs=args.max_pairs,
        pair_bound=base.pair_bound,
    )
    report = run_sweep(cfg)
    logger.info(
        "genus=%d primes=%d found=%d bot=%d error=%d exceptions=%s",
        cfg.genus, len(report.results), report.counts["found"], report.counts["bot"],
        report.counts["error"], report.exceptions,
    )
    return report.exit_code


def cmd_search(args: argparse.Namespace) -> int:
    _resolve_env(args)
    ctx = make_context(args.p)
    outcome = search(args.genus, ctx, args.strategy, _search_config(args, args.threads))
    logger.info(
        "p=%d genus=%d strategy=%s outcome=%s pairs=%d",
        args.p, args.genus, args.strategy, outcome.status, outcome.stats.pairs_tested,
    )
    if not outcome.found:
        return EXIT_FAILED

    for cert in outcome.certificates:
        report = verify(cert)
        if not report.passed:
            logger.error("certificate failed pre-verification: %s", [c.name for c in report.failures])
            return EXIT_ERROR
    if args.exhaustive:
        logger.info("p=%d: %d certificates verified, writing the first", args.p, len(outcome.certificates))
    name = write_certificate(outcome.certificate, args.out)
    print(Path(args.out) / name)
    return EXIT_OK


def _certificate_paths(paths: List[str]) -> List[Path]:
    found: List[Path] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            found.extend(sorted(q for q in path.glob("*.json") if q.name != REPORT_NAME))
        else:
            found.append(path)
    return found


def cmd_verify(args: argparse.Namespace) -> int:
    if not args.paths:
        print("verify: at least one certificate file or directory is required", file=sys.stderr)
        return EXIT_ERROR

    status = EXIT_OK
    for path in _certificate_paths(args.paths):
        try:
            cert = read_certificate_file(path)
        except (OSError, HoweError) as e:
            print(f"{path}: error: {e}")
            status = EXIT_ERROR
            continue
        report = verify(cert)
        if report.passed:
            print(f"{path}: ok ({len(report.checks)} checks)")
        else:
            details = "; ".join(f"{c.name}: {c.detail}" if c.detail else c.name for c in report.failures)
            print(f"{path}: FAILED {details}")
            status = max(status, EXIT_FAILED)
    return status


def cmd_tables(args: argparse.Namespace) -> int:
    tables = build_tables(make_context(args.p, args.minpoly))
    print(json.dumps({"p": tables.p, "minpoly": list(tables.ctx.minpoly)}))
    for name, values in (("T", tables.T), ("S", tables.S)):
        print(f"{name} {len(values)}")
        for value in values:
            print(json.dumps(value.to_list()))
    return EXIT_OK


def cmd_appendix(args: argparse.Namespace) -> int:
    records = [r for r in RECORDS if args.genus is None or r.genus == args.genus]
    passed = known = 0
    for record in records:
        report = verify_appendix(record)
        failures = [c.name for c in report.failures]
        if report.passed:
            passed += 1
            print(f"{record.label}: ok (root={report.root})")
        elif is_known_discrepancy(report):
            known += 1
            print(f"{record.label}: KNOWN DISCREPANCY {failures}")
        else:
            print(f"{record.label}: FAILED {failures}")
    summary = f"{passed}/{len(records)} records verified"
    if known:
        summary += f", {known} known discrepancy"
    print(f"{summary}; dataset sha256 {dataset_checksum()}")
    return EXIT_OK if passed + known == len(records) else EXIT_FAILED


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("main:app", host=args.host, port=args.port, log_level=args.log_level.lower())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="howe", description="Superspecial Howe curves of genus 4, 5 and 6")
    parser.add_argument("--log-level", default=None, help="Logging level (CLI > env:HOWE_LOG_LEVEL > INFO)")
    commands = parser.add_subparsers(dest="command", required=True)

    sweep = commands.add_parser("sweep", help="Search every prime of a range")
    _add_search_options(sweep)
    sweep.add_argument("--pmin", type=int, default=7)
    sweep.add_argument("--pmax", type=int, required=True)
    sweep.set_defaults(handler=cmd_sweep)

    single = commands.add_parser("search", help="Search one prime")
    _add_search_options(single)
    single.add_argument("--p", type=int, required=True)
    single.set_defaults(handler=cmd_search)

    check = commands.add_parser("verify", help="Re-verify certificate files or directories")
    check.add_argument("paths", nargs="*")
    check.set_defaults(handler=cmd_verify)

    tables = commands.add_parser("tables", help="Dump the supersingular tables T and S")
    tables.add_argument("--p", type=int, required=True)
    tables.add_argument("--minpoly", type=int, nargs=3, default=None, metavar=("A0", "A1", "A2"))
    tables.set_defaults(handler=cmd_tables)

    appendix = commands.add_parser("appendix", help="Verify the embedded appendix records")
    appendix.add_argument("--genus", type=int, choices=(5, 6), default=None)
    appendix.set_defaults(handler=cmd_appendix)

    serve = commands.add_parser("serve", help="Run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(handler=cmd_serve)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        init_logging(args.log_level)
        args.log_level = logging.getLevelName(logging.getLogger().level)
        return args.handler(args)
    except (HoweError, ValidationError) as e:
        logger.error("error: %s", e)
        return EXIT_ERROR
    except OSError as e:
        logger.error("I/O error: %s", e)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
