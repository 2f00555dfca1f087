#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
qmatrank command-line interface.

Counts matrices over finite fields with a given rank and forbidden support,
and exposes the rook, permutation, Bruhat, series and verification tools.

Exit codes: 0 success (polynomial answer, passed verification), 1 error or
failed verification, 2 only exact samples were found (no polynomial).
"""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from utils.commands import (
    EXIT_ERROR,
    EXIT_OK,
    run_bruhat,
    run_count,
    run_perm,
    run_rook,
    run_series,
    run_verify,
)
from utils.artifacts import write_json_atomic
from utils.logging_config import configure_logging, get_configured_logger, verbosity_to_level
from utils.response_formatter import render_text
from utils.schemas import CliConfig, SampleSpec
from utils.validation import parse_q_list

logger = get_configured_logger(__name__)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "json"), default="text", dest="output_format")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmatrank",
        description="Exact counts of rank-r matrices over GF(q) with restricted support.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", help="count matrices avoiding a board")
    count.add_argument("board", help="board spec, e.g. rothe:21534 or lambda:5:4,3,2:complement")
    count.add_argument("--rank", "-r", type=int, required=True)
    count.add_argument("--factor", action="store_true", help="print as (q-1)^e * q^k * (rest)")
    count.add_argument("--at-q", type=int, default=None, help="single oracle value at this prime power")
    count.add_argument("--cache", default=None, help="JSON-lines result cache")
    count.add_argument("--budget", type=int, default=None, help="oracle state budget")
    count.add_argument("--q-list", default=None, help="comma separated sample prime powers")
    count.add_argument("--threads", type=int, default=None)
    _add_common(count)

    rook = sub.add_parser("rook", help="q-rook polynomial of a board")
    rook.add_argument("board")
    rook.add_argument("--rank", "-r", type=int, required=True)
    rook.add_argument("--convention", default="SE", help="SE or NE")
    _add_common(rook)

    perm = sub.add_parser("perm", help="permutation statistics, Rothe diagram and left hull")
    perm.add_argument("word")
    perm.add_argument("--hull", action="store_true")
    perm.add_argument("--rothe", action="store_true")
    _add_common(perm)

    bruhat = sub.add_parser("bruhat", help="upper Bruhat interval and Poincaré polynomial")
    bruhat.add_argument("word")
    bruhat.add_argument("--poincare", action="store_true", help="print the Poincaré polynomial (default)")
    bruhat.add_argument("--covers", action="store_true")
    bruhat.add_argument("--leq", default=None, metavar="U", help="test U <= word")
    _add_common(bruhat)

    series = sub.add_parser("series", help="vexillary and skew-vexillary series prefixes")
    series.add_argument("n", type=int)
    _add_common(series)

    verify = sub.add_parser("verify", help="run a verification harness")
    verify.add_argument("claim")
    verify.add_argument("n", type=int)
    verify.add_argument("--threads", type=int, default=None)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--report", default=None, metavar="PATH", help="also write the report as JSON")
    _add_common(verify)
    return parser


def _emit(payload: dict, output_format: str, factor: bool = False) -> None:
    if output_format == "json":
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False))
    else:
        print(render_text(payload, factor=factor))


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(verbosity_to_level(args.verbose))

    try:
        code = EXIT_OK
        if args.command == "count":
            overrides = {"cache_path": args.cache, "q_list": parse_q_list(args.q_list),
                         "output_format": args.output_format, "threads": args.threads}
            if args.budget is not None:
                overrides["budget"] = args.budget
            config = CliConfig(**overrides)
            payload, code = run_count(args.board, args.rank, config, at_q=args.at_q)
            _emit(payload, args.output_format, factor=args.factor)
        elif args.command == "rook":
            _emit(run_rook(args.board, args.rank, args.convention), args.output_format)
        elif args.command == "perm":
            _emit(run_perm(args.word, hull=args.hull, show_rothe=args.rothe), args.output_format)
        elif args.command == "bruhat":
            _emit(run_bruhat(args.word, covers=args.covers, above=args.leq), args.output_format)
        elif args.command == "series":
            _emit(run_series(args.n), args.output_format)
        elif args.command == "verify":
            spec = SampleSpec(seed=args.seed) if args.seed is not None else None
            payload, code = run_verify(args.claim, args.n, threads=args.threads, sample_spec=spec)
            if args.report:
                write_json_atomic(Path(args.report), payload)
            _emit(payload, args.output_format)
        return code
    except ValueError as exc:
        logger.debug("command failed", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
