"""
Command implementations shared by the CLI and the MCP server.

Each function validates its inputs, runs the library call and returns a
response payload; none of them print or exit.
"""

from typing import Any, Dict, Optional, Tuple

from .cache import ResultCache
from .counter import count_auto, count_value
from .diagram import Board
from .helpers import resolve_threads
from .logging_config import get_configured_logger
from .oracle import CountQuery
from .perms import (
    Permutation,
    avoids_hull_patterns,
    bruhat_covers,
    bruhat_leq,
    construct_v,
    full_columns_of_complement,
    is_vexillary,
    left_hull,
    poincare,
    rothe,
    skew_shape_of_rothe,
    sv_decompose,
    upper_interval,
)
from .response_formatter import (
    board_query,
    format_count_response,
    format_poly_response,
    format_report_response,
    format_value_response,
)
from .rooks import qrook, rook_count
from .schemas import CliConfig, SampleSpec
from .series import series_report
from .validation import format_board_spec, parse_board_spec, validate_convention, validate_rank
from .verify import run_claim

logger = get_configured_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_SAMPLES_ONLY = 2


def _board_view(board: Board) -> Dict[str, Any]:
    return {"spec": format_board_spec(board), "cells": len(board), "render": board.render()}


def run_count(spec: str, rank: int, config: Optional[CliConfig] = None, at_q: Optional[int] = None) -> Tuple[Dict[str, Any], int]:
    """
    Count matrices of the given rank avoiding the board.

    Returns:
        (payload, exit code): 0 for a polynomial or a single value, 2 when
        only samples were found.
    """
    config = config or CliConfig()
    board = parse_board_spec(spec)
    validate_rank(board, rank)
    if at_q is not None:
        value = count_value(board, rank, at_q, config.budget)
        return format_value_response(board, rank, at_q, value, spec), EXIT_OK
    cache = ResultCache(config.cache_path) if config.cache_path else None
    result = count_auto(
        CountQuery(board, rank),
        budget=config.budget,
        sample_qs=config.q_list,
        cache=cache,
        threads=resolve_threads(config.threads),
    )
    return format_count_response(result, spec), EXIT_OK if result.is_polynomial else EXIT_SAMPLES_ONLY


def run_rook(spec: str, rank: int, convention: str = "SE") -> Dict[str, Any]:
    board = parse_board_spec(spec)
    validate_rank(board, rank)
    convention = validate_convention(convention)
    poly = qrook(board, rank, convention)
    query = board_query(board, rank, spec)
    query["convention"] = convention
    return format_poly_response(query, poly, {"placements": rook_count(board, rank)})


def run_perm(word: str, hull: bool = False, show_rothe: bool = False) -> Dict[str, Any]:
    w = Permutation.parse(word)
    decomposition = sv_decompose(w)
    result: Dict[str, Any] = {
        "inverse": str(w.inverse()),
        "reverse_complement": str(w.reverse_complement()),
        "inversions": w.inversions(),
        "left_to_right_maxima": w.left_to_right_maxima(),
        "full_columns_of_complement": full_columns_of_complement(w),
        "vexillary": is_vexillary(w),
        "skew_vexillary": decomposition is not None,
        "avoids_hull_patterns": avoids_hull_patterns(w),
    }
    if decomposition is not None:
        result["split"] = decomposition.k
        result["skew_shape"] = str(skew_shape_of_rothe(w))
        result["v"] = str(construct_v(w))
    if hull:
        result["hull"] = _board_view(left_hull(w))
    if show_rothe:
        result["rothe"] = _board_view(rothe(w))
    return {"query": {"word": str(w)}, "result": result, "provenance": "formula"}


def run_bruhat(word: str, covers: bool = False, above: Optional[str] = None) -> Dict[str, Any]:
    w = Permutation.parse(word)
    extra: Dict[str, Any] = {"interval_size": len(upper_interval(w))}
    if covers:
        extra["covers"] = [str(u) for u in bruhat_covers(w)]
    if above is not None:
        u = Permutation.parse(above)
        extra["leq"] = {"u": str(u), "w": str(w), "u_leq_w": bruhat_leq(u, w)}
    return format_poly_response({"word": str(w)}, poincare(w), extra)


def run_series(n: int) -> Dict[str, Any]:
    report = series_report(n + 1)
    return {"query": {"n": n}, "result": report, "provenance": "formula"}


def run_verify(claim: str, n_max: int, threads: Optional[int] = None, sample_spec: Optional[SampleSpec] = None) -> Tuple[Dict[str, Any], int]:
    report = run_claim(claim, n_max, threads=resolve_threads(threads), sample_spec=sample_spec)
    if not report.passed:
        logger.warning(f"{claim}: {len(report.failures)} failures")
    return format_report_response(report), EXIT_OK if report.passed else EXIT_ERROR
