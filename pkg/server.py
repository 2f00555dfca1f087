#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
qmatrank MCP Server

An STDIO MCP server exposing exact counts of matrices over GF(q) with a
prescribed rank and forbidden support, q-rook polynomials, permutation
diagrams, Bruhat intervals and the verification harnesses.

Counting runs in a worker thread so long enumerations do not block the
event loop; all logging goes to stderr to keep the stdio transport clean.
"""

# Load environment variables before any other imports
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass

from functools import partial
from pathlib import Path
from typing import Any, Dict, Optional

import anyio
from fastmcp import Context, FastMCP

from utils.artifacts import write_json_atomic
from utils.commands import run_bruhat, run_count, run_perm, run_rook, run_series, run_verify
from utils.config import get_config
from utils.logging_config import configure_logging, get_configured_logger
from utils.response_formatter import format_error_response, with_status
from utils.schemas import CliConfig, SampleSpec
from utils.validation import parse_q_list

configure_logging(get_config("logging.level", "INFO"))
logger = get_configured_logger(__name__)

mcp = FastMCP("qmatrank")


@mcp.tool()
async def count_matrices(
    board: str,
    rank: int,
    at_q: Optional[int] = None,
    q_list: Optional[str] = None,
    budget: Optional[int] = None,
    cache_path: Optional[str] = None,
) -> Dict[str, Any]:
    """
    Count rank-r matrices over GF(q) that vanish on a board.

    Args:
        board: Board spec, e.g. "rothe:21534", "lambda:4:4,3,2:complement",
               "coords:2,2:(1,1);(2,2)"
        rank: Target rank r
        at_q: If given, return the single count at this prime power
        q_list: Comma separated prime powers used for interpolation
        budget: Oracle state budget
        cache_path: Optional JSON-lines result cache

    Returns:
        Dictionary with status, query, result (polynomial or samples) and provenance
    """
    params = {"board": board, "rank": rank, "at_q": at_q, "q_list": q_list, "budget": budget}
    try:
        overrides: Dict[str, Any] = {"cache_path": cache_path, "q_list": parse_q_list(q_list)}
        if budget is not None:
            overrides["budget"] = budget
        config = CliConfig(**overrides)
        payload, _ = await anyio.to_thread.run_sync(partial(run_count, board, rank, config, at_q=at_q))
        return with_status(payload)
    except Exception as e:
        logger.error(f"count_matrices failed: {e}")
        return format_error_response(e, params)


@mcp.tool()
async def rook_polynomial(board: str, rank: int, convention: str = "SE") -> Dict[str, Any]:
    """
    q-rook polynomial of a board for placements of `rank` rooks.

    Args:
        board: Board spec
        rank: Number of rooks
        convention: "SE" or "NE" inversion statistic
    """
    params = {"board": board, "rank": rank, "convention": convention}
    try:
        payload = await anyio.to_thread.run_sync(run_rook, board, rank, convention)
        return with_status(payload)
    except Exception as e:
        logger.error(f"rook_polynomial failed: {e}")
        return format_error_response(e, params)


@mcp.tool()
async def permutation_info(word: str, include_hull: bool = False, include_rothe: bool = False) -> Dict[str, Any]:
    """
    Pattern classes, skew-vexillary decomposition and diagrams of a permutation.

    Args:
        word: One-line notation, "41523" or "4,1,5,2,3"
        include_hull: Render the left hull
        include_rothe: Render the Rothe diagram
    """
    params = {"word": word}
    try:
        payload = await anyio.to_thread.run_sync(partial(run_perm, word, hull=include_hull, show_rothe=include_rothe))
        return with_status(payload)
    except Exception as e:
        logger.error(f"permutation_info failed: {e}")
        return format_error_response(e, params)


@mcp.tool()
async def bruhat_poincare(word: str, include_covers: bool = False, compare_with: Optional[str] = None) -> Dict[str, Any]:
    """
    Poincaré polynomial of the upper Bruhat interval [w, w0].

    Args:
        word: Permutation w
        include_covers: Also list the elements covering w
        compare_with: A permutation u; reports whether u <= w
    """
    params = {"word": word, "compare_with": compare_with}
    try:
        payload = await anyio.to_thread.run_sync(partial(run_bruhat, word, covers=include_covers, above=compare_with))
        return with_status(payload)
    except Exception as e:
        logger.error(f"bruhat_poincare failed: {e}")
        return format_error_response(e, params)


@mcp.tool()
async def generating_series(n: int) -> Dict[str, Any]:
    """
    Prefixes of the vexillary, indecomposable vexillary and skew-vexillary
    counting sequences up to n.
    """
    try:
        payload = await anyio.to_thread.run_sync(run_series, n)
        return with_status(payload)
    except Exception as e:
        logger.error(f"generating_series failed: {e}")
        return format_error_response(e, {"n": n})


@mcp.tool()
async def run_verification(
    claim: str,
    n_max: int,
    threads: Optional[int] = None,
    seed: Optional[int] = None,
    report_path: Optional[str] = None,
    ctx: Context = None,
) -> Dict[str, Any]:
    """
    Run a verification harness over all instances up to n_max.

    Args:
        claim: Harness name, e.g. "rothe", "poinrothe", "rookrothe", "mrp", "rank1t"
        n_max: Largest permutation or board size to sweep
        threads: Worker processes
        seed: Seed for the sampled harnesses
        report_path: Optional file that receives the report as JSON

    Returns:
        Dictionary with status and the verification report; failures are
        reported in the result, not as an error status
    """
    params = {"claim": claim, "n_max": n_max}
    try:
        if ctx:
            await ctx.info(f"Running {claim} up to n={n_max}")
        spec = SampleSpec(seed=seed) if seed is not None else None
        payload, _ = await anyio.to_thread.run_sync(
            partial(run_verify, claim, n_max, threads=threads, sample_spec=spec)
        )
        if report_path:
            write_json_atomic(Path(report_path), payload)
        return with_status(payload)
    except Exception as e:
        logger.error(f"run_verification failed: {e}")
        return format_error_response(e, params)


def main():
    """Run the MCP server."""
    logger.info("Starting qmatrank MCP Server...")

    logger.info("Available tools:")
    logger.info("  - count_matrices: rank-r matrices avoiding a board, as a polynomial in q")
    logger.info("  - rook_polynomial: SE/NE q-rook polynomials")
    logger.info("  - permutation_info: pattern classes, Rothe diagram, left hull")
    logger.info("  - bruhat_poincare: upper interval Poincaré polynomial")
    logger.info("  - generating_series: vexillary and skew-vexillary sequences")
    logger.info("  - run_verification: exhaustive and sampled checks")

    mcp.run()


if __name__ == "__main__":
    main()
