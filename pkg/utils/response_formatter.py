"""
Response formatting for the CLI and the MCP tools.

Every command produces a payload ``{"query", "result", "provenance"}``; the
CLI prints it as JSON or renders it as text, the server returns it with a
``status`` field.
"""

from typing import Any, Dict, Optional

from .counter import CountResult
from .diagram import Board
from .qpoly import LaurentPoly, factored_form
from .schemas import CountResultModel, VerificationReport
from .validation import format_board_spec


def board_query(board: Board, r: Optional[int] = None, source: Optional[str] = None) -> Dict[str, Any]:
    query: Dict[str, Any] = {"board": format_board_spec(board), "m": board.m, "n": board.n}
    if r is not None:
        query["r"] = r
    if source is not None:
        query["spec"] = source
    return query


def count_result_model(result: CountResult) -> CountResultModel:
    poly = result.poly
    return CountResultModel(
        kind=result.kind,
        poly=poly.to_json() if poly is not None else None,
        pretty=poly.pretty() if poly is not None else None,
        factored=factored_form(poly) if poly is not None else None,
        samples=result.samples.to_json() if result.samples is not None else None,
        quasi=result.quasi.to_json() if result.quasi is not None else None,
        provenance=result.provenance,
        trace=result.trace,
        validated_at=result.validated_at,
    )


def format_count_response(result: CountResult, source: Optional[str] = None) -> Dict[str, Any]:
    model = count_result_model(result)
    return {
        "query": board_query(result.query.board, result.query.r, source),
        "result": model.model_dump(),
        "provenance": result.provenance,
    }


def format_value_response(board: Board, r: int, q: int, value: int, source: Optional[str] = None) -> Dict[str, Any]:
    query = board_query(board, r, source)
    query["q"] = q
    return {"query": query, "result": {"value": str(value)}, "provenance": "oracle+interpolation"}


def format_poly_response(query: Dict[str, Any], poly: LaurentPoly, extra: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    result: Dict[str, Any] = {"poly": poly.to_json(), "pretty": poly.pretty()}
    if extra:
        result.update(extra)
    return {"query": query, "result": result, "provenance": "formula"}


def format_report_response(report: VerificationReport) -> Dict[str, Any]:
    return {
        "query": {"claim": report.claim, "n_range": report.n_range},
        "result": report.model_dump(),
        "provenance": "formula",
    }


def format_error_response(error: Exception, request_params: Dict[str, Any]) -> Dict[str, Any]:
    """
    Format an error response.

    Args:
        error: The exception that occurred
        request_params: Original request parameters

    Returns:
        Formatted error response
    """
    return {
        "status": "error",
        "error": {
            "type": type(error).__name__,
            "message": str(error),
            "request_parameters": request_params,
        },
    }


def with_status(payload: Dict[str, Any]) -> Dict[str, Any]:
    return {"status": "success", **payload}


# -- text rendering ------------------------------------------------------------

def render_text(payload: Dict[str, Any], factor: bool = False) -> str:
    """Human-readable rendering of a payload."""
    result = payload["result"]
    if "kind" in result:
        if result["kind"] == "polynomial":
            return result["factored"] if factor else result["pretty"]
        lines = [f"q={row['q']}: {row['value']}" for row in result.get("samples") or []]
        quasi = result.get("quasi")
        if quasi:
            lines.append(f"parity fit: {quasi.get('note') or quasi.get('classes')}")
        return "\n".join(lines)
    if "claim" in result:
        status = "PASS" if result["passed"] else "FAIL"
        lines = [f"{result['claim']} n={result['n_range'][0]}..{result['n_range'][1]}: {status} "
                 f"({result['instances']} instances, {result['skipped_by_symmetry']} skipped by symmetry)"]
        for failure in result["failures"]:
            lines.append(f"  {failure['witness']}: expected {failure['expected']}, got {failure['actual']}")
        lines.extend(f"  note: {note}" for note in result.get("notes", []))
        return "\n".join(lines)
    if "value" in result:
        return result["value"]
    lines = []
    if "pretty" in result:
        lines.append(result["pretty"])
    for key in sorted(k for k in result if k not in ("poly", "pretty")):
        value = result[key]
        if isinstance(value, dict) and "render" in value:
            lines.append(f"{key}:\n{value['render']}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)
