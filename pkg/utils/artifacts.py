"""
Canonical JSON, hashing and atomic file writes for cache records and reports.
"""

import hashlib
import json
from pathlib import Path
from typing import Any, Dict

from .diagram import Board
from .logging_config import get_configured_logger

logger = get_configured_logger(__name__)


def canonical_dumps(data: Any) -> str:
    """
    Canonical JSON string for deterministic hashing.

    Args:
        data: JSON-serializable object

    Returns:
        JSON with sorted keys and compact separators
    """
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def sha256_hexdigest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def board_payload(board: Board) -> Dict[str, Any]:
    return {"m": board.m, "n": board.n, "cells": [list(c) for c in board.sorted_cells()]}


def query_key(board: Board, r: int) -> str:
    """SHA-256 of the canonical JSON of a board and rank."""
    payload = board_payload(board)
    payload["r"] = r
    return sha256_hexdigest(canonical_dumps(payload))


def write_json_atomic(path: Path, data: Dict[str, Any]) -> None:
    """
    Write JSON through a temporary file and rename, so readers never see a
    partial document.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp_path = path.with_suffix(path.suffix + ".tmp")
    with open(tmp_path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, sort_keys=True, ensure_ascii=False)
        f.write("\n")
    tmp_path.replace(path)
    logger.debug(f"Wrote JSON to {path}")


def read_json(path: Path) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)
