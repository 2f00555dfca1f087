"""
Append-only JSON-lines cache of polynomial answers.

Each line is a ``CacheRecord``. Records are keyed by the hash of the
normalized board and rank; loading re-checks every record against the naive
oracle at q = 2 when the board is small enough and drops disagreeing lines.
"""

import os
import threading
from pathlib import Path
from typing import Dict, Optional

from pydantic import ValidationError

from .artifacts import board_payload, canonical_dumps, query_key
from .constants import NAIVE_FREE_LIMIT
from .diagram import Board, normalize
from .fields import make_field
from .logging_config import get_configured_logger
from .oracle import naive_rank_distribution
from .qpoly import LaurentPoly
from .schemas import CacheRecord

logger = get_configured_logger(__name__)

RECHECK_Q = 2


class ResultCache:
    """
    Polynomial answers persisted across runs.

    Args:
        path: JSON-lines file; created on first write.
        verify_on_load: re-check cheap records with the naive oracle.
    """

    def __init__(self, path: Path, verify_on_load: bool = True):
        self.path = Path(path)
        self._records: Dict[str, LaurentPoly] = {}
        self._lock = threading.Lock()
        self.dropped = 0
        if self.path.exists():
            self._load(verify_on_load)

    def __len__(self) -> int:
        return len(self._records)

    def _load(self, verify: bool) -> None:
        with open(self.path, "r", encoding="utf-8") as f:
            for line_no, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    record = CacheRecord.model_validate_json(line)
                except ValidationError as exc:
                    logger.warning(f"{self.path}:{line_no}: unreadable record dropped ({exc.error_count()} errors)")
                    self.dropped += 1
                    continue
                poly = LaurentPoly.from_json(record.poly)
                board = Board(record.m, record.n, frozenset(tuple(c) for c in record.cells))
                if query_key(board, record.r) != record.key:
                    logger.warning(f"{self.path}:{line_no}: key does not match its board, dropped")
                    self.dropped += 1
                    continue
                if verify and not self._recheck(board, record.r, poly):
                    logger.warning(f"{self.path}:{line_no}: oracle disagrees at q={RECHECK_Q}, dropped")
                    self.dropped += 1
                    continue
                self._records[record.key] = poly
        logger.info(f"Loaded {len(self._records)} cached answers from {self.path} ({self.dropped} dropped)")

    @staticmethod
    def _recheck(board: Board, r: int, poly: LaurentPoly) -> bool:
        if board.free_count > NAIVE_FREE_LIMIT:
            return True
        histogram = naive_rank_distribution(board, make_field(RECHECK_Q))
        return poly.evaluate(RECHECK_Q) == histogram.get(r, 0)

    def get(self, board: Board, r: int) -> Optional[LaurentPoly]:
        key = query_key(normalize(board), r)
        hit = self._records.get(key)
        if hit is not None:
            logger.debug(f"cache hit {key[:12]}")
        return hit

    def put(self, board: Board, r: int, poly: LaurentPoly) -> None:
        """Append one record; a key already present is left alone."""
        board = normalize(board)
        key = query_key(board, r)
        with self._lock:
            if key in self._records:
                return
            payload = board_payload(board)
            record = CacheRecord(key=key, r=r, poly=poly.to_json(), **payload)
            line = canonical_dumps(record.model_dump()) + "\n"
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(line)
                f.flush()
                os.fsync(f.fileno())
            self._records[key] = poly

    def items(self) -> Dict[str, LaurentPoly]:
        return dict(self._records)
