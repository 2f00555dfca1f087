"""
Tests for canonical JSON, query keys and atomic report writes.
"""

import hashlib

import pytest

from utils.artifacts import (
    board_payload,
    canonical_dumps,
    query_key,
    read_json,
    sha256_hexdigest,
    write_json_atomic,
)
from utils.diagram import Board


class TestCanonicalization:
    """Deterministic serialization for hashing."""

    @pytest.mark.unit
    def test_canonical_dumps(self):
        assert canonical_dumps({"b": 2, "a": [1, 2]}) == '{"a":[1,2],"b":2}'
        assert canonical_dumps({"b": 2, "a": 1}) == canonical_dumps({"a": 1, "b": 2})

    @pytest.mark.unit
    def test_sha256(self):
        assert sha256_hexdigest("qmatrank") == hashlib.sha256(b"qmatrank").hexdigest()

    @pytest.mark.unit
    def test_board_payload_sorted(self):
        board = Board(2, 3, frozenset({(2, 1), (1, 3)}))
        assert board_payload(board) == {"m": 2, "n": 3, "cells": [[1, 3], [2, 1]]}


class TestQueryKey:
    @pytest.mark.unit
    def test_stable_across_cell_order(self):
        a = Board(2, 2, frozenset([(1, 1), (2, 2)]))
        b = Board(2, 2, frozenset([(2, 2), (1, 1)]))
        assert query_key(a, 1) == query_key(b, 1)
        assert len(query_key(a, 1)) == 64

    @pytest.mark.unit
    def test_depends_on_rank_and_shape(self):
        board = Board(2, 2, frozenset([(1, 1)]))
        assert query_key(board, 1) != query_key(board, 2)
        assert query_key(board, 1) != query_key(Board(2, 3, frozenset([(1, 1)])), 1)


class TestJsonFiles:
    @pytest.mark.unit
    def test_write_then_read(self, tmp_path):
        target = tmp_path / "reports" / "rothe.json"
        data = {"claim": "rothe", "failures": [], "n_range": [1, 5]}
        write_json_atomic(target, data)
        assert read_json(target) == data
        assert not target.with_suffix(".json.tmp").exists()

    @pytest.mark.unit
    def test_overwrite(self, tmp_path):
        target = tmp_path / "report.json"
        write_json_atomic(target, {"passed": False})
        write_json_atomic(target, {"passed": True})
        assert read_json(target) == {"passed": True}
