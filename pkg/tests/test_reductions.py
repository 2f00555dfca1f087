"""
Tests for the sparse and dense row reductions.

Every trace is checked numerically: resolving its subqueries with the oracle
must reproduce the oracle count of the original query.
"""

import random

import pytest

from utils.counter import count_value
from utils.diagram import Board, from_cells
from utils.oracle import CountQuery
from utils.qpoly import Q, Q_MINUS_1
from utils.reductions import (
    DENSE,
    SPARSE,
    choose_target,
    extension_counts,
    is_reduction_minimal,
    reduce_any,
    reduce_dense,
    reduce_sparse,
)

BOARDS = {
    "one forbidden cell": from_cells(3, 3, [(2, 2)]),
    "two in a row": from_cells(3, 4, [(1, 1), (1, 3), (2, 2), (3, 4)]),
    "staircase": from_cells(3, 3, [(1, 1), (1, 2), (2, 1)]),
    "dense row": from_cells(3, 4, [(1, 1), (1, 2), (1, 3), (2, 4)]),
    "dense pair": from_cells(3, 4, [(1, 1), (1, 2), (2, 3), (3, 3)]),
    "diagonal": from_cells(4, 4, [(1, 1), (2, 2), (3, 3), (4, 4)]),
}


def _check(trace, q):
    expected = count_value(trace.query.board, trace.query.r, q)
    actual = trace.evaluate_at(q, lambda sub: count_value(sub.board, sub.r, q))
    assert actual == expected, trace.summary()


class TestBuildingBlocks:

    @pytest.mark.unit
    def test_extension_counts(self):
        stay, grow = extension_counts(4, 1, 2, 1)
        assert stay == Q
        assert grow == Q ** 3 - Q

    @pytest.mark.unit
    def test_choose_target_prefers_dense_zero(self):
        board = from_cells(3, 3, [(1, 1), (1, 2), (1, 3)])
        target = choose_target(board)
        assert (target.kind, target.entries, target.transposed, target.index) == (DENSE, 0, False, 1)

    @pytest.mark.unit
    def test_minimal_board(self):
        # 6 x 6 board with three cells and three holes in every line
        cells = [(i, j) for i in range(1, 7) for j in range(1, 7) if (j - i) % 6 < 3]
        board = from_cells(6, 6, cells)
        assert is_reduction_minimal(board)
        assert reduce_any(CountQuery(board, 3)) is None
        assert not is_reduction_minimal(from_cells(3, 3, [(1, 1)]))


class TestSparse:

    @pytest.mark.unit
    @pytest.mark.parametrize("name", sorted(BOARDS))
    @pytest.mark.parametrize("q", [2, 3])
    def test_trace_reproduces_count(self, name, q):
        board = BOARDS[name]
        for r in range(1, min(board.m, board.n) + 1):
            trace = reduce_sparse(CountQuery(board, r))
            if trace is None:
                continue
            assert trace.kind == SPARSE
            _check(trace, q)

    @pytest.mark.unit
    def test_two_cell_case_records_boards(self):
        board = from_cells(3, 3, [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 1), (3, 3)])
        trace = reduce_sparse(CountQuery(board, 2))
        assert trace.case == 3
        assert set(trace.derived_boards) == {"Z", "Y", "S1", "S2"}

    @pytest.mark.unit
    def test_free_row_of_invertible(self):
        trace = reduce_sparse(CountQuery(Board(2, 2), 2))
        assert trace.case == 1
        # only the rank-1 top rows contribute: (q^2 - q) * #rank-1 1x2 rows
        assert [(c, sub.r) for c, sub in trace.terms] == [(Q ** 2 - Q, 1)]


class TestDense:

    @pytest.mark.unit
    @pytest.mark.parametrize("name", sorted(BOARDS))
    @pytest.mark.parametrize("q", [2, 3])
    def test_trace_reproduces_count(self, name, q):
        board = BOARDS[name].complement()
        for r in range(1, min(board.m, board.n) + 1):
            trace = reduce_dense(CountQuery(board, r))
            if trace is None:
                continue
            assert trace.kind == DENSE
            _check(trace, q)

    @pytest.mark.unit
    def test_one_free_cell(self):
        board = from_cells(2, 2, [(2, 1)])
        trace = reduce_dense(CountQuery(board, 2))
        assert trace.case == 2
        coefficients = {sub.r: c for c, sub in trace.terms}
        assert coefficients[1] == Q_MINUS_1 * Q

    @pytest.mark.unit
    def test_summary_is_serializable(self):
        trace = reduce_any(CountQuery(BOARDS["dense pair"], 2))
        summary = trace.summary()
        assert summary["kind"] in (SPARSE, DENSE)
        assert all(isinstance(term["coefficient"], str) for term in summary["terms"])


def _random_board(rng: random.Random, m: int, n: int, density: float) -> Board:
    return Board(m, n, frozenset(
        (i, j) for i in range(1, m + 1) for j in range(1, n + 1) if rng.random() < density
    ))


@pytest.mark.slow
class TestRandomBoards:

    def test_traces_match_oracle(self):
        rng = random.Random(11)
        checked = 0
        while checked < 200:
            board = _random_board(rng, 4, 4, rng.choice((0.2, 0.5, 0.8)))
            query = CountQuery(board, rng.randint(1, 4))
            traces = [trace for trace in (reduce_sparse(query), reduce_dense(query)) if trace is not None]
            if not traces:
                continue
            for trace in traces:
                for q in (2, 3):
                    _check(trace, q)
            checked += 1
