"""
Tests for closed forms and the counting dispatcher.
"""

import random

import pytest

from utils import counter
from utils.cache import ResultCache
from utils.counter import (
    FORMULA,
    INTERPOLATION,
    POLYNOMIAL,
    SAMPLES,
    CountMismatch,
    clear_memo,
    congruence_check,
    count_auto,
    count_diag_rank1,
    count_invertible,
    count_poly,
    count_rank1,
    count_rothe_skew_vexillary,
    count_support_in_NE,
    count_support_in_straight,
    count_value,
    validation_point,
)
from utils.diagram import Board, BoardError, ShapeSpec, build, from_cells
from utils.fields import field_of_order
from utils.oracle import CountQuery
from utils.perms import Permutation, rothe
from utils.qpoly import InterpolationError, LaurentPoly, Q, Q_MINUS_1

DIAGONAL_3 = from_cells(3, 3, [(1, 1), (2, 2), (3, 3)])
DIAGONAL_4 = from_cells(4, 4, [(1, 1), (2, 2), (3, 3), (4, 4)])
EX_NE = Board(4, 4, frozenset({(1, 1), (3, 4), (4, 1), (4, 3), (4, 4)})).complement()
SKEW_4432_31 = build(ShapeSpec((4, 4, 3, 2), (3, 1)), 4)


@pytest.fixture(autouse=True)
def fresh_memo():
    clear_memo()
    yield
    clear_memo()


class TestClosedForms:

    @pytest.mark.unit
    @pytest.mark.parametrize("board", [
        DIAGONAL_3,
        from_cells(2, 3, [(1, 1), (1, 2), (2, 3)]),
        from_cells(3, 2, [(1, 1), (2, 1), (3, 2)]),
        build(ShapeSpec((3, 1)), 3),
    ])
    @pytest.mark.parametrize("q", [2, 3])
    def test_rank1_against_oracle(self, board, q):
        assert count_rank1(board.m, board.n, board).evaluate(q) == count_value(board, 1, q)

    @pytest.mark.unit
    def test_rank1_size_mismatch(self):
        with pytest.raises(BoardError):
            count_rank1(3, 3, Board(2, 3))

    @pytest.mark.unit
    def test_diagonal_rank1(self):
        expected = 2 * Q_MINUS_1 * (7 * Q ** 2 - 2 * Q + 1)
        assert count_diag_rank1(4) == expected
        assert count_rank1(4, 4, DIAGONAL_4) == expected

    @pytest.mark.unit
    def test_invertible(self):
        assert count_invertible(2).evaluate(3) == 48
        assert count_invertible(3).evaluate(2) == 168

    @pytest.mark.unit
    def test_support_in_ne_board(self):
        expected = Q_MINUS_1 ** 4 * (Q ** 7 + 2 * Q ** 6)
        assert count_support_in_NE(EX_NE, 4) == expected

    @pytest.mark.unit
    def test_support_in_skew_shape(self):
        poly = count_support_in_NE(SKEW_4432_31, 3)
        assert poly.evaluate(2) == 252
        assert count_value(SKEW_4432_31.complement(), 3, 2) == 252

    @pytest.mark.unit
    def test_support_requires_ne(self):
        with pytest.raises(BoardError):
            count_support_in_NE(from_cells(2, 2, [(1, 1), (2, 1), (2, 2)]), 1)

    @pytest.mark.unit
    @pytest.mark.parametrize("lam", [(2, 1), (3, 3, 1), (3, 2, 2)])
    def test_support_in_straight_shape(self, lam):
        n = len(lam)
        board = build(ShapeSpec(lam), n).complement()
        for r in range(n + 1):
            assert count_support_in_straight(lam, n, n, r).evaluate(2) == count_value(board, r, 2)

    @pytest.mark.unit
    def test_rothe_21534(self):
        p = LaurentPoly({10: 1, 9: 4, 8: 9, 7: 14, 6: 15, 5: 11, 4: 5, 3: 1})
        assert count_rothe_skew_vexillary(Permutation.parse("21534"), 5) == Q ** 7 * Q_MINUS_1 ** 5 * p


class TestCongruence:

    @pytest.mark.unit
    @pytest.mark.parametrize("board,r", [(DIAGONAL_3, 3), (DIAGONAL_3, 2), (Board(3, 3), 3), (EX_NE.complement(), 4)])
    def test_congruence(self, board, r):
        assert congruence_check(CountQuery(board, r), field_of_order(3))


class TestCountAuto:

    @pytest.mark.unit
    def test_zero_diagonal(self):
        result = count_auto(CountQuery(DIAGONAL_3, 3))
        assert result.kind == POLYNOMIAL
        assert result.poly == Q_MINUS_1 ** 3 * (Q ** 3 + 2 * Q ** 2 - Q)
        assert result.poly.evaluate(2) == 14
        assert result.validated_at == 3

    @pytest.mark.unit
    def test_trivial_cases(self):
        assert count_poly(Board(2, 2), 0) == 1
        assert count_poly(Board(2, 2).complement(), 1).is_zero()

    @pytest.mark.unit
    def test_rank1_is_formula(self):
        result = count_auto(CountQuery(DIAGONAL_4, 1))
        assert result.provenance == FORMULA
        assert result.poly == 2 * Q_MINUS_1 * (7 * Q ** 2 - 2 * Q + 1)

    @pytest.mark.unit
    def test_ne_complement_is_formula(self):
        result = count_auto(CountQuery(EX_NE.complement(), 4))
        assert result.provenance == FORMULA
        assert result.poly == Q_MINUS_1 ** 4 * (Q ** 7 + 2 * Q ** 6)

    @pytest.mark.unit
    def test_reduction_matches_oracle(self):
        board = from_cells(4, 4, [(1, 1), (1, 2), (2, 3), (3, 1), (3, 4), (4, 2)])
        for r in range(1, 5):
            result = count_auto(CountQuery(board, r))
            assert result.is_polynomial
            for q in (2, 4):
                assert result.poly.evaluate(q) == count_value(board, r, q)

    @pytest.mark.unit
    def test_interpolation_path(self, mocker):
        mocker.patch("utils.counter._closed_form", return_value=None)
        mocker.patch("utils.counter.reduce_any", return_value=None)
        board = from_cells(2, 2, [(1, 1), (2, 2)])
        result = count_auto(CountQuery(board, 2), memoize=False)
        assert result.provenance == INTERPOLATION
        assert result.poly == Q_MINUS_1 ** 2
        assert result.validated_at == 7

    @pytest.mark.unit
    def test_validation_point_skips_sampled_q(self):
        assert validation_point([]) == 3
        assert validation_point([2, 4, 5]) == 3
        assert validation_point([2, 3, 4, 5]) == 7
        assert validation_point([2, 3, 4, 5, 7, 8]) == 9

    @pytest.mark.unit
    def test_validation_catches_interpolant_off_the_samples(self, mocker):
        mocker.patch("utils.counter._closed_form", return_value=None)
        mocker.patch("utils.counter.reduce_any", return_value=None)
        # agrees with (q-1)^2 at q = 2, 3, 4, 5 only
        wrong = Q_MINUS_1 ** 2 + (Q - 2) * (Q - 3) * (Q - 4) * (Q - 5)
        mocker.patch("utils.counter.interpolate", return_value=wrong)
        board = from_cells(2, 2, [(1, 1), (2, 2)])
        with pytest.raises(CountMismatch):
            count_auto(CountQuery(board, 2), memoize=False, validate=True)

    @pytest.mark.unit
    def test_samples_when_no_fit(self, mocker):
        mocker.patch("utils.counter._closed_form", return_value=None)
        mocker.patch("utils.counter.reduce_any", return_value=None)
        board = from_cells(2, 2, [(1, 1), (2, 2)])
        result = count_auto(CountQuery(board, 2), sample_qs=[2, 3, 4], memoize=False)
        assert result.kind == SAMPLES
        assert not result.is_polynomial
        assert result.samples.rows == ((2, 1), (3, 4), (4, 9))
        with pytest.raises(InterpolationError):
            count_poly(board, 2, sample_qs=[2, 3, 4], memoize=False)

    @pytest.mark.unit
    def test_validation_catches_wrong_formula(self, mocker):
        mocker.patch("utils.counter.count_rank1", return_value=Q)
        with pytest.raises(CountMismatch):
            count_auto(CountQuery(DIAGONAL_3, 1), validate=True)

    @pytest.mark.unit
    def test_memo_is_filled_by_reductions(self):
        count_auto(CountQuery(DIAGONAL_3, 3), memoize=True)
        assert len(counter._MEMO) > 0
        clear_memo()
        assert len(counter._MEMO) == 0

    @pytest.mark.integration
    def test_cache_round_trip(self, tmp_path):
        path = tmp_path / "answers.jsonl"
        cache = ResultCache(path)
        first = count_auto(CountQuery(DIAGONAL_3, 3), cache=cache, memoize=False)
        assert len(cache) > 0
        reloaded = ResultCache(path)
        assert reloaded.dropped == 0
        assert reloaded.get(DIAGONAL_3, 3) == first.poly

    @pytest.mark.slow
    def test_rothe_31524_by_reduction(self):
        p = LaurentPoly({10: 1, 9: 4, 8: 9, 7: 12, 6: 10, 5: 5, 4: 1})
        result = count_auto(CountQuery(rothe(Permutation.parse("31524")), 5))
        assert result.poly == Q ** 6 * Q_MINUS_1 ** 5 * p


@pytest.mark.slow
class TestRandomBoards:

    def test_count_auto_matches_oracle(self):
        rng = random.Random(5)
        for _ in range(500):
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            density = rng.choice((0.2, 0.5, 0.8))
            board = Board(m, n, frozenset(
                (i, j) for i in range(1, m + 1) for j in range(1, n + 1) if rng.random() < density
            ))
            r = rng.randint(0, min(m, n))
            result = count_auto(CountQuery(board, r), validate=False)
            assert result.is_polynomial, (board.sorted_cells(), r)
            for q in (2, 3, 4):
                assert result.poly.evaluate(q) == count_value(board, r, q), (board.sorted_cells(), r, q)
