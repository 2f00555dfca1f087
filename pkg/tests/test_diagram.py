"""
Tests for boards, shapes and normalization.
"""

import random

import pytest

from utils.diagram import (
    Board,
    BoardError,
    ShapeSpec,
    build,
    fano_board,
    from_cells,
    is_Le,
    is_NE,
    is_nonoverlapping_skew,
    is_skew_shape,
    is_straight_up_to_perm,
    normalize,
    skew_shape_of,
)


class TestShapeSpec:

    @pytest.mark.unit
    def test_sizes(self):
        spec = ShapeSpec((4, 4, 3, 2), (3, 1))
        assert spec.size == 9
        assert spec.lam_size == 13
        assert spec.mu_size == 4
        assert spec.mu_part(3) == 0
        assert str(spec) == "4432/31"

    @pytest.mark.unit
    @pytest.mark.parametrize("lam,mu", [
        ((2, 3), ()),
        ((3, 1), (2, 2)),
        ((2,), (1, 1)),
        ((2, -1), ()),
    ])
    def test_invalid_shapes(self, lam, mu):
        with pytest.raises(BoardError):
            ShapeSpec(lam, mu)


class TestBoard:

    @pytest.mark.unit
    def test_build_straight(self):
        board = build(ShapeSpec((2, 1)), 2)
        assert board.cells == {(1, 1), (1, 2), (2, 1)}
        assert board.free_cells() == [(2, 2)]
        assert board.free_count == 1

    @pytest.mark.unit
    def test_build_rejects_oversized(self):
        with pytest.raises(BoardError):
            build(ShapeSpec((3,)), 2)
        with pytest.raises(BoardError):
            build(ShapeSpec((1, 1, 1)), 2)

    @pytest.mark.unit
    def test_cells_inside_grid(self):
        with pytest.raises(BoardError):
            Board(2, 2, frozenset({(3, 1)}))

    @pytest.mark.unit
    def test_operations(self):
        board = from_cells(2, 3, [(1, 1), (2, 3)])
        assert board.transpose().cells == {(1, 1), (3, 2)}
        assert board.flip_rows().cells == {(2, 1), (1, 3)}
        assert board.complement().complement() == board
        assert board.delete_row(1).cells == {(1, 3)}
        assert board.delete_col(2).cells == {(1, 1), (2, 2)}
        assert board.restrict(1, 2).cells == {(1, 1)}
        assert board.permute([2, 1], [3, 2, 1]).cells == {(2, 3), (1, 1)}

    @pytest.mark.unit
    def test_permute_validates(self):
        with pytest.raises(BoardError):
            from_cells(2, 2, []).permute([1, 1], [1, 2])

    @pytest.mark.unit
    def test_profiles(self):
        profiles = build(ShapeSpec((2, 1)), 2).profiles()
        assert profiles.row_cells == (2, 1)
        assert profiles.row_free == (0, 1)
        assert profiles.col_cells == (2, 1)

    @pytest.mark.unit
    def test_matrix_round_trip_and_render(self):
        board = from_cells(2, 3, [(1, 2), (2, 1)])
        assert Board.from_matrix(board.to_matrix()) == board
        assert board.render() == ".#.\n#.."


class TestPredicates:

    @pytest.mark.unit
    def test_straight_shape_is_ne(self):
        assert is_NE(build(ShapeSpec((4, 4, 3, 2), (3, 1)), 4))
        assert is_NE(build(ShapeSpec((3, 2, 1)), 3))

    @pytest.mark.unit
    def test_not_ne(self):
        # (2,1), (1,1), (2,2) present, (1,2) missing
        assert not is_NE(from_cells(2, 2, [(1, 1), (2, 1), (2, 2)]))

    @pytest.mark.unit
    def test_le_property(self):
        assert is_Le(build(ShapeSpec((3, 2, 1)), 3))
        assert not is_Le(from_cells(2, 2, [(2, 1), (1, 2)]))

    @pytest.mark.unit
    def test_skew_shape_recognition(self):
        spec = ShapeSpec((4, 4, 3, 2), (3, 1))
        board = build(spec, 4)
        assert skew_shape_of(board) == spec
        assert is_skew_shape(board)
        assert not is_skew_shape(from_cells(1, 3, [(1, 1), (1, 3)]))

    @pytest.mark.unit
    def test_straight_up_to_permutation(self):
        shuffled = build(ShapeSpec((3, 1)), 3).permute([3, 1, 2], [2, 3, 1])
        assert is_straight_up_to_perm(shuffled)
        assert not is_straight_up_to_perm(from_cells(2, 2, [(1, 1), (2, 2)]))

    @pytest.mark.unit
    def test_nonoverlapping(self):
        spec = ShapeSpec((2, 2), (1,))
        assert is_nonoverlapping_skew(build(spec, 3), spec) is False
        spec = ShapeSpec((3, 3, 2), (1,))
        assert is_nonoverlapping_skew(build(spec, 3), spec)
        with pytest.raises(BoardError):
            is_nonoverlapping_skew(build(spec, 3), ShapeSpec((3,)))


class TestNormalize:

    @pytest.mark.unit
    def test_idempotent_and_size_preserving(self):
        board = from_cells(3, 3, [(3, 3), (1, 2), (2, 3)])
        normal = normalize(board)
        assert len(normal) == len(board)
        assert normalize(normal) == normal

    @pytest.mark.unit
    def test_equal_under_permutation(self):
        board = build(ShapeSpec((3, 1)), 3)
        moved = board.permute([2, 3, 1], [3, 1, 2])
        assert normalize(moved) == normalize(board)

    @pytest.mark.unit
    def test_random_boards_reach_doubly_lexical_order(self):
        rng = random.Random(3)
        for _ in range(300):
            m, n = rng.randint(1, 7), rng.randint(1, 7)
            board = Board(m, n, frozenset(
                (i, j) for i in range(1, m + 1) for j in range(1, n + 1) if rng.random() < 0.5
            ))
            normal = normalize(board)
            matrix = normal.to_matrix()
            rows = [tuple(row) for row in matrix]
            cols = [tuple(col) for col in matrix.T]
            assert rows == sorted(rows, reverse=True)
            assert cols == sorted(cols, reverse=True)
            assert normalize(normal) == normal
            assert len(normal) == len(board)


class TestFano:

    @pytest.mark.unit
    def test_fano_board(self):
        board = fano_board()
        assert (board.m, board.n, len(board)) == (7, 7, 28)
        profiles = board.profiles()
        assert set(profiles.row_free) == {3}
        assert set(profiles.col_free) == {3}
