"""
Regression values for the four special patterns and the exhaustive
cross-checks between the oracles and the dispatcher.
"""

import itertools
import random
from math import comb

import pytest

from utils.counter import clear_memo, congruence_check, count_auto, count_support_in_NE
from utils.diagram import Board, ShapeSpec, build, skew_shape_of
from utils.fields import field_of_order
from utils.oracle import CountQuery, count_at_q, naive_rank_distribution
from utils.perms import Permutation, left_hull, poincare, rothe
from utils.qpoly import LaurentPoly, Q, Q_MINUS_1
from utils.rooks import SE, qrook
from utils.series import skew_vexillary_by_decomposition, skew_vexillary_by_patterns

# w -> (count quotient, Poincare polynomial, q^a times the SE rook number of the hull)
SPECIAL_PATTERNS = {
    "1324": (
        LaurentPoly({6: 1, 5: 3, 4: 5, 3: 5, 2: 3, 1: 1}),
        LaurentPoly({6: 1, 5: 3, 4: 5, 3: 6, 2: 4, 1: 1}),
        LaurentPoly({6: 1, 5: 3, 4: 5, 3: 6, 2: 5, 1: 3, 0: 1}),
    ),
    "24153": (
        LaurentPoly({10: 1, 9: 4, 8: 9, 7: 12, 6: 10, 5: 5, 4: 1}),
        LaurentPoly({10: 1, 9: 4, 8: 9, 7: 13, 6: 11, 5: 5, 4: 1}),
        LaurentPoly({10: 1, 9: 4, 8: 9, 7: 13, 6: 12, 5: 7, 4: 2}),
    ),
    "31524": (
        LaurentPoly({10: 1, 9: 4, 8: 9, 7: 12, 6: 10, 5: 5, 4: 1}),
        LaurentPoly({10: 1, 9: 4, 8: 9, 7: 13, 6: 11, 5: 5, 4: 1}),
        LaurentPoly({10: 1, 9: 4, 8: 9, 7: 13, 6: 12, 5: 7, 4: 2}),
    ),
    "426153": (
        LaurentPoly({15: 1, 14: 5, 13: 14, 12: 24, 11: 27, 10: 19, 9: 7, 8: 1}),
        LaurentPoly({15: 1, 14: 5, 13: 14, 12: 25, 11: 28, 10: 19, 9: 7, 8: 1}),
        LaurentPoly({15: 1, 14: 5, 13: 14, 12: 25, 11: 29, 10: 21, 9: 8, 8: 1}),
    ),
}


@pytest.fixture(autouse=True)
def fresh_memo():
    clear_memo()
    yield
    clear_memo()


def _count_quotient(w: Permutation) -> LaurentPoly:
    n = w.n
    poly = count_auto(CountQuery(rothe(w), n), validate=False).poly
    k = comb(n, 2) - w.inversions()
    quotient, remainder = poly, 0
    for _ in range(n):
        quotient, remainder = quotient.divmod_linear(1)
        assert remainder == 0
    return quotient.shift(-k)


class TestSpecialPatterns:

    @pytest.mark.unit
    @pytest.mark.parametrize("word", sorted(SPECIAL_PATTERNS))
    def test_poincare(self, word):
        assert poincare(Permutation.parse(word)) == SPECIAL_PATTERNS[word][1]

    @pytest.mark.unit
    @pytest.mark.parametrize("word", sorted(SPECIAL_PATTERNS))
    def test_hull_rook_number(self, word):
        w = Permutation.parse(word)
        hull = left_hull(w)
        shape = skew_shape_of(hull)
        assert shape is not None
        assert qrook(hull, w.n, SE).shift(shape.mu_size) == SPECIAL_PATTERNS[word][2]

    @pytest.mark.unit
    def test_count_1324(self):
        assert _count_quotient(Permutation.parse("1324")) == SPECIAL_PATTERNS["1324"][0]

    @pytest.mark.slow
    @pytest.mark.parametrize("word", ["24153", "426153"])
    def test_count_larger(self, word):
        assert _count_quotient(Permutation.parse(word)) == SPECIAL_PATTERNS[word][0]

    @pytest.mark.unit
    @pytest.mark.parametrize("word", sorted(SPECIAL_PATTERNS))
    def test_strictly_below(self, word):
        quotient, p_w, hull_row = SPECIAL_PATTERNS[word]
        assert quotient.dominated_by(p_w) and quotient != p_w
        assert len({quotient, p_w, hull_row}) == 3


class TestSkewShapeExample:

    @pytest.mark.unit
    def test_factored_count(self):
        support = build(ShapeSpec((4, 4, 3, 2), (3, 1)), 4)
        expected = Q_MINUS_1 ** 3 * Q ** 2 * (Q + 1) * (2 * Q ** 2 + 6 * Q + 1)
        assert count_support_in_NE(support, 3) == expected


def _all_boards(m: int, n: int):
    cells = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    for mask in range(1 << len(cells)):
        yield Board(m, n, frozenset(c for bit, c in enumerate(cells) if mask >> bit & 1))


@pytest.mark.slow
class TestExhaustive:

    def test_oracles_and_dispatcher_on_3x3(self):
        fields = {q: field_of_order(q) for q in (2, 3)}
        for board in _all_boards(3, 3):
            for q, field in fields.items():
                histogram = naive_rank_distribution(board, field)
                for r in range(4):
                    dp = count_at_q(CountQuery(board, r), field)
                    assert dp == histogram.get(r, 0), (board.sorted_cells(), r, q)
                    result = count_auto(CountQuery(board, r), validate=False)
                    assert result.poly.evaluate(q) == dp, (board.sorted_cells(), r, q)

    def test_skew_vexillary_decomposition_to_seven(self):
        assert skew_vexillary_by_decomposition(7) == skew_vexillary_by_patterns(7)

    def test_congruence_on_random_triples(self):
        rng = random.Random(2024)
        fields = {q: field_of_order(q) for q in (2, 3, 4, 5)}
        for _ in range(500):
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            board = Board(m, n, frozenset(
                (i, j) for i, j in itertools.product(range(1, m + 1), range(1, n + 1)) if rng.random() < 0.4
            ))
            r = rng.randint(0, min(m, n))
            q = rng.choice(list(fields))
            assert congruence_check(CountQuery(board, r), fields[q])
