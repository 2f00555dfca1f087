"""
Recursions that peel one row off a counting query.

Both reductions move a target row to the bottom (and, where needed, its
special cells to the last columns), then express the count as a linear
combination, with Laurent polynomial coefficients, of counts on boards with
one row fewer. A column target is handled by transposing first.

Sparse: the row has at most two forbidden cells.
Dense: the row has at most two free cells.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .diagram import Board
from .logging_config import get_configured_logger
from .oracle import CountQuery
from .qpoly import ONE, ZERO, LaurentPoly, Q_MINUS_1, q_power

logger = get_configured_logger(__name__)

SPARSE = "sparse"
DENSE = "dense"

# Lower is preferred; ties fall back to rows before columns, then lowest index.
_PRIORITY = {(DENSE, 0): 0, (SPARSE, 0): 1, (DENSE, 1): 2, (SPARSE, 1): 3, (DENSE, 2): 4, (SPARSE, 2): 5}

Combination = Dict[Board, LaurentPoly]


@dataclass(frozen=True)
class ReductionTarget:
    kind: str
    entries: int
    transposed: bool
    index: int

    @property
    def rank_key(self) -> Tuple[int, int, int]:
        return _PRIORITY[(self.kind, self.entries)], int(self.transposed), self.index


@dataclass
class ReductionTrace:
    """
    count(query) = sum of coefficient * count(subquery) over ``terms``.

    ``derived_boards`` holds the auxiliary boards built by the reduction and
    ``counts`` the exponents a, b, c, d of the dense case.
    """

    query: CountQuery
    kind: str
    case: int
    target: ReductionTarget
    terms: List[Tuple[LaurentPoly, CountQuery]] = field(default_factory=list)
    derived_boards: Dict[str, Board] = field(default_factory=dict)
    counts: Dict[str, int] = field(default_factory=dict)

    def total(self, resolve: Callable[[CountQuery], LaurentPoly]) -> LaurentPoly:
        """Combine polynomial subquery values."""
        result = ZERO
        for coefficient, subquery in self.terms:
            result = result + coefficient * resolve(subquery)
        return result

    def evaluate_at(self, q: int, resolve: Callable[[CountQuery], int]) -> int:
        """Total at a fixed q with integer subquery values."""
        value = sum(Fraction(coefficient.evaluate(q)) * resolve(subquery) for coefficient, subquery in self.terms)
        if value.denominator != 1:
            raise ValueError(f"reduction total {value} at q={q} is not an integer")
        return int(value)

    def summary(self) -> Dict[str, object]:
        return {
            "kind": self.kind,
            "case": self.case,
            "target": {
                "index": self.target.index,
                "axis": "column" if self.target.transposed else "row",
                "entries": self.target.entries,
            },
            "terms": [
                {
                    "coefficient": coefficient.pretty(),
                    "m": subquery.board.m,
                    "n": subquery.board.n,
                    "r": subquery.r,
                    "cells": [list(c) for c in subquery.board.sorted_cells()],
                }
                for coefficient, subquery in self.terms
            ],
            "derived_boards": {
                name: [list(c) for c in board.sorted_cells()] for name, board in self.derived_boards.items()
            },
            "counts": dict(self.counts),
        }


# -- building blocks -----------------------------------------------------------

def extension_counts(n: int, k: int, s: int, s_prime: int) -> Tuple[LaurentPoly, LaurentPoly]:
    """
    New rows vanishing on the last k of n coordinates, appended to a matrix of
    rank s whose last k columns have rank s_prime.

    Returns:
        (stay, grow): q^(s - s') rows keep the rank, q^(n - k) - q^(s - s')
        raise it by one.
    """
    stay = q_power(s - s_prime)
    return stay, q_power(n - k) - stay


def _valid_rank(board: Board, s: int) -> bool:
    return 0 <= s <= min(board.m, board.n)


def _combine(*parts: Tuple[LaurentPoly, Combination]) -> Combination:
    result: Combination = {}
    for scale, combination in parts:
        for board, coefficient in combination.items():
            result[board] = result.get(board, ZERO) + scale * coefficient
    return {b: c for b, c in result.items() if not c.is_zero()}


class _TermCollector:
    def __init__(self) -> None:
        self._terms: Dict[CountQuery, LaurentPoly] = {}
        self._order: List[CountQuery] = []

    def add(self, coefficient: LaurentPoly, combination: Combination, s: int) -> None:
        for board, scale in combination.items():
            if not _valid_rank(board, s):
                continue
            subquery = CountQuery(board, s)
            if subquery not in self._terms:
                self._terms[subquery] = ZERO
                self._order.append(subquery)
            self._terms[subquery] = self._terms[subquery] + coefficient * scale

    def terms(self) -> List[Tuple[LaurentPoly, CountQuery]]:
        return [(self._terms[s], s) for s in self._order if not self._terms[s].is_zero()]


def _move_to_end(size: int, chosen: List[int]) -> List[int]:
    """Permutation (as a target list) sending ``chosen`` to the last positions, order kept."""
    rest = [i for i in range(1, size + 1) if i not in chosen]
    order = rest + sorted(chosen)
    target = [0] * size
    for new_position, old in enumerate(order, start=1):
        target[old - 1] = new_position
    return target


def _arrange(board: Board, row: int, special_cols: List[int]) -> Board:
    """Target row to the bottom, its special columns to the right."""
    return board.permute(_move_to_end(board.m, [row]), _move_to_end(board.n, special_cols))


def _candidates(board: Board, kind: str) -> List[ReductionTarget]:
    profiles = board.profiles()
    found = []
    for transposed, counts in ((False, profiles.row_cells if kind == SPARSE else profiles.row_free),
                               (True, profiles.col_cells if kind == SPARSE else profiles.col_free)):
        for index, value in enumerate(counts, start=1):
            if value <= 2:
                found.append(ReductionTarget(kind, value, transposed, index))
    return found


def choose_target(board: Board, kinds=(SPARSE, DENSE)) -> Optional[ReductionTarget]:
    """Best applicable row or column over the requested reduction kinds."""
    candidates = [t for kind in kinds for t in _candidates(board, kind)]
    if not candidates:
        return None
    return min(candidates, key=lambda t: t.rank_key)


def _oriented(board: Board, target: ReductionTarget) -> Board:
    return board.transpose() if target.transposed else board


def _shifted_last_column(top: Board, rows_blocked) -> Board:
    """(m-1) x (n-1) board: first n-2 columns of top, column n-1 blocked at ``rows_blocked``."""
    n = top.n
    cells = {(i, j) for i, j in top.cells if j <= n - 2}
    cells.update((i, n - 1) for i in rows_blocked)
    return Board(top.m, n - 1, frozenset(cells))


# -- sparse rows ---------------------------------------------------------------

def _sparse(query: CountQuery, target: ReductionTarget) -> ReductionTrace:
    board = _oriented(query.board, target)
    m, n, r = board.m, board.n, query.r
    k = target.entries
    arranged = _arrange(board, target.index, sorted(board.row(target.index)))
    top = arranged.delete_row(m)
    trace = ReductionTrace(query, SPARSE, k + 1, target)

    # classes of the top matrix by the rank s' of its last k columns
    full: Combination = {top: ONE}
    if k == 0:
        classes = [full]
    elif k == 1:
        left = top.restrict(m - 1, n - 1)
        classes = [{left: ONE}, _combine((ONE, full), (-ONE, {left: ONE}))]
        trace.derived_boards["A"] = left
    else:
        z = top.restrict(m - 1, n - 2)
        y = top.restrict(m - 1, n - 1)
        col_a, col_b = top.col(n - 1), top.col(n)
        s1 = _shifted_last_column(top, col_b)
        s2 = _shifted_last_column(top, col_a | col_b)
        zero_class: Combination = {z: ONE}
        rank_one = _combine(
            (ONE, {y: ONE}), (ONE, {s1: ONE}), (Q_MINUS_1, {s2: ONE}),
            (-(ONE + ONE + Q_MINUS_1), zero_class),
        )
        rank_two = _combine((ONE, full), (-ONE, zero_class), (-ONE, rank_one))
        classes = [zero_class, rank_one, rank_two]
        trace.derived_boards.update({"Z": z, "Y": y, "S1": s1, "S2": s2})

    collector = _TermCollector()
    for s_prime, combination in enumerate(classes):
        stay, _ = extension_counts(n, k, r, s_prime)
        _, grow = extension_counts(n, k, r - 1, s_prime)
        collector.add(stay, combination, r)
        collector.add(grow, combination, r - 1)
    trace.terms = collector.terms()
    return trace


def reduce_sparse(query: CountQuery) -> Optional[ReductionTrace]:
    """
    Reduce along a row or column with at most two board cells.

    Returns:
        The trace, or None when every row and column has three or more cells.
    """
    target = choose_target(query.board, (SPARSE,))
    if target is None:
        return None
    trace = _sparse(query, target)
    logger.debug(f"sparse reduction on {'column' if target.transposed else 'row'} {target.index}: "
                 f"case {trace.case}, {len(trace.terms)} terms")
    return trace


# -- dense rows ----------------------------------------------------------------

def _dense(query: CountQuery, target: ReductionTarget) -> ReductionTrace:
    board = _oriented(query.board, target)
    m, n, r = board.m, board.n, query.r
    free_cols = [j for j in range(1, n + 1) if j not in board.row(target.index)]
    arranged = _arrange(board, target.index, free_cols)
    top = arranged.delete_row(m)
    k = target.entries
    trace = ReductionTrace(query, DENSE, k + 1, target)
    collector = _TermCollector()
    collector.add(ONE, {top: ONE}, r)

    def free_in_col(j: int) -> int:
        return (m - 1) - len(top.col(j))

    if k >= 1:
        y = top.restrict(m - 1, n - 1)
        b = free_in_col(n)
        collector.add(Q_MINUS_1 * q_power(b), {y: ONE}, r - 1)
        trace.counts["a" if k == 1 else "b"] = b
        trace.derived_boards["Y"] = y
    if k == 2:
        col_a, col_b = top.col(n - 1), top.col(n)
        s_prime = _shifted_last_column(top, col_b)
        s_double = _shifted_last_column(top, col_a & col_b)
        c = free_in_col(n - 1)
        d = sum(1 for i in range(1, m) if i not in col_a and i not in col_b)
        collector.add(Q_MINUS_1 * q_power(c), {s_prime: ONE}, r - 1)
        collector.add(Q_MINUS_1 * Q_MINUS_1 * q_power(d), {s_double: ONE}, r - 1)
        trace.counts.update({"c": c, "d": d})
        trace.derived_boards.update({"S'": s_prime, "S''": s_double})
    trace.terms = collector.terms()
    return trace


def reduce_dense(query: CountQuery) -> Optional[ReductionTrace]:
    """
    Reduce along a row or column with at most two free cells.

    Returns:
        The trace, or None when every row and column has three or more free cells.
    """
    target = choose_target(query.board, (DENSE,))
    if target is None:
        return None
    trace = _dense(query, target)
    logger.debug(f"dense reduction on {'column' if target.transposed else 'row'} {target.index}: "
                 f"case {trace.case}, counts {trace.counts}")
    return trace


def reduce_any(query: CountQuery) -> Optional[ReductionTrace]:
    """Best reduction of either kind, or None."""
    target = choose_target(query.board)
    if target is None:
        return None
    return _sparse(query, target) if target.kind == SPARSE else _dense(query, target)


def is_reduction_minimal(board: Board) -> bool:
    """Every row and column has at least three board cells and three free cells."""
    profiles = board.profiles()
    return all(
        value >= 3
        for counts in (profiles.row_cells, profiles.row_free, profiles.col_cells, profiles.col_free)
        for value in counts
    )
