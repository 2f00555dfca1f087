"""
Exact per-field counting of matrices with given rank and forbidden support.

The main oracle walks the rows of the matrix once, keeping a distribution over
row spaces in reduced echelon form. A secondary naive oracle enumerates every
matrix and is only used for cross-checks on small boards.
"""

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .constants import NAIVE_FREE_LIMIT, ORACLE_STATE_BUDGET
from .diagram import Board, BoardError
from .fields import FieldSpec
from .helpers import gaussian_binomial
from .logging_config import get_configured_logger

logger = get_configured_logger(__name__)

Vector = Tuple[int, ...]


class OracleBudgetExceeded(ValueError):
    """The query needs more DP states (or naive matrices) than allowed."""


@dataclass(frozen=True)
class CountQuery:
    """Count m x n matrices of rank r whose support avoids ``board``."""

    board: Board
    r: int

    def __post_init__(self) -> None:
        if not 0 <= self.r <= min(self.board.m, self.board.n):
            raise BoardError(
                f"rank {self.r} outside [0, {min(self.board.m, self.board.n)}] "
                f"for a {self.board.m}x{self.board.n} board"
            )

    @property
    def size(self) -> int:
        return self.board.m * self.board.n


@dataclass(frozen=True)
class Subspace:
    """A row space given by its reduced row-echelon basis (pivot entries equal 1)."""

    basis: Tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def zero(cls) -> "Subspace":
        return cls(())


def _pivot(vector: Sequence[int]) -> int:
    for index, value in enumerate(vector):
        if value:
            return index
    return -1


def _axpy(field: FieldSpec, a: int, x: Sequence[int], y: Sequence[int]) -> List[int]:
    """y + a*x entrywise."""
    return [field.add(yi, field.mul(a, xi)) if xi else yi for xi, yi in zip(x, y)]


def reduce_vector(field: FieldSpec, space: Subspace, vector: Sequence[int]) -> List[int]:
    """Remainder of ``vector`` after clearing every pivot column of ``space``."""
    result = list(vector)
    for row in space.basis:
        p = _pivot(row)
        if result[p]:
            result = _axpy(field, field.neg(result[p]), row, result)
    return result


def extend_subspace(field: FieldSpec, space: Subspace, vector: Sequence[int]) -> Subspace:
    """
    Canonical basis of space + <vector>.

    ``vector`` must already be reduced against ``space`` and be nonzero.
    """
    p = _pivot(vector)
    if p < 0:
        return space
    scale = field.inv(vector[p])
    new_row = [field.mul(scale, v) for v in vector]
    rows = []
    for row in space.basis:
        if row[p]:
            row = _axpy(field, field.neg(row[p]), new_row, row)
        rows.append(tuple(row))
    rows.append(tuple(new_row))
    rows.sort(key=_pivot)
    return Subspace(tuple(rows))


def echelon(field: FieldSpec, vectors: Sequence[Sequence[int]]) -> Subspace:
    space = Subspace.zero()
    for vector in vectors:
        reduced = reduce_vector(field, space, vector)
        if any(reduced):
            space = extend_subspace(field, space, reduced)
    return space


def matrix_rank(field: FieldSpec, rows: Sequence[Sequence[int]]) -> int:
    return echelon(field, rows).dim


def _projective_points(field: FieldSpec, span: Subspace) -> List[Vector]:
    """
    One representative per 1-dimensional subspace of span.

    With basis U_1..U_t in echelon order, every line has a unique generator
    U_s + sum_{s' > s} c_{s'} U_{s'}.
    """
    points = []
    basis = span.basis
    width = len(basis[0]) if basis else 0
    for s, lead in enumerate(basis):
        tail = basis[s + 1:]
        for coefficients in itertools.product(range(field.order), repeat=len(tail)):
            vector = list(lead)
            for c, row in zip(coefficients, tail):
                if c:
                    vector = _axpy(field, c, row, vector)
            points.append(tuple(vector))
    logger.debug(f"{len(points)} projective points in a span of dimension {len(basis)} (width {width})")
    return points


def state_bound(n: int, r: int, q: int) -> int:
    """Number of subspaces of GF(q)^n of dimension at most r."""
    return sum(gaussian_binomial(n, d, q) for d in range(0, min(r, n) + 1))


def oracle_feasible(query: CountQuery, q: int, budget: Optional[int] = None) -> bool:
    board = _oriented(query.board)
    return state_bound(board.n, query.r, q) <= (budget or ORACLE_STATE_BUDGET)


def _oriented(board: Board) -> Board:
    # fewer columns means a smaller ambient space for the row spaces
    return board.transpose() if board.n > board.m else board


def count_at_q(query: CountQuery, field: FieldSpec, budget: Optional[int] = None) -> int:
    """
    Exact number of matrices over ``field`` with rank r and support off the board.

    Row i may only use its free coordinates F_i. For a current row space V,
    reducing the unit vectors of F_i modulo V spans a space U; a new row stays
    inside V in q^(|F_i| - dim U) ways and produces V + <u> for each line <u>
    of U in (q - 1) q^(|F_i| - dim U) ways.

    Raises:
        OracleBudgetExceeded: more echelon states than the budget allows.
    """
    board = _oriented(query.board)
    m, n, r = board.m, board.n, query.r
    q = field.order
    limit = budget or ORACLE_STATE_BUDGET
    bound = state_bound(n, r, q)
    if bound > limit:
        raise OracleBudgetExceeded(
            f"{m}x{n} board at rank {r} over GF({q}) may need {bound} states (budget {limit})"
        )

    states: Dict[Subspace, int] = {Subspace.zero(): 1}
    for i in range(1, m + 1):
        free = [j for j in range(1, n + 1) if (i, j) not in board.cells]
        remaining = m - i
        units = []
        for j in free:
            unit = [0] * n
            unit[j - 1] = 1
            units.append(unit)
        next_states: Dict[Subspace, int] = defaultdict(int)
        for space, ways in states.items():
            images = echelon(field, [reduce_vector(field, space, u) for u in units])
            stay = q ** (len(free) - images.dim)
            if space.dim + remaining >= r:
                next_states[space] += ways * stay
            if space.dim + 1 > r or not images.dim:
                continue
            grow = ways * stay * (q - 1)
            for point in _projective_points(field, images):
                next_states[extend_subspace(field, space, point)] += grow
        states = {s: w for s, w in next_states.items() if s.dim <= r and s.dim + remaining >= r}
        logger.debug(f"row {i}/{m}: {len(states)} states over GF({q})")

    return sum(ways for space, ways in states.items() if space.dim == r)


def naive_rank_distribution(board: Board, field: FieldSpec, free_limit: Optional[int] = None) -> Dict[int, int]:
    """
    Rank histogram of all matrices supported off the board, by enumeration.

    Raises:
        OracleBudgetExceeded: more free entries than ``free_limit``.
    """
    limit = NAIVE_FREE_LIMIT if free_limit is None else free_limit
    free = board.free_cells()
    if len(free) > limit:
        raise OracleBudgetExceeded(f"{len(free)} free entries exceed the naive limit {limit}")
    histogram: Dict[int, int] = defaultdict(int)
    for values in itertools.product(range(field.order), repeat=len(free)):
        rows = [[0] * board.n for _ in range(board.m)]
        for (i, j), value in zip(free, values):
            rows[i - 1][j - 1] = value
        histogram[matrix_rank(field, rows)] += 1
    return dict(histogram)


def naive_count(query: CountQuery, field: FieldSpec, free_limit: Optional[int] = None) -> int:
    return naive_rank_distribution(query.board, field, free_limit).get(query.r, 0)
