"""
Non-attacking rook placements and the SE / NE q-rook polynomials.
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterator, List

from .diagram import Board, BoardError, Cell, ShapeSpec, build
from .qpoly import ONE, ZERO, LaurentPoly, q_integer

SE = "SE"
NE = "NE"
CONVENTIONS = (SE, NE)


@dataclass(frozen=True)
class RookPlacement:
    """Rooks in pairwise distinct rows and columns."""

    cells: FrozenSet[Cell]

    def __post_init__(self) -> None:
        rows = [i for i, _ in self.cells]
        cols = [j for _, j in self.cells]
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise BoardError(f"rooks attack each other: {sorted(self.cells)}")

    def __len__(self) -> int:
        return len(self.cells)


def _check_rank(b: Board, r: int) -> None:
    if not 0 <= r <= min(b.m, b.n):
        raise BoardError(f"r={r} outside [0, {min(b.m, b.n)}] for a {b.m}x{b.n} board")


def placements(b: Board, r: int) -> Iterator[RookPlacement]:
    """
    Every placement of r non-attacking rooks on b, each exactly once.

    Backtracks over columns in increasing order; a column either stays empty
    or takes a rook in a free row.
    """
    _check_rank(b, r)
    columns = [sorted(b.col(j)) for j in range(1, b.n + 1)]
    chosen: List[Cell] = []
    used_rows = set()

    def extend(j: int, remaining: int) -> Iterator[RookPlacement]:
        if remaining == 0:
            yield RookPlacement(frozenset(chosen))
            return
        if b.n - j < remaining:
            return
        for i in columns[j]:
            if i in used_rows:
                continue
            used_rows.add(i)
            chosen.append((i, j + 1))
            yield from extend(j + 1, remaining - 1)
            chosen.pop()
            used_rows.discard(i)
        yield from extend(j + 1, remaining)

    yield from extend(0, r)


def rook_count(b: Board, r: int) -> int:
    return sum(1 for _ in placements(b, r))


def inversions(c: RookPlacement, b: Board, convention: str = SE) -> int:
    """
    Board cells neither occupied nor shadowed by a rook.

    SE: a rook shadows the cells below it in its column and right of it in its
    row. NE: the cells above it in its column and right of it in its row.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be SE or NE, got {convention!r}")
    if not c.cells <= b.cells:
        raise BoardError("placement uses cells outside the board")
    rook_in_col = {j: i for i, j in c.cells}
    rook_in_row = {i: j for i, j in c.cells}
    count = 0
    for i, j in b.cells:
        if (i, j) in c.cells:
            continue
        if i in rook_in_row and j > rook_in_row[i]:
            continue
        if j in rook_in_col:
            rook_row = rook_in_col[j]
            if convention == SE and i > rook_row:
                continue
            if convention == NE and i < rook_row:
                continue
        count += 1
    return count


def qrook(b: Board, r: int, convention: str = SE) -> LaurentPoly:
    """R_r(B, q): sum of q^inv over all r-rook placements."""
    totals = {}
    for placement in placements(b, r):
        k = inversions(placement, b, convention)
        totals[k] = totals.get(k, 0) + 1
    return LaurentPoly(totals)


def garsia_remmel(spec: ShapeSpec, n: int) -> LaurentPoly:
    """
    Product formula prod_{i=1..n} [lam_{n-i+1} - i + 1]_q for n rooks on S_lam.

    Factors with nonpositive argument vanish. The product counts SE
    inversions on the bottom-justified drawing of the shape, which equals the
    NE count on the usual top-justified drawing.
    """
    lam, _ = spec.padded(n)
    if any(x > n for x in lam):
        raise BoardError(f"lambda {spec.lam} does not fit in {n} columns")
    result = ONE
    for i in range(1, n + 1):
        factor = q_integer(lam[n - i] - i + 1)
        if factor.is_zero():
            return ZERO
        result = result * factor
    return result


def straight_board(spec: ShapeSpec, n: int, bottom_justified: bool = False) -> Board:
    """S_lam in an n x n grid, optionally drawn bottom-justified."""
    board = build(ShapeSpec(spec.lam), n, n)
    return board.flip_rows() if bottom_justified else board
