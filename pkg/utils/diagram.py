"""
Boards: cell subsets of an m x n grid, 1-indexed as (row, col).

A board usually plays the role of the forbidden set S (entries forced to be
zero); rook placements and the NE formula use it as the allowed set B. The
module also builds straight and skew shapes and recognises them.
"""

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

Cell = Tuple[int, int]


class BoardError(ValueError):
    """Malformed board, shape or index."""


@dataclass(frozen=True)
class ShapeSpec:
    """Partition lam with optional inner partition mu (skew shape lam/mu)."""

    lam: Tuple[int, ...]
    mu: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        lam = tuple(int(x) for x in self.lam)
        mu = tuple(int(x) for x in self.mu)
        for name, part in (("lambda", lam), ("mu", mu)):
            if any(x < 0 for x in part):
                raise BoardError(f"{name} has a negative part: {part}")
            if any(part[i] < part[i + 1] for i in range(len(part) - 1)):
                raise BoardError(f"{name} is not weakly decreasing: {part}")
        if len(mu) > len(lam) and any(mu[len(lam):]):
            raise BoardError(f"mu {mu} is longer than lambda {lam}")
        for i, x in enumerate(mu):
            if i < len(lam) and x > lam[i]:
                raise BoardError(f"mu {mu} is not contained in lambda {lam}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)

    @property
    def size(self) -> int:
        return sum(self.lam) - sum(self.mu)

    @property
    def lam_size(self) -> int:
        return sum(self.lam)

    @property
    def mu_size(self) -> int:
        return sum(self.mu)

    def mu_part(self, i: int) -> int:
        """mu_i, 1-indexed, zero past the end."""
        return self.mu[i - 1] if i - 1 < len(self.mu) else 0

    def lam_part(self, i: int) -> int:
        return self.lam[i - 1] if i - 1 < len(self.lam) else 0

    def padded(self, n: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return (
            tuple(self.lam_part(i) for i in range(1, n + 1)),
            tuple(self.mu_part(i) for i in range(1, n + 1)),
        )

    def __str__(self) -> str:
        lam = "".join(str(x) for x in self.lam) if all(x < 10 for x in self.lam) else ",".join(map(str, self.lam))
        if not any(self.mu):
            return lam
        mu = "".join(str(x) for x in self.mu) if all(x < 10 for x in self.mu) else ",".join(map(str, self.mu))
        return f"{lam}/{mu}"


@dataclass(frozen=True)
class Profiles:
    """Per-row and per-column counts of board cells and free (complement) cells."""

    row_cells: Tuple[int, ...]
    row_free: Tuple[int, ...]
    col_cells: Tuple[int, ...]
    col_free: Tuple[int, ...]


@dataclass(frozen=True)
class Board:
    """Immutable set of cells inside [m] x [n]."""

    m: int
    n: int
    cells: FrozenSet[Cell] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < 0:
            raise BoardError(f"board dimensions must be nonnegative, got {self.m}x{self.n}")
        cells = frozenset((int(i), int(j)) for i, j in self.cells)
        for i, j in cells:
            if not (1 <= i <= self.m and 1 <= j <= self.n):
                raise BoardError(f"cell ({i},{j}) outside {self.m}x{self.n} board")
        object.__setattr__(self, "cells", cells)

    # -- basic views --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell: object) -> bool:
        return cell in self.cells

    def sorted_cells(self) -> List[Cell]:
        return sorted(self.cells)

    def row(self, i: int) -> FrozenSet[int]:
        """Columns j with (i, j) on the board."""
        return frozenset(j for r, j in self.cells if r == i)

    def col(self, j: int) -> FrozenSet[int]:
        return frozenset(i for i, c in self.cells if c == j)

    def free_cells(self) -> List[Cell]:
        """Cells of the grid not on the board, row-major."""
        return [
            (i, j)
            for i in range(1, self.m + 1)
            for j in range(1, self.n + 1)
            if (i, j) not in self.cells
        ]

    @property
    def free_count(self) -> int:
        return self.m * self.n - len(self.cells)

    def to_matrix(self) -> np.ndarray:
        """0/1 matrix with 1 on board cells."""
        matrix = np.zeros((self.m, self.n), dtype=np.int8)
        for i, j in self.cells:
            matrix[i - 1, j - 1] = 1
        return matrix

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "Board":
        m, n = matrix.shape
        cells = {(int(i) + 1, int(j) + 1) for i, j in zip(*np.nonzero(matrix))}
        return cls(m, n, frozenset(cells))

    def render(self, on: str = "#", off: str = ".") -> str:
        """ASCII dump, one line per row."""
        return "\n".join(
            "".join(on if (i, j) in self.cells else off for j in range(1, self.n + 1))
            for i in range(1, self.m + 1)
        )

    # -- constructions ------------------------------------------------------

    def complement(self) -> "Board":
        return Board(self.m, self.n, frozenset(self.free_cells()))

    def transpose(self) -> "Board":
        return Board(self.n, self.m, frozenset((j, i) for i, j in self.cells))

    def flip_rows(self) -> "Board":
        """Reverse the row order (English drawing to French drawing)."""
        return Board(self.m, self.n, frozenset((self.m + 1 - i, j) for i, j in self.cells))

    def permute(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "Board":
        """
        Move row i to row_perm[i-1] and column j to col_perm[j-1].

        Raises:
            BoardError: when either sequence is not a permutation of the right size.
        """
        if sorted(row_perm) != list(range(1, self.m + 1)):
            raise BoardError(f"row permutation {list(row_perm)} is not a permutation of [{self.m}]")
        if sorted(col_perm) != list(range(1, self.n + 1)):
            raise BoardError(f"column permutation {list(col_perm)} is not a permutation of [{self.n}]")
        return Board(
            self.m,
            self.n,
            frozenset((row_perm[i - 1], col_perm[j - 1]) for i, j in self.cells),
        )

    def delete_row(self, index: int) -> "Board":
        if not 1 <= index <= self.m:
            raise BoardError(f"row {index} outside [1, {self.m}]")
        return Board(
            self.m - 1,
            self.n,
            frozenset((i if i < index else i - 1, j) for i, j in self.cells if i != index),
        )

    def delete_col(self, index: int) -> "Board":
        if not 1 <= index <= self.n:
            raise BoardError(f"column {index} outside [1, {self.n}]")
        return Board(
            self.m,
            self.n - 1,
            frozenset((i, j if j < index else j - 1) for i, j in self.cells if j != index),
        )

    def restrict(self, m: int, n: int) -> "Board":
        """Top-left m x n corner."""
        if not (0 <= m <= self.m and 0 <= n <= self.n):
            raise BoardError(f"cannot restrict {self.m}x{self.n} board to {m}x{n}")
        return Board(m, n, frozenset((i, j) for i, j in self.cells if i <= m and j <= n))

    def with_cells(self, extra: Iterable[Cell]) -> "Board":
        return Board(self.m, self.n, self.cells | frozenset(extra))

    # -- profiles -----------------------------------------------------------

    def profiles(self) -> Profiles:
        rows = [0] * self.m
        cols = [0] * self.n
        for i, j in self.cells:
            rows[i - 1] += 1
            cols[j - 1] += 1
        return Profiles(
            row_cells=tuple(rows),
            row_free=tuple(self.n - c for c in rows),
            col_cells=tuple(cols),
            col_free=tuple(self.m - c for c in cols),
        )


def build(spec: ShapeSpec, m: int, n: Optional[int] = None) -> Board:
    """
    Cells of S_lam minus S_mu inside an m x n grid (n defaults to m).

    Raises:
        BoardError: when the shape does not fit.
    """
    n = m if n is None else n
    if len(spec.lam) > m and any(spec.lam[m:]):
        raise BoardError(f"lambda {spec.lam} has more than {m} nonzero rows")
    if spec.lam and spec.lam[0] > n:
        raise BoardError(f"lambda {spec.lam} has a row longer than {n}")
    cells = {
        (i, j)
        for i in range(1, m + 1)
        for j in range(spec.mu_part(i) + 1, spec.lam_part(i) + 1)
    }
    return Board(m, n, frozenset(cells))


def from_cells(m: int, n: int, cells: Iterable[Cell]) -> Board:
    return Board(m, n, frozenset(cells))


# -- predicates -------------------------------------------------------------

def is_NE(b: Board) -> bool:
    """
    North-East property: (i,j), (i',j), (i,j') on the board with i' < i and
    j < j' force (i',j') onto the board.
    """
    for i, j in b.cells:
        above = [r for r in b.col(j) if r < i]
        if not above:
            continue
        right = [c for c in b.row(i) if c > j]
        for r in above:
            for c in right:
                if (r, c) not in b.cells:
                    return False
    return True


def is_Le(b: Board) -> bool:
    """(i,j), (k,l) on the board with i > k and j < l force (k,j) onto the board."""
    cells = list(b.cells)
    for i, j in cells:
        for k, l in cells:
            if i > k and j < l and (k, j) not in b.cells:
                return False
    return True


def is_straight_up_to_perm(b: Board) -> bool:
    """True when the row sets are pairwise nested, i.e. rows and columns can be
    rearranged into a Young diagram."""
    rows = sorted((b.row(i) for i in range(1, b.m + 1)), key=len)
    return all(rows[k] <= rows[k + 1] for k in range(len(rows) - 1))


def skew_shape_of(b: Board) -> Optional[ShapeSpec]:
    """
    Read b as S_lam minus S_mu, or return None.

    Each nonempty row must be a contiguous interval. An empty row is given
    lam_i = mu_i equal to lam of the row below it, which is the least value
    compatible with both partitions decreasing.
    """
    lam = [0] * b.m
    mu = [0] * b.m
    below = 0
    for i in range(b.m, 0, -1):
        cols = sorted(b.row(i))
        if not cols:
            lam[i - 1] = mu[i - 1] = below
        else:
            if cols[-1] - cols[0] + 1 != len(cols):
                return None
            lam[i - 1] = cols[-1]
            mu[i - 1] = cols[0] - 1
        below = lam[i - 1]
    for i in range(b.m - 1):
        if lam[i] < lam[i + 1] or mu[i] < mu[i + 1]:
            return None
    while lam and lam[-1] == 0:
        lam.pop()
    mu = mu[: len(lam)]
    while mu and mu[-1] == 0:
        mu.pop()
    return ShapeSpec(tuple(lam), tuple(mu))


def is_skew_shape(b: Board) -> bool:
    return skew_shape_of(b) is not None


def is_nonoverlapping_skew(b: Board, spec: ShapeSpec) -> bool:
    """
    True when no row or column holds both a cell of S_mu and a cell outside S_lam.

    Raises:
        BoardError: when spec does not describe b.
    """
    if build(spec, b.m, b.n) != b:
        raise BoardError(f"shape {spec} does not match the given board")
    mu_cells = build(ShapeSpec(spec.mu), b.m, b.n).cells if any(spec.mu) else frozenset()
    outside = build(ShapeSpec(spec.lam), b.m, b.n).complement().cells
    mu_rows = {i for i, _ in mu_cells}
    mu_cols = {j for _, j in mu_cells}
    return not any(i in mu_rows or j in mu_cols for i, j in outside)


def normalize(b: Board) -> Board:
    """
    Deterministic representative under row and column sorting.

    Rows, then columns, are sorted by their 0/1 characteristic vectors in
    decreasing order until nothing moves, which ends at a doubly lexical
    ordering. Only permutations are applied, so every count is preserved;
    the result is not a full canonical form.
    """
    matrix = b.to_matrix()
    identity_rows, identity_cols = list(range(b.m)), list(range(b.n))
    while True:
        row_order = sorted(range(b.m), key=lambda r: tuple(matrix[r]), reverse=True)
        matrix = matrix[row_order, :]
        col_order = sorted(range(b.n), key=lambda c: tuple(matrix[:, c]), reverse=True)
        matrix = matrix[:, col_order]
        if row_order == identity_rows and col_order == identity_cols:
            break
    return Board.from_matrix(matrix)


# Free cells of each row of the 7 x 7 incidence board of the Fano plane.
FANO_FREE_ROWS = (
    (1, 2, 7), (1, 3, 6), (1, 4, 5), (2, 3, 5), (2, 4, 6), (3, 4, 7), (5, 6, 7),
)


def fano_board() -> Board:
    """Four forbidden and three free cells in every row and column."""
    free = {(i, j) for i, row in enumerate(FANO_FREE_ROWS, start=1) for j in row}
    return Board(7, 7, frozenset(free)).complement()
