"""
Permutations: pattern containment, Rothe diagrams, left hulls, skew-vexillary
decompositions, strong Bruhat order and upper Poincaré polynomials.

Words are one-line notation w_1 ... w_n. Boards built here use rows for
positions and columns for values, so the entry of w in row i sits at (i, w_i).
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .constants import HULL_PATTERNS, MAX_PATTERN_N, MAX_POINCARE_N, SKEW_VEXILLARY_PATTERNS, VEXILLARY_PATTERN
from .diagram import Board, Cell, ShapeSpec
from .logging_config import get_configured_logger
from .qpoly import LaurentPoly

logger = get_configured_logger(__name__)


class PermutationError(ValueError):
    """Invalid word or unmet precondition on a permutation."""


@dataclass(frozen=True)
class Permutation:
    """A bijection of [n] in one-line notation."""

    word: Tuple[int, ...]

    def __post_init__(self) -> None:
        word = tuple(int(x) for x in self.word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise PermutationError(f"{list(word)} is not a permutation of [{len(word)}]")
        object.__setattr__(self, "word", word)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """
        Parse "41523" or, for n > 9, a comma separated word "10,3,1,2,...".
        """
        cleaned = "".join(text.split())
        if not cleaned:
            return cls(())
        try:
            if "," in cleaned:
                word = tuple(int(part) for part in cleaned.split(","))
            else:
                word = tuple(int(ch) for ch in cleaned)
        except ValueError:
            raise PermutationError(f"cannot parse permutation {text!r}") from None
        return cls(word)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        """w_0 = n n-1 ... 1."""
        return cls(tuple(range(n, 0, -1)))

    @property
    def n(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __str__(self) -> str:
        if self.n > 9:
            return ",".join(str(x) for x in self.word)
        return "".join(str(x) for x in self.word)

    # -- basics -------------------------------------------------------------

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for position, value in enumerate(self.word, start=1):
            inv[value - 1] = position
        return Permutation(tuple(inv))

    def reverse(self) -> "Permutation":
        return Permutation(tuple(reversed(self.word)))

    def complement(self) -> "Permutation":
        return Permutation(tuple(self.n + 1 - x for x in self.word))

    def reverse_complement(self) -> "Permutation":
        """v_i = n + 1 - w_{n+1-i}."""
        return Permutation(tuple(self.n + 1 - self.word[self.n - i] for i in range(1, self.n + 1)))

    def inversions(self) -> int:
        w = self.word
        return sum(1 for i in range(self.n) for j in range(i + 1, self.n) if w[i] > w[j])

    def left_to_right_maxima(self) -> List[int]:
        """Values w_i larger than every earlier entry."""
        maxima, best = [], 0
        for value in self.word:
            if value > best:
                maxima.append(value)
                best = value
        return maxima

    def compose(self, other: "Permutation") -> "Permutation":
        """(self * other)(i) = self(other(i))."""
        if other.n != self.n:
            raise PermutationError("cannot compose permutations of different sizes")
        return Permutation(tuple(self.word[x - 1] for x in other.word))

    def swap_positions(self, i: int, j: int) -> "Permutation":
        """Right multiplication by the transposition t_ij."""
        word = list(self.word)
        word[i - 1], word[j - 1] = word[j - 1], word[i - 1]
        return Permutation(tuple(word))

    def is_identity(self) -> bool:
        return all(value == i for i, value in enumerate(self.word, start=1))


def all_permutations(n: int) -> Iterator[Permutation]:
    """S_n in lexicographic order."""
    for word in itertools.permutations(range(1, n + 1)):
        yield Permutation(word)


def standardize(values: Sequence[int]) -> Tuple[int, ...]:
    """Order-isomorphic word on 1..len(values)."""
    ranks = {v: r for r, v in enumerate(sorted(values), start=1)}
    return tuple(ranks[v] for v in values)


def _as_word(p) -> Tuple[int, ...]:
    if isinstance(p, Permutation):
        return p.word
    if isinstance(p, str):
        return Permutation.parse(p).word
    return tuple(p)


# -- patterns ----------------------------------------------------------------

def contains(w, pattern) -> bool:
    """
    True iff some subsequence of w is order-isomorphic to pattern.

    Depth-first search over positions; each new value must sit in the same
    relative order to the already chosen values as in the pattern.
    """
    word = _as_word(w)
    pat = _as_word(pattern)
    k = len(pat)
    if k == 0:
        return True
    if k > len(word):
        return False
    if len(word) > MAX_PATTERN_N and k > 6:
        logger.debug(f"pattern search on a word of length {len(word)} may be slow")
    chosen: List[int] = []

    def fits(value: int, t: int) -> bool:
        for s in range(t):
            if (pat[s] < pat[t]) != (chosen[s] < value):
                return False
        return True

    def search(start: int, t: int) -> bool:
        if t == k:
            return True
        for position in range(start, len(word) - (k - t) + 1):
            value = word[position]
            if fits(value, t):
                chosen.append(value)
                if search(position + 1, t + 1):
                    return True
                chosen.pop()
        return False

    return search(0, 0)


def avoids_all(w, patterns: Iterable) -> bool:
    return not any(contains(w, p) for p in patterns)


def is_vexillary(w) -> bool:
    return not contains(w, VEXILLARY_PATTERN)


def is_skew_vexillary_patterns(w) -> bool:
    """Avoids 24153, 25143, 31524, 31542, 32514, 32541, 42153, 52143 and 214365."""
    return avoids_all(w, SKEW_VEXILLARY_PATTERNS)


def avoids_hull_patterns(w) -> bool:
    """Avoids 1324, 24153, 31524 and 426153."""
    return avoids_all(w, HULL_PATTERNS)


# -- diagrams ----------------------------------------------------------------

def rothe(w: Permutation) -> Board:
    """R_w = {(i, j) : w_i > j and w^{-1}_j > i}."""
    inv = w.inverse().word
    cells = {
        (i, j)
        for i in range(1, w.n + 1)
        for j in range(1, w.n + 1)
        if w.word[i - 1] > j and inv[j - 1] > i
    }
    return Board(w.n, w.n, frozenset(cells))


def permutation_cells(w: Permutation) -> List[Cell]:
    return [(i, value) for i, value in enumerate(w.word, start=1)]


def left_hull(w: Permutation) -> Board:
    """
    Smallest skew shape covering the cells (i, w_i).

    Union over non-inversions i < j (w_i < w_j) of the rectangles with rows
    i..j and columns w_i..w_j, together with the cells (i, w_i).
    """
    cells = set(permutation_cells(w))
    word = w.word
    for i in range(w.n):
        for j in range(i + 1, w.n):
            if word[i] < word[j]:
                for row in range(i + 1, j + 2):
                    for col in range(word[i], word[j] + 1):
                        cells.add((row, col))
    return Board(w.n, w.n, frozenset(cells))


def full_columns_of_complement(w: Permutation) -> List[int]:
    """Columns k entirely outside R_w; these are the left-to-right maxima of w."""
    board = rothe(w)
    return [k for k in range(1, w.n + 1) if not board.col(k)]


def full_rows_of_complement(w: Permutation) -> List[int]:
    """Rows k entirely outside R_w; these are the left-to-right maxima of w^{-1}."""
    board = rothe(w)
    return [k for k in range(1, w.n + 1) if not board.row(k)]


# -- skew-vexillary decomposition -------------------------------------------

@dataclass(frozen=True)
class SVDecomposition:
    """w = a_1..a_k b_1..b_{n-k} with every a below every b, both parts 2143-avoiding."""

    k: int
    prefix: Permutation
    suffix: Permutation


def sv_decompose(w: Permutation) -> Optional[SVDecomposition]:
    """Decomposition with the smallest valid split k, or None."""
    word = w.word
    for k in range(0, w.n + 1):
        if k and max(word[:k]) != k:
            continue
        prefix = Permutation(standardize(word[:k]))
        suffix = Permutation(standardize(word[k:]))
        if is_vexillary(prefix) and is_vexillary(suffix):
            return SVDecomposition(k, prefix, suffix)
    return None


def is_skew_vexillary(w: Permutation) -> bool:
    return sv_decompose(w) is not None


def _row_partition(board: Board) -> List[int]:
    counts = [len(board.row(i)) for i in range(1, board.m + 1)]
    return sorted((c for c in counts if c), reverse=True)


def skew_shape_of_rothe(w: Permutation) -> ShapeSpec:
    """
    The skew shape lam/mu(w) whose cells rearrange to the complement of R_w.

    The prefix block of the decomposition becomes the inner straight shape mu
    in the upper-left corner; the suffix block, rotated by 180 degrees, is
    removed from the lower-right corner to give lam.

    Raises:
        PermutationError: w is not skew-vexillary.
    """
    decomposition = sv_decompose(w)
    if decomposition is None:
        raise PermutationError(f"{w} is not skew-vexillary")
    n = w.n
    mu = _row_partition(rothe(decomposition.prefix))
    nu = _row_partition(rothe(decomposition.suffix))
    nu_padded = nu + [0] * (n - len(nu))
    lam = [n - nu_padded[n - i] for i in range(1, n + 1)]
    return ShapeSpec(tuple(lam), tuple(mu))


def construct_v(w: Permutation) -> Permutation:
    """
    Permutation v whose left hull has the same full rook placements as
    S_{lam/mu(w)}; the two boards are equal unless the shape has cells no
    placement can use (w = 3412 gives S_4422 against the hull S_4422/22).

    Rows 1..k (k the split of the decomposition) take the least value above
    mu_i not used yet; rows n down to k+1 take the largest value at most lam_i
    not used yet.

    Raises:
        PermutationError: w is not skew-vexillary.
    """
    decomposition = sv_decompose(w)
    if decomposition is None:
        raise PermutationError(f"{w} is not skew-vexillary")
    spec = skew_shape_of_rothe(w)
    n, k = w.n, decomposition.k
    values = [0] * n
    used = set()
    for i in range(1, k + 1):
        candidates = [x for x in range(spec.mu_part(i) + 1, n + 1) if x not in used]
        values[i - 1] = min(candidates)
        used.add(values[i - 1])
    for i in range(n, k, -1):
        candidates = [x for x in range(1, spec.lam_part(i) + 1) if x not in used]
        if not candidates:
            raise PermutationError(f"construction for {w} ran out of values at row {i}")
        values[i - 1] = max(candidates)
        used.add(values[i - 1])
    return Permutation(tuple(values))


def phi_map(w: Permutation) -> Dict[Cell, Cell]:
    """
    Injection from R_w into the complement of the left hull, for 1324-avoiding w.

    A cell with no entry of w strictly north-west of it maps to itself; any
    other cell (i, j) maps to (w^{-1}_j, w_i).

    Raises:
        PermutationError: w contains 1324.
    """
    if contains(w, "1324"):
        raise PermutationError(f"{w} contains 1324")
    inv = w.inverse().word
    mapping: Dict[Cell, Cell] = {}
    for i, j in rothe(w).sorted_cells():
        has_northwest = any(w.word[k - 1] < j for k in range(1, i))
        mapping[(i, j)] = (inv[j - 1], w.word[i - 1]) if has_northwest else (i, j)
    return mapping


# -- strong Bruhat order ------------------------------------------------------

def rank_matrix(w: Permutation) -> np.ndarray:
    """r[i, j] = #{a <= i : w_a >= j}, zero-indexed."""
    matrix = np.zeros((w.n, w.n), dtype=np.int16)
    for a, value in enumerate(w.word):
        matrix[a, value - 1] = 1
    by_rows = np.cumsum(matrix, axis=0)
    return np.flip(np.cumsum(np.flip(by_rows, axis=1), axis=1), axis=1)


def bruhat_leq(u: Permutation, w: Permutation) -> bool:
    """u precedes or equals w in strong Bruhat order (rank-matrix criterion)."""
    if u.n != w.n:
        raise PermutationError(f"size mismatch: {u} has {u.n} letters, {w} has {w.n}")
    return bool(np.all(rank_matrix(u) <= rank_matrix(w)))


def bruhat_covers(u: Permutation) -> List[Permutation]:
    """All u * t_ij with exactly one more inversion."""
    base = u.inversions()
    covers = []
    for i in range(1, u.n + 1):
        for j in range(i + 1, u.n + 1):
            candidate = u.swap_positions(i, j)
            if candidate.inversions() == base + 1:
                covers.append(candidate)
    return covers


@lru_cache(maxsize=8)
def _symmetric_group_data(n: int) -> Tuple[Tuple[Permutation, ...], np.ndarray, np.ndarray]:
    group = tuple(all_permutations(n))
    if n == 0:
        return group, np.zeros((1, 0, 0), dtype=np.int16), np.zeros(1, dtype=np.int64)
    stacked = np.stack([rank_matrix(u) for u in group])
    inversion_counts = np.array([u.inversions() for u in group], dtype=np.int64)
    return group, stacked, inversion_counts


def upper_interval(w: Permutation) -> List[Permutation]:
    """[w, w_0] in S_n."""
    _check_poincare_size(w.n)
    group, stacked, _ = _symmetric_group_data(w.n)
    if w.n == 0:
        return list(group)
    mask = np.all(stacked >= rank_matrix(w), axis=(1, 2))
    return [u for u, keep in zip(group, mask) if keep]


def poincare(w: Permutation) -> LaurentPoly:
    """P_w(q): sum of q^inv(u) over u succeeding w."""
    _check_poincare_size(w.n)
    group, stacked, inversion_counts = _symmetric_group_data(w.n)
    if w.n == 0:
        return LaurentPoly.constant(1)
    mask = np.all(stacked >= rank_matrix(w), axis=(1, 2))
    exponents, counts = np.unique(inversion_counts[mask], return_counts=True)
    return LaurentPoly({int(e): int(c) for e, c in zip(exponents, counts)})


def _check_poincare_size(n: int) -> None:
    if n > MAX_POINCARE_N:
        raise PermutationError(f"Poincaré polynomials are limited to n <= {MAX_POINCARE_N}, got {n}")


# -- symmetry ------------------------------------------------------------------

def symmetry_orbit(w: Permutation) -> List[Permutation]:
    """Orbit of w under inverse and reverse-complement, sorted by word."""
    orbit = {w}
    frontier = [w]
    while frontier:
        current = frontier.pop()
        for image in (current.inverse(), current.reverse_complement()):
            if image not in orbit:
                orbit.add(image)
                frontier.append(image)
    return sorted(orbit, key=lambda p: p.word)


def orbit_representative(w: Permutation) -> Permutation:
    return symmetry_orbit(w)[0]


def sum_components(w: Permutation) -> List[Permutation]:
    """Split w = u_1 (+) u_2 (+) ... into indecomposable blocks."""
    blocks, start, running_max = [], 0, 0
    for position, value in enumerate(w.word, start=1):
        running_max = max(running_max, value)
        if running_max == position:
            blocks.append(Permutation(standardize(w.word[start:position])))
            start = position
    return blocks


def is_decomposable(w: Permutation) -> bool:
    """Some proper nonempty prefix is {1..k}."""
    return len(sum_components(w)) > 1
