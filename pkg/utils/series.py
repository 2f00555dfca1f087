"""
Truncated ordinary generating series for vexillary and skew-vexillary
permutations, with direct counts to check them against.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .constants import MAX_SERIES_N, SKEW_VEXILLARY_PATTERNS, VEXILLARY_PATTERN
from .logging_config import get_configured_logger
from .perms import (
    Permutation,
    all_permutations,
    avoids_all,
    contains,
    is_decomposable,
    standardize,
    sum_components,
    sv_decompose,
)

logger = get_configured_logger(__name__)


class SeriesError(ValueError):
    """Series prefix too short or size cap exceeded."""


@dataclass(frozen=True)
class SeriesPrefix:
    """Coefficients c_0, c_1, ..., c_N of a power series in x."""

    coeffs: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def to_list(self) -> List[int]:
        return list(self.coeffs)


def _mul(a: Sequence[int], b: Sequence[int], length: int) -> List[int]:
    out = [0] * length
    for i, x in enumerate(a[:length]):
        if x:
            for j, y in enumerate(b[: length - i]):
                out[i + j] += x * y
    return out


def _one_minus_x(a: Sequence[int]) -> List[int]:
    return [a[n] - (a[n - 1] if n else 0) for n in range(len(a))]


def _normalize_patterns(patterns: Iterable) -> List[Tuple[int, ...]]:
    words = []
    for p in patterns:
        word = Permutation.parse(p).word if isinstance(p, str) else tuple(p)
        words.append(tuple(standardize(word)))
    return words


def avoiders(patterns: Iterable, n: int) -> List[Permutation]:
    """
    Permutations of [n] avoiding every pattern, built by inserting the
    largest letter into avoiders of length n - 1 and filtering.
    """
    pats = _normalize_patterns(patterns)
    level: List[Tuple[int, ...]] = [()]
    for size in range(1, n + 1):
        grown = []
        for word in level:
            for slot in range(size):
                candidate = word[:slot] + (size,) + word[slot:]
                if not any(contains(candidate, p) for p in pats if len(p) <= size):
                    grown.append(candidate)
        level = grown
    return [Permutation(w) for w in sorted(level)]


def count_avoiders(patterns: Iterable, n: int) -> int:
    """
    Raises:
        SeriesError: n above the configured cap.
    """
    if n > MAX_SERIES_N:
        raise SeriesError(f"exhaustive scan limited to n <= {MAX_SERIES_N}, got {n}")
    if n < 0:
        raise SeriesError(f"n must be nonnegative, got {n}")
    return len(avoiders(patterns, n))


def vexillary_prefix(length: int) -> SeriesPrefix:
    """V_0 .. V_{length-1} by direct count."""
    return SeriesPrefix(tuple(count_avoiders([VEXILLARY_PATTERN], n) for n in range(length)))


def skew_vexillary_prefix(length: int) -> SeriesPrefix:
    return SeriesPrefix(tuple(count_avoiders(SKEW_VEXILLARY_PATTERNS, n) for n in range(length)))


def i_from_v(v: SeriesPrefix) -> SeriesPrefix:
    """I(x) = (1 - x)^2 V(x) + x - 1."""
    if len(v) < 1:
        raise SeriesError("empty V prefix")
    coeffs = _one_minus_x(_one_minus_x(v.coeffs))
    coeffs[0] -= 1
    if len(coeffs) > 1:
        coeffs[1] += 1
    return SeriesPrefix(tuple(coeffs))


def sv_from_v(v: SeriesPrefix) -> SeriesPrefix:
    """SV(x) = (1 - x) V(x)^2 - V(x) + 1/(1 - x), truncated to the length of V."""
    length = len(v)
    if length < 1:
        raise SeriesError("empty V prefix")
    squared = _one_minus_x(_mul(v.coeffs, v.coeffs, length))
    coeffs = [squared[n] - v[n] + 1 for n in range(length)]
    return SeriesPrefix(tuple(coeffs))


def count_indecomposable_vexillary(n: int) -> int:
    """Indecomposable vexillary permutations of size n >= 2; a single letter belongs to the identity part."""
    if n < 2:
        return 0
    return sum(1 for w in avoiders([VEXILLARY_PATTERN], n) if not is_decomposable(w))


def identity_sum_form(w: Permutation) -> Optional[Tuple[int, Permutation, int]]:
    """
    Write w = id_i (+) u (+) id_k with u indecomposable (empty u for the identity).

    Returns:
        (i, u, k), or None when w has two or more nontrivial components.
    """
    blocks = sum_components(w)
    nontrivial = [index for index, block in enumerate(blocks) if block.n > 1]
    if not nontrivial:
        return w.n, Permutation(()), 0
    if len(nontrivial) > 1:
        return None
    index = nontrivial[0]
    return index, blocks[index], len(blocks) - index - 1


def series_report(length: int) -> dict:
    """The three prefixes with direct counts alongside."""
    if length - 1 > MAX_SERIES_N:
        raise SeriesError(f"series prefixes limited to n <= {MAX_SERIES_N}, got {length - 1}")
    v = vexillary_prefix(length)
    i = i_from_v(v)
    sv = sv_from_v(v)
    direct_sv = skew_vexillary_prefix(length)
    logger.info(f"series prefixes to n={length - 1}; SV agrees with direct count: {sv == direct_sv}")
    return {
        "V": v.to_list(),
        "I": i.to_list(),
        "SV": sv.to_list(),
        "SV_direct": direct_sv.to_list(),
        "agree": sv == direct_sv,
    }


def skew_vexillary_by_decomposition(n: int) -> int:
    """Number of w in S_n with a valid prefix/suffix split into 2143-avoiders."""
    return sum(1 for w in all_permutations(n) if sv_decompose(w) is not None)


def skew_vexillary_by_patterns(n: int) -> int:
    return sum(1 for w in all_permutations(n) if avoids_all(w, SKEW_VEXILLARY_PATTERNS))
