"""
Counting engine: closed forms, the reduction recursion and the dispatcher.

``count_auto`` answers a query with an exact polynomial in q whenever it can
and otherwise returns the exact per-q samples it gathered, together with any
parity-class fit found in them.
"""

import itertools
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .constants import (
    MEMOIZE_COUNTS,
    RANK1_MAX_ROWS,
    SAMPLE_PRIME_POWERS,
    VALIDATE_WITH_ORACLE,
    VALIDATION_Q,
)
from .diagram import Board, BoardError, ShapeSpec, build, is_NE, normalize
from .fields import FieldSpec, field_of_order
from .helpers import next_prime_power, parallel_map, prime_powers_from
from .logging_config import get_configured_logger
from .oracle import CountQuery, OracleBudgetExceeded, count_at_q, oracle_feasible
from .perms import Permutation, skew_shape_of_rothe
from .qpoly import (
    ONE,
    ZERO,
    InterpolationError,
    LaurentPoly,
    Q,
    Q_MINUS_1,
    QuasiFit,
    SampleTable,
    detect_quasi,
    interpolate,
    q_power,
)
from .reductions import ReductionTrace, reduce_any
from .rooks import NE, SE, qrook, rook_count

logger = get_configured_logger(__name__)

POLYNOMIAL = "polynomial"
SAMPLES = "samples"

FORMULA = "formula"
REDUCTION = "reduction"
INTERPOLATION = "oracle+interpolation"


class CongruenceError(ValueError):
    """(q - 1)^r fails to divide an exact count."""


class CountMismatch(ValueError):
    """A polynomial answer disagrees with the oracle."""


@dataclass
class CountResult:
    """Answer to a CountQuery: a polynomial, or exact samples when no fit was found."""

    query: CountQuery
    kind: str
    poly: Optional[LaurentPoly] = None
    samples: Optional[SampleTable] = None
    quasi: Optional[QuasiFit] = None
    provenance: str = FORMULA
    trace: Optional[Dict[str, object]] = None
    validated_at: Optional[int] = None

    @property
    def is_polynomial(self) -> bool:
        return self.kind == POLYNOMIAL


# -- closed forms ------------------------------------------------------------------

def count_rank1(m: int, n: int, board: Board) -> LaurentPoly:
    """
    Rank-one matrices off the board: sum over nonempty row sets T of
    (q^a(T) - 1)(q - 1)^(|T| - 1), a(T) the columns free in every row of T.

    Raises:
        BoardError: board size mismatch or too many rows to enumerate.
    """
    if (board.m, board.n) != (m, n):
        raise BoardError(f"board is {board.m}x{board.n}, expected {m}x{n}")
    if m > RANK1_MAX_ROWS and n <= RANK1_MAX_ROWS:
        board, m, n = board.transpose(), n, m
    if m > RANK1_MAX_ROWS:
        raise BoardError(f"rank-one sum over {m} rows exceeds the limit of {RANK1_MAX_ROWS}")
    blocked = [board.row(i) for i in range(1, m + 1)]
    by_shape: Dict[Tuple[int, int], int] = {}
    for size in range(1, m + 1):
        for rows in itertools.combinations(range(m), size):
            used = set().union(*(blocked[i] for i in rows))
            key = (n - len(used), size)
            by_shape[key] = by_shape.get(key, 0) + 1
    total = ZERO
    for (a, size), multiplicity in by_shape.items():
        total = total + multiplicity * (q_power(a) - ONE) * Q_MINUS_1 ** (size - 1)
    return total


def count_diag_rank1(n: int) -> LaurentPoly:
    """((2q - 1)^n - 2q^n + 1) / (q - 1)."""
    if n < 1:
        raise BoardError(f"n must be at least 1, got {n}")
    numerator = (2 * Q - ONE) ** n - 2 * q_power(n) + ONE
    return numerator.exact_div_linear(1)


def count_invertible(n: int) -> LaurentPoly:
    """(q^n - 1)(q^n - q)...(q^n - q^(n-1))."""
    if n < 1:
        raise BoardError(f"n must be at least 1, got {n}")
    result = ONE
    for i in range(n):
        result = result * (q_power(n) - q_power(i))
    return result


def count_support_in_NE(b: Board, r: int) -> LaurentPoly:
    """
    Rank-r matrices supported inside b, for b with the NE property:
    (q - 1)^r q^(#b - r) R_r^NE(b, 1/q).

    Raises:
        BoardError: b lacks the NE property or r is out of range.
    """
    if not is_NE(b):
        raise BoardError("support board does not have the NE property")
    if not 0 <= r <= min(b.m, b.n):
        raise BoardError(f"rank {r} outside [0, {min(b.m, b.n)}]")
    rook_part = qrook(b, r, NE).substitute_inverse()
    return Q_MINUS_1 ** r * q_power(len(b) - r) * rook_part


def count_support_in_straight(lam: Sequence[int], m: int, n: int, r: int) -> LaurentPoly:
    """
    Rank-r matrices supported inside the straight shape lam, through the SE
    q-rook number of the bottom-justified drawing:
    (q - 1)^r q^(|lam| - r) R_r^SE(S_lam flipped, 1/q).
    """
    spec = ShapeSpec(tuple(lam))
    board = build(spec, m, n).flip_rows()
    if not 0 <= r <= min(m, n):
        raise BoardError(f"rank {r} outside [0, {min(m, n)}]")
    rook_part = qrook(board, r, SE).substitute_inverse()
    return Q_MINUS_1 ** r * q_power(spec.lam_size - r) * rook_part


def count_rothe_skew_vexillary(w: Permutation, r: int) -> LaurentPoly:
    """
    Rank-r matrices with support off R_w for skew-vexillary w, through the
    skew shape that the complement of R_w rearranges to.

    Raises:
        PermutationError: w is not skew-vexillary.
    """
    spec = skew_shape_of_rothe(w)
    return count_support_in_NE(build(spec, w.n, w.n), r)


# -- congruence --------------------------------------------------------------------

def congruence_check(query: CountQuery, field: FieldSpec, budget: Optional[int] = None) -> bool:
    """
    count / (q - 1)^r agrees with the r-rook count on the free cells modulo q - 1.

    Raises:
        CongruenceError: (q - 1)^r does not divide the count.
    """
    q = field.order
    value = count_at_q(query, field, budget)
    divisor = (q - 1) ** query.r
    quotient, remainder = divmod(value, divisor)
    if remainder:
        raise CongruenceError(
            f"(q-1)^{query.r} = {divisor} does not divide {value} at q={q}"
        )
    rooks = rook_count(query.board.complement(), query.r)
    modulus = q - 1
    return quotient % modulus == rooks % modulus


# -- dispatcher --------------------------------------------------------------------

class _NeedsSamples(Exception):
    """Some subquery has no polynomial answer."""


class CountMemo:
    """Polynomial answers keyed by (normalized board, r); readers share, writers lock."""

    def __init__(self) -> None:
        self._values: Dict[Tuple[Board, int], LaurentPoly] = {}
        self._lock = threading.Lock()

    def get(self, board: Board, r: int) -> Optional[LaurentPoly]:
        return self._values.get((board, r))

    def put(self, board: Board, r: int, poly: LaurentPoly) -> None:
        with self._lock:
            self._values.setdefault((board, r), poly)

    def clear(self) -> None:
        with self._lock:
            self._values.clear()

    def __len__(self) -> int:
        return len(self._values)


_MEMO = CountMemo()


def clear_memo() -> None:
    _MEMO.clear()


def _base_case(board: Board, r: int) -> Optional[LaurentPoly]:
    if r < 0 or r > min(board.m, board.n):
        return ZERO
    if r == 0:
        return ONE
    if board.free_count == 0:
        return ZERO
    return None


def _closed_form(board: Board, r: int) -> Optional[LaurentPoly]:
    if r == 1 and min(board.m, board.n) <= RANK1_MAX_ROWS:
        return count_rank1(board.m, board.n, board)
    support = board.complement()
    if is_NE(support):
        return count_support_in_NE(support, r)
    return None


class _Engine:
    """One dispatch run; collects the provenance of the top-level answer."""

    def __init__(self, memo: Optional[CountMemo], cache, budget: Optional[int], sample_qs: List[int], threads: int):
        self.memo = memo
        self.cache = cache
        self.budget = budget
        self.sample_qs = sample_qs
        self.threads = threads
        self.sampled: List[int] = []

    def solve(self, board: Board, r: int) -> Tuple[LaurentPoly, str, Optional[ReductionTrace]]:
        base = _base_case(board, r)
        if base is not None:
            return base, FORMULA, None
        closed = _closed_form(board, r)
        if closed is not None:
            return closed, FORMULA, None

        key = normalize(board)
        if self.memo is not None:
            hit = self.memo.get(key, r)
            if hit is not None:
                logger.debug(f"memo hit for {key.m}x{key.n} board at rank {r}")
                return hit, REDUCTION, None
        if self.cache is not None:
            hit = self.cache.get(key, r)
            if hit is not None:
                return hit, REDUCTION, None

        closed = _closed_form(key, r)
        if closed is not None:
            return self._remember(key, r, closed), FORMULA, None

        trace = reduce_any(CountQuery(key, r))
        if trace is not None:
            poly = trace.total(lambda sub: self.solve(sub.board, sub.r)[0])
            if not poly.is_polynomial():
                raise CountMismatch(f"reduction produced negative exponents: {poly.pretty()}")
            return self._remember(key, r, poly), REDUCTION, trace

        samples = self.sample(key, r)
        try:
            poly = interpolate(samples, key.free_count)
        except InterpolationError as exc:
            logger.info(f"interpolation failed for {key.m}x{key.n} board at rank {r}: {exc}")
            raise _NeedsSamples() from exc
        return self._remember(key, r, poly), INTERPOLATION, None

    def _remember(self, board: Board, r: int, poly: LaurentPoly) -> LaurentPoly:
        if self.memo is not None:
            self.memo.put(board, r, poly)
        if self.cache is not None:
            self.cache.put(board, r, poly)
        return poly

    def sample(self, board: Board, r: int) -> SampleTable:
        """Oracle values at the first free_count + 2 feasible sample points."""
        query = CountQuery(board, r)
        needed = board.free_count + 2
        chosen = [q for q in self.sample_qs if oracle_feasible(query, q, self.budget)][:needed]
        if len(chosen) < needed:
            logger.warning(
                f"only {len(chosen)} of {needed} sample points fit the oracle budget "
                f"for a {board.m}x{board.n} board at rank {r}"
            )
        for q in chosen:
            if q not in self.sampled:
                self.sampled.append(q)
        values = parallel_map(_sample_at, [(board, r, q, self.budget) for q in chosen], self.threads)
        return SampleTable.from_pairs(zip(chosen, values))


def _sample_at(job: Tuple[Board, int, int, Optional[int]]) -> int:
    board, r, q, budget = job
    return count_at_q(CountQuery(board, r), field_of_order(q), budget)


def count_auto(
    query: CountQuery,
    budget: Optional[int] = None,
    sample_qs: Optional[Sequence[int]] = None,
    cache=None,
    threads: int = 1,
    validate: Optional[bool] = None,
    memoize: Optional[bool] = None,
) -> CountResult:
    """
    Dispatch a query to the cheapest exact method.

    Order: trivial cases; rank one; NE support; memoized reductions; oracle
    sampling with interpolation. Polynomial answers are checked against the
    oracle at one prime power when the budget allows.
    """
    qs = prime_powers_from(sample_qs) if sample_qs else list(SAMPLE_PRIME_POWERS)
    use_memo = MEMOIZE_COUNTS if memoize is None else memoize
    engine = _Engine(_MEMO if use_memo else None, cache, budget, qs, threads)
    board, r = query.board, query.r

    try:
        poly, provenance, trace = engine.solve(board, r)
    except _NeedsSamples:
        key = normalize(board)
        samples = engine.sample(key, r)
        quasi = None
        try:
            quasi = detect_quasi(samples, key.free_count)
        except InterpolationError as exc:
            logger.warning(f"no parity-class fit: {exc}")
        logger.info(f"{board.m}x{board.n} board at rank {r}: {len(samples)} samples, no polynomial")
        return CountResult(query, SAMPLES, samples=samples, quasi=quasi, provenance=INTERPOLATION)

    result = CountResult(
        query,
        POLYNOMIAL,
        poly=poly,
        provenance=provenance,
        trace=trace.summary() if trace is not None else None,
    )
    if VALIDATE_WITH_ORACLE if validate is None else validate:
        _validate(result, budget, engine.sampled)
    logger.info(f"{board.m}x{board.n} board at rank {r}: {provenance} -> {poly.pretty()}")
    return result


def validation_point(sampled: Sequence[int]) -> int:
    """VALIDATION_Q, or the first prime power past the sample points when it was sampled."""
    if VALIDATION_Q not in sampled:
        return VALIDATION_Q
    return next_prime_power(max(sampled))


def _validate(result: CountResult, budget: Optional[int], sampled: Sequence[int] = ()) -> None:
    query = result.query
    q = validation_point(sampled)
    if not oracle_feasible(query, q, budget):
        logger.debug(f"skipping oracle validation at q={q}: over budget")
        return
    try:
        expected = count_at_q(query, field_of_order(q), budget)
    except OracleBudgetExceeded:  # pragma: no cover
        return
    actual = result.poly.evaluate(q)
    if actual != expected:
        raise CountMismatch(f"polynomial {result.poly.pretty()} gives {actual} at q={q}, oracle gives {expected}")
    result.validated_at = q


def count_poly(board: Board, r: int, **kwargs) -> LaurentPoly:
    """Polynomial answer or InterpolationError."""
    result = count_auto(CountQuery(board, r), **kwargs)
    if not result.is_polynomial:
        raise InterpolationError(f"no polynomial found for a {board.m}x{board.n} board at rank {r}")
    return result.poly


def count_value(board: Board, r: int, q: int, budget: Optional[int] = None) -> int:
    """Oracle count at a single prime power."""
    return count_at_q(CountQuery(board, r), field_of_order(q), budget)
