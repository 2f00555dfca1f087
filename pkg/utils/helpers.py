# -*- coding: utf-8 -*-
"""
Small number-theoretic and execution helpers shared by the counting modules.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, TypeVar

from sympy import factorint, isprime

from .config import get_config

T = TypeVar("T")
R = TypeVar("R")


def prime_power_decomposition(q: int) -> Optional[Tuple[int, int]]:
    """
    Split q into (p, k) with q = p**k and p prime.

    Returns:
        The pair, or None when q is not a prime power.
    """
    if not isinstance(q, int) or q < 2:
        return None
    factors = factorint(q)
    if len(factors) != 1:
        return None
    ((p, k),) = factors.items()
    return int(p), int(k)


def is_prime_power(q: int) -> bool:
    return prime_power_decomposition(q) is not None


def next_prime_power(after: int) -> int:
    """Smallest prime power strictly greater than ``after``."""
    q = max(after, 1) + 1
    while not is_prime_power(q):
        q += 1
    return q


def is_prime(p: int) -> bool:
    return isinstance(p, int) and p >= 2 and bool(isprime(p))


def prime_powers_from(values: Iterable[int]) -> List[int]:
    """Validate a list of sample points, keeping order and dropping duplicates."""
    seen: List[int] = []
    for value in values:
        if not is_prime_power(value):
            raise ValueError(f"{value} is not a prime power")
        if value not in seen:
            seen.append(value)
    return seen


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """
    Number of k-dimensional subspaces of GF(q)^n.

    Computed with the integer recurrence [n,k] = [n-1,k-1] + q^k [n-1,k].
    """
    if k < 0 or k > n:
        return 0
    row = [1] + [0] * k
    for i in range(1, n + 1):
        for j in range(min(i, k), 0, -1):
            row[j] = row[j - 1] + q ** j * row[j]
    return row[k]


def resolve_threads(threads: Optional[int] = None) -> int:
    """Thread count: explicit value, then QMATRANK_THREADS / config, then all cores."""
    if threads is None:
        env_value = os.environ.get("QMATRANK_THREADS")
        if env_value:
            threads = int(env_value)
        else:
            threads = get_config("cli.threads")
    if not threads:
        threads = os.cpu_count() or 1
    if threads < 1:
        raise ValueError(f"threads must be at least 1, got {threads}")
    return threads


def parallel_map(func: Callable[[T], R], items: Sequence[T], threads: int = 1) -> List[R]:
    """
    Map func over items, in worker processes when threads > 1.

    Results keep the order of items, so reports stay deterministic.
    """
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * threads))))
