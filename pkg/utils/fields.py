"""
Arithmetic in GF(p^k) for the small prime powers used by the counting oracle.

Elements are handled internally as integers ``sum(d_i * p**i)`` built from the
base-p digit vector (low degree first); ``FieldElement`` wraps the digit vector
for the public arithmetic API. Multiplication goes through discrete log tables
built from a primitive element, so every operation is a table lookup.
"""

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import List, Optional, Sequence, Tuple

from sympy import factorint
from sympy.polys import galoistools as gf
from sympy.polys.domains import ZZ

from .constants import FIELD_TABLE_LIMIT, MAX_FIELD_ORDER
from .helpers import is_prime, prime_power_decomposition
from .logging_config import get_configured_logger

logger = get_configured_logger(__name__)


class FieldError(ValueError):
    """Invalid field parameters or element operation."""


def _to_gf(digits: Sequence[int]) -> list:
    """Low-first digits to a galoistools dense polynomial (high-first, stripped)."""
    return gf.gf_strip([ZZ(int(d)) for d in reversed(digits)])


def _from_gf(poly: list, k: int) -> Tuple[int, ...]:
    digits = [int(c) for c in reversed(poly)]
    return tuple(digits + [0] * (k - len(digits)))


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """
    Exhaustive factor check: no monic polynomial of degree 1..k//2 divides it.

    ``modulus`` is low-first and monic of degree k.
    """
    k = len(modulus) - 1
    target = _to_gf(modulus)
    for degree in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=degree):
            divisor = [ZZ(1)] + [ZZ(c) for c in tail]
            if not gf.gf_rem(target, divisor, p, ZZ):
                return False
    return True


def least_irreducible(p: int, k: int) -> Tuple[int, ...]:
    """
    Lexicographically least monic irreducible of degree k over Z_p.

    Candidates are compared on (c_{k-1}, ..., c_0); the result is low-first
    with the leading 1 included.
    """
    for high_first in itertools.product(range(p), repeat=k):
        modulus = tuple(reversed(high_first)) + (1,)
        if _is_irreducible(modulus, p):
            return modulus
    raise FieldError(f"No irreducible polynomial of degree {k} over GF({p})")  # pragma: no cover


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p^k) given by its base-p digits, lowest degree first."""

    digits: Tuple[int, ...]

    def index(self, p: int) -> int:
        return sum(d * p ** i for i, d in enumerate(self.digits))

    def __str__(self) -> str:
        return "[" + ",".join(str(d) for d in self.digits) + "]"


@dataclass(frozen=True)
class FieldSpec:
    """
    GF(p^k) defined by a monic irreducible modulus (low-first coefficients).

    Instances are immutable; lookup tables are built lazily on first use.
    """

    p: int
    k: int
    modulus: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise FieldError(f"p must be prime, got {self.p}")
        if self.k < 1:
            raise FieldError(f"k must be at least 1, got {self.k}")
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {self.k}, got {self.modulus}")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise FieldError(f"modulus coefficients must lie in [0, {self.p})")
        if self.k > 1 and not _is_irreducible(self.modulus, self.p):
            raise FieldError(f"modulus {self.modulus} is reducible over GF({self.p})")

    @property
    def order(self) -> int:
        return self.p ** self.k

    def __str__(self) -> str:
        return f"GF({self.order})"

    # -- encoding -----------------------------------------------------------

    def digits_of(self, index: int) -> Tuple[int, ...]:
        digits = []
        for _ in range(self.k):
            index, d = divmod(index, self.p)
            digits.append(d)
        return tuple(digits)

    def element(self, index: int) -> FieldElement:
        if not 0 <= index < self.order:
            raise FieldError(f"index {index} outside {self}")
        return FieldElement(self.digits_of(index))

    def index_of(self, a: FieldElement) -> int:
        if len(a.digits) != self.k or any(not 0 <= d < self.p for d in a.digits):
            raise FieldError(f"{a} is not an element of {self}")
        return a.index(self.p)

    # -- tables -------------------------------------------------------------

    def _mul_slow(self, a: int, b: int) -> int:
        product = gf.gf_rem(
            gf.gf_mul(_to_gf(self.digits_of(a)), _to_gf(self.digits_of(b)), self.p, ZZ),
            _to_gf(self.modulus),
            self.p,
            ZZ,
        )
        return sum(d * self.p ** i for i, d in enumerate(_from_gf(product, self.k)))

    def _pow_slow(self, a: int, exponent: int) -> int:
        result, base = 1, a
        while exponent:
            if exponent & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            exponent >>= 1
        return result

    @cached_property
    def primitive_element(self) -> int:
        """Smallest index generating the multiplicative group."""
        group_order = self.order - 1
        if group_order == 1:
            return 1
        prime_factors = list(factorint(group_order))
        for candidate in range(2, self.order):
            if all(self._pow_slow(candidate, group_order // ell) != 1 for ell in prime_factors):
                return candidate
        raise FieldError(f"no primitive element found in {self}")  # pragma: no cover

    @cached_property
    def _log_tables(self) -> Tuple[List[int], List[int]]:
        q = self.order
        exp = [0] * (q - 1)
        log = [0] * q
        g = self.primitive_element
        value = 1
        for i in range(q - 1):
            exp[i] = value
            log[value] = i
            value = self._mul_slow(value, g) if self.k > 1 else value * g % self.p
        logger.debug(f"Built log tables for {self} with generator index {g}")
        return exp, log

    @cached_property
    def _add_table(self) -> Optional[List[List[int]]]:
        if self.k == 1 or self.order > FIELD_TABLE_LIMIT:
            return None
        return [[self._add_digits(a, b) for b in range(self.order)] for a in range(self.order)]

    def _add_digits(self, a: int, b: int) -> int:
        total, place = 0, 1
        for _ in range(self.k):
            a, da = divmod(a, self.p)
            b, db = divmod(b, self.p)
            total += ((da + db) % self.p) * place
            place *= self.p
        return total

    # -- integer-index arithmetic (hot path for the oracle) -----------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        table = self._add_table
        return table[a][b] if table is not None else self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        total, place = 0, 1
        for _ in range(self.k):
            a, d = divmod(a, self.p)
            total += (-d % self.p) * place
            place *= self.p
        return total

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        exp, log = self._log_tables
        return exp[(log[a] + log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError(f"0 has no inverse in {self}")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._log_tables
        return exp[-log[a] % (self.order - 1)]

    def power(self, a: int, exponent: int) -> int:
        if a == 0:
            return 0 if exponent > 0 else 1
        if self.k == 1:
            return pow(a, exponent, self.p)
        exp, log = self._log_tables
        return exp[log[a] * exponent % (self.order - 1)]


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldSpec:
    """
    Build GF(p^k) with the lexicographically least monic irreducible modulus.

    Raises:
        FieldError: p not prime, k < 1, or p^k above the configured maximum.
    """
    if not is_prime(p):
        raise FieldError(f"p must be prime, got {p}")
    if k < 1:
        raise FieldError(f"k must be at least 1, got {k}")
    if p ** k > MAX_FIELD_ORDER:
        raise FieldError(f"field order {p}^{k} exceeds the maximum {MAX_FIELD_ORDER}")
    modulus = least_irreducible(p, k) if k > 1 else (0, 1)
    field = FieldSpec(p, k, modulus)
    logger.debug(f"Constructed {field} with modulus {modulus}")
    return field


def field_of_order(q: int) -> FieldSpec:
    """Field with q elements, q a prime power."""
    decomposition = prime_power_decomposition(q)
    if decomposition is None:
        raise FieldError(f"{q} is not a prime power")
    return make_field(*decomposition)


def arith(field: FieldSpec, op: str, a: FieldElement, b: Optional[FieldElement] = None) -> FieldElement:
    """
    Apply one of add, sub, mul, neg, inv to field elements.

    Raises:
        FieldError: unknown op, missing operand, foreign element or inv(0).
    """
    x = field.index_of(a)
    if op in ("neg", "inv"):
        result = field.neg(x) if op == "neg" else field.inv(x)
        return field.element(result)
    if b is None:
        raise FieldError(f"operation {op!r} needs two operands")
    y = field.index_of(b)
    if op == "add":
        return field.element(field.add(x, y))
    if op == "sub":
        return field.element(field.sub(x, y))
    if op == "mul":
        return field.element(field.mul(x, y))
    raise FieldError(f"unknown field operation {op!r}")


def elements(field: FieldSpec) -> List[FieldElement]:
    """All elements by increasing index: 0 first, then 1."""
    return [field.element(i) for i in range(field.order)]
