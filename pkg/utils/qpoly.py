"""
Exact integer Laurent polynomials in q, interpolation from per-q samples, and
parity quasi-polynomial detection.

Everything is exact: integer coefficients, ``fractions.Fraction`` wherever a
negative exponent shows up, and sympy rationals for interpolation.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import Integer, Poly, Symbol
from sympy.polys.polyfuncs import interpolate as sympy_interpolate

Number = Union[int, Fraction]

_q = Symbol("q")


class InterpolationError(ValueError):
    """Samples do not determine an integer polynomial within the degree bound."""


class LaurentPoly:
    """
    Immutable integer-coefficient polynomial in q and q^-1.

    Stored as a sorted tuple of (exponent, coefficient) pairs with no zero
    coefficients, so equality and hashing are structural.
    """

    __slots__ = ("_terms",)

    def __init__(self, coeffs: Optional[Mapping[int, int]] = None):
        items = {}
        for exponent, coefficient in (coeffs or {}).items():
            coefficient = int(coefficient)
            if coefficient:
                items[int(exponent)] = items.get(int(exponent), 0) + coefficient
        self._terms: Tuple[Tuple[int, int], ...] = tuple(
            sorted((e, c) for e, c in items.items() if c)
        )

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[int], lowest: int = 0) -> "LaurentPoly":
        """Coefficients listed from exponent ``lowest`` upwards."""
        return cls({lowest + i: c for i, c in enumerate(coefficients)})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Tuple[Tuple[int, int], ...]:
        return self._terms

    def coeffs(self) -> Dict[int, int]:
        return dict(self._terms)

    def coefficient(self, exponent: int) -> int:
        return dict(self._terms).get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> Optional[int]:
        return self._terms[-1][0] if self._terms else None

    @property
    def low_degree(self) -> Optional[int]:
        return self._terms[0][0] if self._terms else None

    def is_polynomial(self) -> bool:
        """True when no negative exponent survives."""
        return not self._terms or self._terms[0][0] >= 0

    def nonnegative(self) -> bool:
        return all(c >= 0 for _, c in self._terms)

    def dominated_by(self, other: "LaurentPoly") -> bool:
        """Coefficient-wise self <= other."""
        return (other - self).nonnegative()

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        total = dict(self._terms)
        for e, c in other._terms:
            total[e] = total.get(e, 0) + c
        return LaurentPoly(total)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms})

    def __sub__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> "LaurentPoly":
        return LaurentPoly.constant(other) - self

    def __mul__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        product: Dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                product[e1 + e2] = product.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if exponent < 0:
            if len(self._terms) != 1 or abs(self._terms[0][1]) != 1:
                raise ValueError("only unit monomials have negative powers")
            e, c = self._terms[0]
            return LaurentPoly({e * exponent: c ** abs(exponent)})
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        return LaurentPoly({e + k: c for e, c in self._terms})

    def substitute_inverse(self) -> "LaurentPoly":
        """The polynomial in q^-1: p(q) -> p(1/q)."""
        return LaurentPoly({-e: c for e, c in self._terms})

    def evaluate(self, q: Number) -> Number:
        """Exact value at q; a Fraction only when a negative exponent needs one."""
        total: Number = 0
        for e, c in self._terms:
            total += c * (q ** e if e >= 0 else Fraction(1, q ** -e))
        if isinstance(total, Fraction) and total.denominator == 1:
            return int(total)
        return total

    def divmod_linear(self, root: int) -> Tuple["LaurentPoly", int]:
        """
        Synthetic division of a polynomial by (q - root).

        Returns:
            (quotient, remainder)
        """
        if not self.is_polynomial():
            raise ValueError("synthetic division needs an ordinary polynomial")
        if self.is_zero():
            return ZERO, 0
        top = self.degree
        dense = [self.coefficient(e) for e in range(top, -1, -1)]
        quotient: List[int] = []
        carry = 0
        for c in dense:
            carry = carry * root + c
            quotient.append(carry)
        remainder = quotient.pop()
        return LaurentPoly.from_coefficients(list(reversed(quotient))), remainder

    def exact_div_linear(self, root: int) -> "LaurentPoly":
        quotient, remainder = self.divmod_linear(root)
        if remainder:
            raise ValueError(f"q - {root} does not divide {self.pretty()}")
        return quotient

    # -- dunder plumbing ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.pretty()})"

    def __str__(self) -> str:
        return self.pretty()

    # -- rendering ----------------------------------------------------------

    def pretty(self, var: str = "q") -> str:
        """Descending-exponent text such as ``q^7+2*q^6-1``."""
        if not self._terms:
            return "0"
        pieces = []
        for e, c in reversed(self._terms):
            magnitude = abs(c)
            if e == 0:
                body = str(magnitude)
            else:
                power = var if e == 1 else f"{var}^{e}" if e > 0 else f"{var}^({e})"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += sign + body
        return text

    def to_json(self) -> Dict[str, str]:
        """{"exponent": "coefficient"} with decimal strings for both."""
        return {str(e): str(c) for e, c in self._terms}

    @classmethod
    def from_json(cls, data: Mapping[str, Union[str, int]]) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data.items()})


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
Q = LaurentPoly.monomial(1)
Q_MINUS_1 = LaurentPoly({1: 1, 0: -1})


def q_power(k: int) -> LaurentPoly:
    return LaurentPoly.monomial(k)


def q_integer(m: int) -> LaurentPoly:
    """[m]_q = 1 + q + ... + q^(m-1); zero for m <= 0."""
    return LaurentPoly({i: 1 for i in range(max(m, 0))})


def q_factorial(n: int) -> LaurentPoly:
    result = ONE
    for i in range(1, n + 1):
        result = result * q_integer(i)
    return result


def poly_arith(op: str, a: LaurentPoly, b: Union[LaurentPoly, int]) -> Union[LaurentPoly, Number]:
    """Dispatch for add, sub, mul, shift_by_power and eval_at_integer."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "shift_by_power":
        return a.shift(int(b))  # type: ignore[arg-type]
    if op == "eval_at_integer":
        return a.evaluate(int(b))  # type: ignore[arg-type]
    raise ValueError(f"unknown polynomial operation {op!r}")


def factor_qminus1(p: LaurentPoly) -> Tuple[int, LaurentPoly]:
    """
    Extract the largest power of (q - 1).

    Negative exponents are handled by factoring the q-shifted polynomial and
    shifting back, so the returned quotient is again a Laurent polynomial.

    Returns:
        (e, quotient) with p = (q-1)^e * quotient and quotient(1) != 0.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    offset = p.low_degree if p.low_degree < 0 else 0
    current = p.shift(-offset)
    e = 0
    while True:
        quotient, remainder = current.divmod_linear(1)
        if remainder:
            break
        current = quotient
        e += 1
    return e, current.shift(offset)


def factor_qpower(p: LaurentPoly) -> Tuple[int, LaurentPoly]:
    """Extract q^k with k the lowest exponent; the quotient has a nonzero constant term."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    k = p.low_degree
    return k, p.shift(-k)


def factored_form(p: LaurentPoly) -> str:
    """Render as ``(q-1)^e * q^k * (rest)``, omitting trivial factors."""
    if p.is_zero():
        return "0"
    e, rest = factor_qminus1(p)
    k, rest = factor_qpower(rest)
    parts = []
    if e:
        parts.append("(q-1)" if e == 1 else f"(q-1)^{e}")
    if k:
        parts.append("q" if k == 1 else f"q^{k}")
    if rest != ONE or not parts:
        body = rest.pretty()
        parts.append(f"({body})" if len(rest.terms) > 1 else body)
    return " * ".join(parts)


def in_t_basis(p: LaurentPoly) -> List[int]:
    """
    Coefficients c_0, c_1, ... with p(q) = sum c_i t^i and t = q - 1.

    Raises:
        ValueError: p has negative exponents.
    """
    if not p.is_polynomial():
        raise ValueError(f"{p.pretty()} has negative exponents; no t-basis rewrite")
    if p.is_zero():
        return []
    coefficients = [0] * (p.degree + 1)
    for e, c in p.terms:
        # q^e = (t+1)^e
        for i in range(e + 1):
            coefficients[i] += c * comb(e, i)
    return coefficients


def from_t_basis(coefficients: Sequence[int]) -> LaurentPoly:
    """Inverse of in_t_basis: substitute t = q - 1."""
    result = ZERO
    for i, c in enumerate(coefficients):
        if c:
            result = result + c * Q_MINUS_1 ** i
    return result


@dataclass(frozen=True)
class SampleTable:
    """Exact values of a function of q at distinct prime powers."""

    rows: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        qs = [q for q, _ in self.rows]
        if len(set(qs)) != len(qs):
            raise ValueError(f"sample points must be distinct, got {qs}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, int]]) -> "SampleTable":
        return cls(tuple((int(q), int(v)) for q, v in pairs))

    def __len__(self) -> int:
        return len(self.rows)

    def restrict(self, predicate) -> "SampleTable":
        return SampleTable(tuple(row for row in self.rows if predicate(row[0])))

    def to_json(self) -> List[Dict[str, str]]:
        return [{"q": str(q), "value": str(v)} for q, v in self.rows]


@dataclass(frozen=True)
class QuasiFit:
    """Per-parity fits; ``consistent`` means every class passed a held-out check."""

    class_polys: Dict[str, Optional[LaurentPoly]] = field(default_factory=dict)
    consistent: bool = False
    note: str = ""

    def is_polynomial(self) -> bool:
        """Both classes fitted and equal."""
        even, odd = self.class_polys.get("even"), self.class_polys.get("odd")
        return self.consistent and even is not None and even == odd

    def to_json(self) -> Dict[str, object]:
        return {
            "classes": {
                name: (poly.to_json() if poly is not None else None)
                for name, poly in self.class_polys.items()
            },
            "consistent": self.consistent,
            "note": self.note,
        }


def interpolate(samples: SampleTable, degree_bound: int) -> LaurentPoly:
    """
    Fit an integer polynomial of degree <= degree_bound and validate it.

    The first degree_bound + 1 samples determine the fit, computed by sympy
    over the rationals; every remaining sample is a held-out check.

    Raises:
        InterpolationError: too few samples, a non-integral coefficient, or a
            held-out mismatch.
    """
    if degree_bound < 0:
        raise InterpolationError(f"degree bound must be nonnegative, got {degree_bound}")
    needed = degree_bound + 2
    if len(samples) < needed:
        raise InterpolationError(
            f"need at least {needed} samples for degree bound {degree_bound}, got {len(samples)}"
        )
    fit_points = samples.rows[: degree_bound + 1]
    held_out = samples.rows[degree_bound + 1:]
    fitted = Poly(sympy_interpolate([(Integer(x), Integer(y)) for x, y in fit_points], _q), _q)
    monomial = list(reversed(fitted.all_coeffs()))
    for power, c in enumerate(monomial):
        if not c.is_integer:
            raise InterpolationError(f"coefficient of q^{power} is {c}, not an integer")
    poly = LaurentPoly.from_coefficients([int(c) for c in monomial])
    for q, value in held_out:
        if poly.evaluate(q) != value:
            raise InterpolationError(
                f"fit {poly.pretty()} predicts {poly.evaluate(q)} at q={q}, sample is {value}"
            )
    return poly


def detect_quasi(samples: SampleTable, degree_bound: int) -> QuasiFit:
    """
    Interpolate even-q and odd-q samples separately.

    Raises:
        InterpolationError: when neither parity class has enough samples.
    """
    needed = degree_bound + 2
    fits: Dict[str, Optional[LaurentPoly]] = {}
    notes = []
    for name, parity in (("even", 0), ("odd", 1)):
        subset = samples.restrict(lambda q, parity=parity: q % 2 == parity)
        if len(subset) < needed:
            fits[name] = None
            notes.append(f"{name}: {len(subset)} samples, {needed} needed")
            continue
        try:
            fits[name] = interpolate(subset, degree_bound)
        except InterpolationError as exc:
            fits[name] = None
            notes.append(f"{name}: {exc}")
    if all(poly is None for poly in fits.values()) and all("needed" in n for n in notes):
        raise InterpolationError("insufficient samples in both parity classes: " + "; ".join(notes))
    consistent = all(poly is not None for poly in fits.values())
    return QuasiFit(class_polys=fits, consistent=consistent, note="; ".join(notes))
