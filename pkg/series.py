"""Exact truncated q-series over the rationals, plus the integer helpers
(binomials, Bernoulli numbers, divisor sums) the rest of the library uses."""
import logging
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from errors import DomainError, PrecisionError

series_logger = logging.getLogger(__name__)

RationalLike = Union[int, Fraction, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact Fraction"""
    if type(value) is Fraction:
        return value
    if isinstance(value, float):
        raise DomainError(f"Floating point value {value!r} rejected; use an exact rational")
    return Fraction(value)


class Marker(Enum):
    ZERO_PAIR = "zero-pair"


class QExpansion:
    """Truncated q-series sum_{m < N} a_m q^m with exact coefficients"""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike], precision: Optional[int] = None):
        values = tuple(as_rational(c) for c in coeffs)
        if precision is None:
            precision = len(values)
        if precision < 1:
            raise PrecisionError(f"A q-expansion needs precision >= 1, got {precision}")
        if len(values) > precision:
            values = values[:precision]
        elif len(values) < precision:
            values = values + (ZERO,) * (precision - len(values))
        self._coeffs = values

    @classmethod
    def _wrap(cls, values: Tuple[Fraction, ...]) -> "QExpansion":
        instance = cls.__new__(cls)
        instance._coeffs = values
        return instance

    @classmethod
    def zero(cls, precision: int) -> "QExpansion":
        return cls((), precision)

    @classmethod
    def one(cls, precision: int) -> "QExpansion":
        return cls((ONE,), precision)

    @classmethod
    def monomial(cls, exponent: int, precision: int, coefficient: RationalLike = 1) -> "QExpansion":
        if exponent < 0:
            raise DomainError(f"Negative exponent {exponent}")
        values = [ZERO] * precision
        if exponent < precision:
            values[exponent] = as_rational(coefficient)
        return cls(values, precision)

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def precision(self) -> int:
        return len(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __getitem__(self, index):
        return self._coeffs[index]

    def __iter__(self):
        return iter(self._coeffs)

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def valuation(self) -> Optional[int]:
        """Index of the first nonzero coefficient, None for the zero series"""
        for index, value in enumerate(self._coeffs):
            if value:
                return index
        return None

    def truncate(self, precision: int) -> "QExpansion":
        if precision > self.precision:
            raise PrecisionError(
                f"Cannot raise precision from {self.precision} to {precision}"
            )
        if precision == self.precision:
            return self
        return QExpansion(self._coeffs[:precision], precision)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QExpansion):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, QExpansion):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return scale(other, self)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(other, self)
        return NotImplemented

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self._coeffs[:6])
        tail = ", ..." if self.precision > 6 else ""
        return f"QExpansion([{shown}{tail}], precision={self.precision})"


def add(a: QExpansion, b: QExpansion) -> QExpansion:
    """Coefficientwise sum truncated to the smaller precision"""
    n = min(a.precision, b.precision)
    x, y = a.coeffs, b.coeffs
    return QExpansion._wrap(tuple(x[i] + y[i] for i in range(n)))


def mul(a: QExpansion, b: QExpansion) -> QExpansion:
    """Cauchy product truncated to the smaller precision"""
    n = min(a.precision, b.precision)
    x, y = a.coeffs, b.coeffs
    support = [(j, y[j]) for j in range(n) if y[j]]
    out: List[Fraction] = [ZERO] * n
    for i in range(n):
        xi = x[i]
        if not xi:
            continue
        for j, yj in support:
            if i + j >= n:
                break
            out[i + j] += xi * yj
    return QExpansion._wrap(tuple(out))


def scale(c: RationalLike, a: QExpansion) -> QExpansion:
    """c * a, exact; returns a itself when c == 1"""
    factor = as_rational(c)
    if factor == 1:
        return a
    return QExpansion._wrap(tuple(factor * value for value in a.coeffs))


def d_operator(a: QExpansion) -> QExpansion:
    """D = q d/dq, i.e. (1/2 pi i) d/dz on q-expansions"""
    return QExpansion._wrap(tuple(m * value for m, value in enumerate(a.coeffs)))


def vector_proportionality(
    base: Sequence[Fraction], other: Sequence[Fraction]
) -> Union[Fraction, Marker, None]:
    """Scalar c with other == c * base entrywise, compared on the common length"""
    n = min(len(base), len(other))
    pivot = next((i for i in range(n) if base[i]), None)
    if pivot is None:
        if all(not other[i] for i in range(n)):
            return Marker.ZERO_PAIR
        return None
    ratio = other[pivot] / base[pivot]
    for i in range(n):
        if other[i] != ratio * base[i]:
            return None
    return ratio


def proportionality(a: QExpansion, b: QExpansion) -> Union[Fraction, Marker, None]:
    """c with b == c * a on the common precision, None if not proportional"""
    overlap = min(a.precision, b.precision)
    if overlap < 2:
        raise PrecisionError(f"Proportionality needs an overlap of at least 2, got {overlap}")
    return vector_proportionality(a.coeffs, b.coeffs)


@lru_cache(maxsize=None)
def _bernoulli_table(limit: int) -> Tuple[Fraction, ...]:
    table = [ONE]
    for m in range(1, limit + 1):
        total = sum((comb(m + 1, i) * table[i] for i in range(m)), ZERO)
        table.append(-total / (m + 1))
    series_logger.debug(f"Bernoulli numbers computed up to B_{limit}")
    return tuple(table)


def bernoulli(k: int) -> Fraction:
    """B_k from sum_{i=0}^{m} C(m+1, i) B_i = 0, so B_1 = -1/2"""
    if k < 0:
        raise DomainError(f"Bernoulli index must be nonnegative, got {k}")
    return _bernoulli_table(k)[k]


def binomial(n: int, r: int) -> int:
    """C(n, r), zero outside 0 <= r <= n"""
    if n < 0:
        raise DomainError(f"binomial({n}, {r}) needs n >= 0")
    if r < 0 or r > n:
        return 0
    return comb(n, r)


@lru_cache(maxsize=4096)
def divisors(n: int) -> Tuple[int, ...]:
    """Positive divisors of n in increasing order"""
    if n < 1:
        raise DomainError(f"divisors() needs a positive integer, got {n}")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return tuple(small + large[::-1])


@lru_cache(maxsize=8192)
def sigma(n: int, e: int) -> int:
    """Divisor power sum sum_{d | n} d^e"""
    if n < 1:
        raise DomainError(f"sigma() needs n >= 1, got {n}")
    if e < 0:
        raise DomainError(f"sigma() needs a nonnegative exponent, got {e}")
    return sum(d ** e for d in divisors(n))
