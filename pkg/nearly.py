"""Nearly holomorphic forms as polynomials in Y = 1/(4 pi Im z).

A form of weight w is sum_i components[i] * Y^i. With D = q d/dq we have
D(Y) = Y^2 and the Maass-Shimura operator on weight w is D - w*Y, so every
structure constant stays rational.
"""
import logging
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from errors import DomainError, PrecisionError
from forms import HolomorphicForm
from models import NearlyFormRecord
from series import QExpansion, RationalLike, as_rational, d_operator, scale

nearly_logger = logging.getLogger(__name__)


class NearlyHolomorphicForm:
    __slots__ = ("_weight", "_components", "_precision")

    def __init__(
        self,
        weight: int,
        components: Iterable[QExpansion],
        precision: Optional[int] = None,
    ):
        parts = list(components)
        if precision is None:
            if not parts:
                raise PrecisionError("The zero form needs an explicit precision")
            precision = min(part.precision for part in parts)
        if precision < 1:
            raise PrecisionError(f"Precision must be positive, got {precision}")
        parts = [part.truncate(precision) for part in parts]
        while parts and parts[-1].is_zero():
            parts.pop()
        self._weight = weight
        self._components: Tuple[QExpansion, ...] = tuple(parts)
        self._precision = precision

    @property
    def weight(self) -> int:
        return self._weight

    @property
    def components(self) -> Tuple[QExpansion, ...]:
        return self._components

    @property
    def precision(self) -> int:
        return self._precision

    @property
    def degree(self) -> int:
        """Y-degree; -1 for the zero form"""
        return len(self._components) - 1

    @property
    def is_zero(self) -> bool:
        return not self._components

    def component(self, index: int) -> QExpansion:
        if 0 <= index < len(self._components):
            return self._components[index]
        return QExpansion.zero(self._precision)

    def truncate(self, precision: int) -> "NearlyHolomorphicForm":
        if precision == self._precision:
            return self
        if precision > self._precision:
            raise PrecisionError(f"Cannot raise precision from {self._precision} to {precision}")
        return NearlyHolomorphicForm(self._weight, self._components, precision)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NearlyHolomorphicForm):
            return NotImplemented
        return (
            self._weight == other._weight
            and self._precision == other._precision
            and self._components == other._components
        )

    def __hash__(self) -> int:
        return hash((self._weight, self._precision, self._components))

    def __add__(self, other):
        if not isinstance(other, NearlyHolomorphicForm):
            return NotImplemented
        return nadd(self, other)

    def __sub__(self, other):
        if not isinstance(other, NearlyHolomorphicForm):
            return NotImplemented
        return nadd(self, nscale(-1, other))

    def __neg__(self):
        return nscale(-1, self)

    def __mul__(self, other):
        if isinstance(other, NearlyHolomorphicForm):
            return nmul(self, other)
        if isinstance(other, (int, Fraction)):
            return nscale(other, self)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return nscale(other, self)
        return NotImplemented

    def __repr__(self) -> str:
        return (
            f"NearlyHolomorphicForm(weight={self._weight}, degree={self.degree}, "
            f"precision={self._precision})"
        )

    def to_record(self) -> NearlyFormRecord:
        return NearlyFormRecord(
            weight=self._weight,
            degree=self.degree,
            precision=self._precision,
            components=[list(part.coeffs) for part in self._components],
        )

    @classmethod
    def from_record(cls, record: NearlyFormRecord) -> "NearlyHolomorphicForm":
        parts = [QExpansion(coeffs, record.precision) for coeffs in record.components]
        form = cls(record.weight, parts, record.precision)
        if form.degree != record.degree:
            raise DomainError(
                f"Record declares degree {record.degree} but its components give {form.degree}"
            )
        return form


def zero_form(weight: int, precision: int) -> NearlyHolomorphicForm:
    return NearlyHolomorphicForm(weight, (), precision)


def from_holomorphic(f: HolomorphicForm) -> NearlyHolomorphicForm:
    return NearlyHolomorphicForm(f.weight, (f.series,), f.precision)


def maass_shimura(F: NearlyHolomorphicForm) -> NearlyHolomorphicForm:
    """delta_w = D - w*Y; component i of the image is D(f_i) + (i - 1 - w) f_{i-1}"""
    w = F.weight
    parts = F.components
    if not parts:
        return zero_form(w + 2, F.precision)
    out: List[QExpansion] = []
    for i in range(len(parts) + 1):
        term = d_operator(parts[i]) if i < len(parts) else QExpansion.zero(F.precision)
        if i >= 1:
            term = term + scale(i - 1 - w, parts[i - 1])
        out.append(term)
    return NearlyHolomorphicForm(w + 2, out, F.precision)


def maass_iter(F: NearlyHolomorphicForm, times: int) -> NearlyHolomorphicForm:
    if times < 0:
        raise DomainError(f"Cannot apply the Maass-Shimura operator {times} times")
    for _ in range(times):
        F = maass_shimura(F)
    return F


def delta_iter(f: HolomorphicForm, r: int) -> NearlyHolomorphicForm:
    """delta_k^{(r)}(f) = delta_{k+2r-2} o ... o delta_k (f)"""
    return maass_iter(from_holomorphic(f), r)


def nmul(F: NearlyHolomorphicForm, G: NearlyHolomorphicForm) -> NearlyHolomorphicForm:
    """Product of polynomials in Y; weights add and so do Y-degrees"""
    precision = min(F.precision, G.precision)
    weight = F.weight + G.weight
    if F.is_zero or G.is_zero:
        return zero_form(weight, precision)
    out = [QExpansion.zero(precision) for _ in range(F.degree + G.degree + 1)]
    for a, left in enumerate(F.components):
        for b, right in enumerate(G.components):
            out[a + b] = out[a + b] + left * right
    return NearlyHolomorphicForm(weight, out, precision)


def delta_product(
    f: HolomorphicForm, r: int, g: Optional[HolomorphicForm] = None, s: int = 0
) -> NearlyHolomorphicForm:
    """delta^{(r)}(f) * delta^{(s)}(g), or the lift of f alone when g is None"""
    lifted = delta_iter(f, r)
    if g is None:
        return lifted
    return nmul(lifted, delta_iter(g, s))


def nadd(F: NearlyHolomorphicForm, G: NearlyHolomorphicForm) -> NearlyHolomorphicForm:
    """Sum of two forms of equal weight at the smaller precision"""
    if F.weight != G.weight:
        nearly_logger.debug(f"Rejected sum of weight {F.weight} and weight {G.weight} forms")
        raise DomainError(f"Cannot add forms of weights {F.weight} and {G.weight}")
    precision = min(F.precision, G.precision)
    size = max(len(F.components), len(G.components))
    out = [
        F.component(i).truncate(precision) + G.component(i).truncate(precision)
        for i in range(size)
    ]
    return NearlyHolomorphicForm(F.weight, out, precision)


def nscale(c: RationalLike, F: NearlyHolomorphicForm) -> NearlyHolomorphicForm:
    """Multiply every Y-component by the rational c"""
    factor = as_rational(c)
    return NearlyHolomorphicForm(
        F.weight, [scale(factor, part) for part in F.components], F.precision
    )


def is_holomorphic(F: NearlyHolomorphicForm) -> bool:
    return F.degree <= 0


def holomorphic_part(F: NearlyHolomorphicForm) -> QExpansion:
    return F.component(0)


def flatten(
    F: NearlyHolomorphicForm, degree: Optional[int] = None, precision: Optional[int] = None
) -> List[Fraction]:
    """Concatenate components 0..degree, each cut to the given precision"""
    degree = F.degree if degree is None else degree
    precision = F.precision if precision is None else precision
    values: List[Fraction] = []
    for i in range(degree + 1):
        values.extend(F.component(i).truncate(precision).coeffs)
    return values


def leading_coefficient(F: NearlyHolomorphicForm) -> Optional[Fraction]:
    return next((value for value in flatten(F) if value), None)


def normalize(F: NearlyHolomorphicForm) -> NearlyHolomorphicForm:
    """Scale so the first nonzero coefficient (component 0 first) is 1"""
    lead = leading_coefficient(F)
    if lead is None:
        raise DomainError("The zero form has no normalization")
    return nscale(1 / lead, F)

