"""Level-one holomorphic forms: Eisenstein series and the cusp eigenforms
of the one-dimensional cusp spaces."""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from errors import DomainError, PrecisionError
from models import FormId, FormKind, FormRecord
from series import QExpansion, as_rational, bernoulli, scale, sigma

forms_logger = logging.getLogger(__name__)

# Weights with dim S_k = 1
CUSP_WEIGHTS = (12, 16, 18, 20, 22, 26)


@dataclass(frozen=True)
class HolomorphicForm:
    weight: int
    series: QExpansion
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if self.weight < 0 or self.weight % 2:
            raise DomainError(f"Weight must be a nonnegative even integer, got {self.weight}")

    @property
    def is_cusp(self) -> bool:
        return self.series[0] == 0

    @property
    def precision(self) -> int:
        return self.series.precision

    def truncate(self, precision: int) -> "HolomorphicForm":
        return HolomorphicForm(self.weight, self.series.truncate(precision), self.label)

    def to_record(self) -> FormRecord:
        return FormRecord(
            id=self.label,
            weight=self.weight,
            is_cusp=self.is_cusp,
            precision=self.precision,
            coefficients=list(self.series.coeffs),
        )

    @classmethod
    def from_record(cls, record: FormRecord) -> "HolomorphicForm":
        return cls(record.weight, QExpansion(record.coefficients, record.precision), record.id)


def cusp_dimension(k: int) -> int:
    """dim S_k for the full modular group"""
    if k < 0 or k % 2:
        raise DomainError(f"Cusp dimension needs a nonnegative even weight, got {k}")
    if k < 12:
        return 0
    base = k // 12
    return base - 1 if k % 12 == 2 else base


@lru_cache(maxsize=256)
def eisenstein(k: int, precision: int) -> HolomorphicForm:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n"""
    if k % 2 or k < 4:
        raise DomainError(f"Eisenstein series need an even weight >= 4, got {k}")
    if precision < 1:
        raise PrecisionError(f"Precision must be positive, got {precision}")
    leading = as_rational(-2 * k) / bernoulli(k)
    coeffs = [as_rational(1)] + [leading * sigma(n, k - 1) for n in range(1, precision)]
    forms_logger.debug(f"Built E{k} to precision {precision}")
    return HolomorphicForm(k, QExpansion(coeffs, precision), label=f"E{k}")


@lru_cache(maxsize=64)
def delta12(precision: int) -> HolomorphicForm:
    """(E_4^3 - E_6^2) / 1728"""
    if precision < 2:
        raise PrecisionError(f"Delta needs precision >= 2, got {precision}")
    e4 = eisenstein(4, precision).series
    e6 = eisenstein(6, precision).series
    series = scale(as_rational(1) / 1728, e4 * e4 * e4 - e6 * e6)
    return HolomorphicForm(12, series, label="D12")


@lru_cache(maxsize=256)
def cusp_eigenform(k: int, precision: int) -> HolomorphicForm:
    """Normalized generator of S_k when dim S_k = 1, built as Delta * E_{k-12}"""
    if k not in CUSP_WEIGHTS:
        raise DomainError(
            f"No rational normalized cusp eigenform is built for weight {k}; "
            f"supported weights are {', '.join(map(str, CUSP_WEIGHTS))}"
        )
    delta = delta12(precision)
    if k == 12:
        return delta
    series = delta.series * eisenstein(k - 12, precision).series
    series = scale(1 / series[1], series)
    forms_logger.debug(f"Built D{k} as D12 * E{k - 12} to precision {precision}")
    return HolomorphicForm(k, series, label=f"D{k}")


def build_form(form_id: FormId, precision: int) -> HolomorphicForm:
    if form_id.kind is FormKind.EISENSTEIN:
        return eisenstein(form_id.weight, precision)
    return cusp_eigenform(form_id.weight, precision)

