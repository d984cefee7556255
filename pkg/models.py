import re
from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, Dict, List, Optional

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    PlainValidator,
    model_serializer,
    model_validator,
)


def _parse_fraction(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise ValueError("Booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as parse_error:
            raise ValueError(f"Invalid rational '{value}'") from parse_error
    raise ValueError(f"Cannot read {type(value).__name__} as an exact rational")


# Exact rational carried as a "p/q" string on the wire
RationalField = Annotated[
    Fraction,
    PlainValidator(_parse_fraction),
    PlainSerializer(lambda value: str(value), return_type=str),
]


# Form identifiers
class FormKind(str, Enum):
    EISENSTEIN = "E"
    CUSP = "D"


_FORM_ID_PATTERN = re.compile(r"^\s*(E|D|Delta)\s*_?(\d+)\s*$", re.IGNORECASE)


class FormId(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: FormKind
    weight: int = Field(..., ge=0)

    @model_validator(mode="before")
    @classmethod
    def _accept_short_form(cls, data: Any) -> Any:
        if isinstance(data, str):
            match = _FORM_ID_PATTERN.match(data)
            if not match:
                raise ValueError(f"Unknown form identifier '{data}' (expected E<k> or D<k>)")
            prefix = match.group(1).upper()
            kind = FormKind.EISENSTEIN if prefix == "E" else FormKind.CUSP
            return {"kind": kind, "weight": int(match.group(2))}
        return data

    @model_serializer
    def _as_short_form(self) -> str:
        return str(self)

    @classmethod
    def parse(cls, text: str) -> "FormId":
        return cls.model_validate(text)

    @property
    def is_cusp(self) -> bool:
        return self.kind is FormKind.CUSP

    @property
    def sort_key(self) -> tuple:
        return (self.weight, 0 if self.kind is FormKind.EISENSTEIN else 1)

    def __str__(self) -> str:
        return f"{self.kind.value}{self.weight}"


# Serialized forms
class FormRecord(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    id: Optional[str] = None
    weight: int
    is_cusp: bool
    precision: int
    coefficients: List[RationalField]


class NearlyFormRecord(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    weight: int
    degree: int
    precision: int
    components: List[List[RationalField]]


# Hecke testing
class EigenReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    is_eigen: bool
    eigenvalues: Dict[int, RationalField] = Field(default_factory=dict)
    tested_n: List[int] = Field(default_factory=list)
    limiting_precision: int
    failing_n: Optional[int] = None


# Product expansions
class ExpansionTerm(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    j: int = Field(..., ge=0)
    alpha: RationalField
    bracket_is_zero: Optional[bool] = None
    term_is_eigen: Optional[bool] = None

    @property
    def is_nonzero(self) -> bool:
        return self.alpha != 0 and self.bracket_is_zero is False


class ExpansionTermList(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    k: int
    l: int
    r: int = Field(..., ge=0)
    s: int = Field(..., ge=0)
    terms: List[ExpansionTerm]

    @model_validator(mode="after")
    def _check_term_indices(self) -> "ExpansionTermList":
        indices = [term.j for term in self.terms]
        if indices != list(range(self.r + self.s + 1)):
            raise ValueError("Expansion must list j = 0..r+s exactly once in increasing order")
        return self

    @property
    def alphas(self) -> List[Fraction]:
        return [term.alpha for term in self.terms]


# Classification
class Verdict(str, Enum):
    EIGEN = "eigen"
    NOT_EIGEN = "not-eigen"


class WitnessKind(str, Enum):
    HECKE = "hecke"
    EXPANSION = "expansion"


class Witness(BaseModel):
    kind: WitnessKind
    n: Optional[int] = None
    terms: List[int] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_shape(self) -> "Witness":
        if self.kind is WitnessKind.HECKE and self.n is None:
            raise ValueError("Hecke witness needs the failing n")
        if self.kind is WitnessKind.EXPANSION and (
            len(self.terms) != 2 or self.terms[0] == self.terms[1]
        ):
            raise ValueError("Expansion witness needs two distinct bracket indices")
        return self


class ProductCase(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    f_id: FormId
    r: int = Field(..., ge=0)
    g_id: FormId
    s: int = Field(..., ge=0)
    total_weight: int
    verdict: Verdict
    eigen_match: Optional[str] = None
    match_scale: Optional[RationalField] = None
    eigenvalues: Dict[int, RationalField] = Field(default_factory=dict)
    nonzero_terms: List[int] = Field(default_factory=list)
    witness: Optional[Witness] = None

    @model_validator(mode="after")
    def _check_consistency(self) -> "ProductCase":
        expected_weight = self.f_id.weight + self.g_id.weight + 2 * (self.r + self.s)
        if self.total_weight != expected_weight:
            raise ValueError(f"total_weight {self.total_weight} != {expected_weight}")
        if self.verdict is Verdict.EIGEN and self.eigen_match is None:
            raise ValueError("An eigen verdict must name the matching eigenform")
        if self.verdict is Verdict.NOT_EIGEN and self.witness is None:
            raise ValueError("A not-eigen verdict must carry a witness")
        return self

    @property
    def family(self) -> tuple:
        return (str(self.f_id), self.r, str(self.g_id), self.s)

    @property
    def is_eigen(self) -> bool:
        return self.verdict is Verdict.EIGEN


class SearchConfig(BaseModel):
    max_factor_weight: int = Field(26, ge=4)
    max_total_weight: int = Field(30, ge=8)
    max_delta_iters: int = Field(3, ge=0)
    n_max: int = Field(8, ge=2)
    min_overlap: int = Field(5, ge=2)
    precision: Optional[int] = None
    workers: int = Field(1, ge=1)
    pool: Optional[List[FormId]] = None

    @property
    def required_precision(self) -> int:
        return self.n_max * (self.min_overlap - 1) + 1

    @model_validator(mode="after")
    def _resolve_precision(self) -> "SearchConfig":
        required = self.required_precision
        if self.precision is None:
            self.precision = required
        elif self.precision < required:
            raise ValueError(
                f"precision {self.precision} is below the {required} coefficients "
                f"needed for n_max={self.n_max}, min_overlap={self.min_overlap}"
            )
        return self


class CensusReport(BaseModel):
    config: SearchConfig
    cases: List[ProductCase]

    @property
    def eigen_cases(self) -> List[ProductCase]:
        return [case for case in self.cases if case.is_eigen]

    def summary(self) -> dict:
        return {
            "config": self.config.model_dump(mode="json"),
            "total_cases": len(self.cases),
            "eigen_cases": len(self.eigen_cases),
            "eigen_families": [list(case.family) for case in self.eigen_cases],
        }


class TheoremReport(BaseModel):
    expected: List[List[Any]]
    found: List[List[Any]]
    missing: List[List[Any]] = Field(default_factory=list)
    unexpected: List[List[Any]] = Field(default_factory=list)

    @property
    def matches(self) -> bool:
        return not self.missing and not self.unexpected


class RemarkEntry(BaseModel):
    k: int
    identity_holds: bool
    is_eigen: bool
    expected_eigen: bool

    @property
    def passed(self) -> bool:
        return self.identity_holds and self.is_eigen == self.expected_eigen


class RemarkReport(BaseModel):
    entries: List[RemarkEntry]

    @property
    def passed(self) -> bool:
        return all(entry.passed for entry in self.entries)


# Error response models
class ErrorInfo(BaseModel):
    message: str
    code: str
    details: Optional[str] = None


class ErrorPayload(BaseModel):
    error: ErrorInfo
