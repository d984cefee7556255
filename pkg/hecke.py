"""Hecke operators on q-expansions and nearly holomorphic forms, and
eigenvector testing with exact eigenvalue recovery."""
import logging
from fractions import Fraction
from math import gcd
from typing import Dict

from errors import DomainError, PrecisionError
from forms import HolomorphicForm
from models import EigenReport
from nearly import NearlyHolomorphicForm, flatten, zero_form
from series import Marker, QExpansion, divisors, scale, vector_proportionality

hecke_logger = logging.getLogger(__name__)

DEFAULT_N_MAX = 8
DEFAULT_MIN_OVERLAP = 5


def hecke_precision(precision: int, n: int) -> int:
    """Coefficients of T_n f that are determined by N coefficients of f"""
    return (precision - 1) // n + 1


def _power(base: int, exponent: int) -> Fraction:
    if exponent >= 0:
        return Fraction(base ** exponent)
    return Fraction(1, base ** -exponent)


def hecke_holomorphic(n: int, k: int, f: QExpansion) -> QExpansion:
    """Coefficient m of T_n f is sum_{d | gcd(m, n)} d^{k-1} a_{mn/d^2}.

    At m = 0 the gcd is n, which gives sigma_{k-1}(n) a_0.
    """
    if n < 1:
        raise DomainError(f"Hecke index must be positive, got {n}")
    out_precision = hecke_precision(f.precision, n)
    if out_precision < 2:
        hecke_logger.warning(
            f"T_{n} on a precision-{f.precision} series leaves {out_precision} coefficient(s)"
        )
        raise PrecisionError(
            f"T_{n} needs precision >= {n + 1}, got {f.precision}"
        )
    if n == 1:
        return f
    a = f.coeffs
    coeffs = []
    for m in range(out_precision):
        total = Fraction(0)
        for d in divisors(gcd(m, n)):
            value = a[m * n // (d * d)]
            if value:
                total += _power(d, k - 1) * value
        coeffs.append(total)
    return QExpansion(coeffs, out_precision)


def hecke_form(n: int, f: HolomorphicForm) -> HolomorphicForm:
    """T_n f at the same weight; the result carries no label"""
    return HolomorphicForm(f.weight, hecke_holomorphic(n, f.weight, f.series))


def hecke_nearly(n: int, F: NearlyHolomorphicForm) -> NearlyHolomorphicForm:
    """Component i of T_n F is n^i T_n^{(k-2i)} applied to component i"""
    if n < 1:
        raise DomainError(f"Hecke index must be positive, got {n}")
    out_precision = hecke_precision(F.precision, n)
    if out_precision < 2:
        raise PrecisionError(f"T_{n} needs precision >= {n + 1}, got {F.precision}")
    if F.is_zero:
        return zero_form(F.weight, out_precision)
    parts = [
        scale(n ** i, hecke_holomorphic(n, F.weight - 2 * i, part))
        for i, part in enumerate(F.components)
    ]
    return NearlyHolomorphicForm(F.weight, parts, out_precision)


def eigen_check(
    F: NearlyHolomorphicForm,
    n_max: int = DEFAULT_N_MAX,
    min_overlap: int = DEFAULT_MIN_OVERLAP,
) -> EigenReport:
    """Test F against T_2..T_{n_max}, one scalar per n across all Y-components"""
    if F.is_zero:
        raise DomainError("Eigenforms are nonzero by definition")
    if n_max < 2:
        raise DomainError(f"n_max must be at least 2, got {n_max}")
    if min_overlap < 2:
        raise DomainError(f"min_overlap must be at least 2, got {min_overlap}")
    required = n_max * (min_overlap - 1) + 1
    if F.precision < required:
        hecke_logger.warning(
            f"Eigen test refused: precision {F.precision} < {required} "
            f"(n_max={n_max}, min_overlap={min_overlap})"
        )
        raise PrecisionError(
            f"Eigen test with n_max={n_max}, min_overlap={min_overlap} "
            f"needs precision {required}, got {F.precision}"
        )

    eigenvalues: Dict[int, Fraction] = {}
    tested = []
    limiting = F.precision
    for n in range(2, n_max + 1):
        image = hecke_nearly(n, F)
        overlap = image.precision
        limiting = min(limiting, overlap)
        tested.append(n)
        ratio = vector_proportionality(
            flatten(F, F.degree, overlap), flatten(image, F.degree, overlap)
        )
        if ratio is Marker.ZERO_PAIR:
            raise PrecisionError(
                f"Form vanishes on the first {overlap} coefficients; raise the precision"
            )
        if ratio is None:
            hecke_logger.debug(f"Weight {F.weight} form fails T_{n}")
            return EigenReport(
                is_eigen=False,
                eigenvalues=eigenvalues,
                tested_n=tested,
                limiting_precision=limiting,
                failing_n=n,
            )
        eigenvalues[n] = ratio
    return EigenReport(
        is_eigen=True, eigenvalues=eigenvalues, tested_n=tested, limiting_precision=limiting
    )


def eigenvalue_maps_differ(first: EigenReport, second: EigenReport) -> bool:
    """True when two eigen reports disagree at some commonly tested n"""
    if not (first.is_eigen and second.is_eigen):
        raise DomainError("Eigenvalue comparison needs two eigen reports")
    common = set(first.eigenvalues) & set(second.eigenvalues)
    return any(first.eigenvalues[n] != second.eigenvalues[n] for n in common)
