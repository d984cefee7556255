"""Rankin-Cohen brackets and the expansion of delta^{(r)}(f) * delta^{(s)}(g)
into delta-iterates of brackets [f, g]_j."""
import logging
from fractions import Fraction
from typing import List, Optional, Tuple

from errors import DomainError, PrecisionError
from forms import HolomorphicForm
from hecke import eigen_check
from models import ExpansionTerm, ExpansionTermList
from nearly import NearlyHolomorphicForm, from_holomorphic, maass_iter, nadd, nscale, zero_form
from series import QExpansion, binomial, d_operator, scale

brackets_logger = logging.getLogger(__name__)


def _derivatives(series: QExpansion, order: int) -> List[QExpansion]:
    chain = [series]
    for _ in range(order):
        chain.append(d_operator(chain[-1]))
    return chain


def rankin_cohen(f: HolomorphicForm, g: HolomorphicForm, j: int) -> HolomorphicForm:
    """[f, g]_j = sum_{a+b=j} (-1)^a C(j+k-1, b) C(j+l-1, a) D^a f D^b g"""
    if j < 0:
        raise DomainError(f"Bracket index must be nonnegative, got {j}")
    k, l = f.weight, g.weight
    label = f"[{f.label},{g.label}]_{j}" if f.label and g.label else None
    if j == 0:
        return HolomorphicForm(k + l, f.series * g.series, label)
    df = _derivatives(f.series, j)
    dg = _derivatives(g.series, j)
    total = QExpansion.zero(min(f.precision, g.precision))
    for a in range(j + 1):
        b = j - a
        coefficient = (-1) ** a * binomial(j + k - 1, b) * binomial(j + l - 1, a)
        if coefficient:
            total = total + scale(coefficient, df[a] * dg[b])
    return HolomorphicForm(k + l + 2 * j, total, label)


def _require_factor_weight(weight: int) -> None:
    if weight < 4 or weight % 2:
        raise DomainError(f"Expansion weights must be even and at least 4, got {weight}")


def lanphier_monomial(k: int, l: int, n: int) -> Tuple[Fraction, ...]:
    """Coefficients of delta^{(n-j)}([f, g]_j) in delta_k^{(n)}(f) * g, j = 0..n"""
    _require_factor_weight(k)
    _require_factor_weight(l)
    if n < 0:
        raise DomainError(f"Iteration count must be nonnegative, got {n}")
    return tuple(
        Fraction(
            (-1) ** j * binomial(n, j) * binomial(k + n - 1, n - j),
            binomial(k + l + 2 * j - 2, j) * binomial(k + l + n + j - 1, n - j),
        )
        for j in range(n + 1)
    )


def lanphier_expansion_coeffs(k: int, l: int, r: int, s: int) -> ExpansionTermList:
    """alpha_j with delta^{(r)}(f) delta^{(s)}(g) = sum_j alpha_j delta^{(r+s-j)}([f, g]_j)"""
    _require_factor_weight(k)
    _require_factor_weight(l)
    if r < 0 or s < 0:
        raise DomainError(f"Iteration counts must be nonnegative, got r={r}, s={s}")
    terms = []
    for j in range(r + s + 1):
        inner = Fraction(0)
        for m in range(max(j - r, 0), s + 1):
            inner += Fraction(
                (-1) ** (j + m)
                * binomial(s, m)
                * binomial(r + m, j)
                * binomial(k + r + m - 1, r + m - j),
                binomial(k + l + r + m + j - 1, r + m - j),
            )
        terms.append(ExpansionTerm(j=j, alpha=inner / binomial(k + l + 2 * j - 2, j)))
    return ExpansionTermList(k=k, l=l, r=r, s=s, terms=terms)


def _bracket_is_eigen(
    bracket: HolomorphicForm, n_max: int, min_overlap: int
) -> Optional[bool]:
    # delta-iterates of a form are eigen exactly when the form is
    try:
        return eigen_check(from_holomorphic(bracket), n_max, min_overlap).is_eigen
    except PrecisionError as precision_error:
        brackets_logger.warning(f"Eigen status of {bracket.label} undecided: {precision_error}")
        return None


def bracket_terms(
    f: HolomorphicForm,
    r: int,
    g: HolomorphicForm,
    s: int,
    n_max: Optional[int] = None,
    min_overlap: Optional[int] = None,
) -> Tuple[ExpansionTermList, List[HolomorphicForm]]:
    """Expansion coefficients annotated with bracket vanishing and eigen status"""
    expansion = lanphier_expansion_coeffs(f.weight, g.weight, r, s)
    annotated = []
    brackets = []
    for term in expansion.terms:
        bracket = rankin_cohen(f, g, term.j)
        brackets.append(bracket)
        bracket_is_zero = bracket.series.is_zero()
        term_is_eigen = None
        if n_max is not None and min_overlap is not None and term.alpha and not bracket_is_zero:
            term_is_eigen = _bracket_is_eigen(bracket, n_max, min_overlap)
        annotated.append(
            term.model_copy(
                update={"bracket_is_zero": bracket_is_zero, "term_is_eigen": term_is_eigen}
            )
        )
    return expansion.model_copy(update={"terms": annotated}), brackets


def expand_product(
    f: HolomorphicForm,
    r: int,
    g: HolomorphicForm,
    s: int,
    n_max: Optional[int] = None,
    min_overlap: Optional[int] = None,
) -> Tuple[ExpansionTermList, NearlyHolomorphicForm]:
    """Expansion plus the sum it describes, for comparison with the direct product"""
    expansion, brackets = bracket_terms(f, r, g, s, n_max, min_overlap)
    weight = f.weight + g.weight + 2 * (r + s)
    total = zero_form(weight, min(f.precision, g.precision))
    for term, bracket in zip(expansion.terms, brackets):
        if not term.alpha or term.bracket_is_zero:
            continue
        lifted = maass_iter(from_holomorphic(bracket), r + s - term.j)
        total = nadd(total, nscale(term.alpha, lifted))
    brackets_logger.debug(
        f"Expanded delta^{r}({f.label}) * delta^{s}({g.label}) into {len(expansion.terms)} terms"
    )
    return expansion, total


def nonzero_terms(expansion: ExpansionTermList) -> List[int]:
    """Bracket indices whose term survives: alpha_j != 0 and [f, g]_j != 0"""
    undecided = [term.j for term in expansion.terms if term.bracket_is_zero is None]
    if undecided:
        raise DomainError(f"Bracket vanishing not computed for j in {undecided}")
    return [term.j for term in expansion.terms if term.is_nonzero]


def leading_terms_nonzero(f: HolomorphicForm, r: int, g: HolomorphicForm, s: int) -> bool:
    """For factors that are not both cusp forms, the j = r+s or j = r+s-1 term survives"""
    if f.is_cusp and g.is_cusp:
        raise DomainError("Leading-term survival is only claimed when some factor is not cuspidal")
    expansion, _ = bracket_terms(f, r, g, s)
    top = r + s
    survivors = set(nonzero_terms(expansion))
    return top in survivors or (top - 1) in survivors
