"""Census of products delta^{(r)}(f) * delta^{(s)}(g) of eigenforms and the
checks that reproduce the classification of the eigen ones."""
import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from brackets import bracket_terms, nonzero_terms
from errors import DomainError
from forms import CUSP_WEIGHTS, HolomorphicForm, build_form, cusp_eigenform, eisenstein
from hecke import eigen_check, hecke_nearly
from models import (
    CensusReport,
    FormId,
    FormKind,
    ProductCase,
    RemarkEntry,
    RemarkReport,
    SearchConfig,
    TheoremReport,
    Verdict,
    Witness,
    WitnessKind,
)
from nearly import (
    NearlyHolomorphicForm,
    delta_iter,
    delta_product,
    flatten,
    from_holomorphic,
    leading_coefficient,
    maass_shimura,
    nmul,
    normalize,
    nscale,
)
from series import vector_proportionality

census_logger = logging.getLogger(__name__)

Family = Tuple[str, int, str, int]

# Products of level-one eigenforms (and their delta-iterates) that are eigen
EXPECTED_EIGEN_FAMILIES: Tuple[Family, ...] = (
    ("E4", 0, "E4", 0),
    ("E4", 0, "E6", 0),
    ("E4", 1, "E4", 0),
    ("E4", 0, "E10", 0),
    ("E6", 0, "E8", 0),
    ("E4", 0, "D12", 0),
    ("E6", 0, "D12", 0),
    ("E4", 0, "D16", 0),
    ("E8", 0, "D12", 0),
    ("E4", 0, "D18", 0),
    ("E6", 0, "D16", 0),
    ("E10", 0, "D12", 0),
    ("E4", 0, "D22", 0),
    ("E6", 0, "D20", 0),
    ("E8", 0, "D18", 0),
    ("E10", 0, "D16", 0),
    ("D12", 0, "E14", 0),
)


def _pool_ids(config: SearchConfig) -> List[FormId]:
    if config.pool is not None:
        ids = [form_id for form_id in config.pool if form_id.weight <= config.max_factor_weight]
    else:
        ids = [
            FormId(kind=FormKind.EISENSTEIN, weight=k)
            for k in range(4, config.max_factor_weight + 1, 2)
        ]
        ids += [
            FormId(kind=FormKind.CUSP, weight=k)
            for k in CUSP_WEIGHTS
            if k <= config.max_factor_weight
        ]
    return sorted(set(ids), key=lambda form_id: form_id.sort_key)


def eigenform_pool(config: SearchConfig) -> List[HolomorphicForm]:
    """E_k for even 4 <= k <= max_factor_weight and the supported Delta_k"""
    return [build_form(form_id, config.precision) for form_id in _pool_ids(config)]


def _lift_label(form_id: str, iterations: int) -> str:
    return form_id if iterations == 0 else f"delta^{iterations}({form_id})"


def identify_eigenform(
    F: NearlyHolomorphicForm, config: SearchConfig
) -> Optional[Tuple[str, Fraction]]:
    """Name the normalized eigenform delta^{(p)}(h) that F is a multiple of"""
    degree = F.degree
    base_weight = F.weight - 2 * degree
    candidates = []
    if base_weight >= 4:
        candidates.append(eisenstein(base_weight, config.precision))
    if base_weight in CUSP_WEIGHTS:
        candidates.append(cusp_eigenform(base_weight, config.precision))
    target = normalize(F)
    for candidate in candidates:
        lifted = delta_iter(candidate, degree).truncate(F.precision)
        if normalize(lifted) == target:
            scale_factor = leading_coefficient(F) / leading_coefficient(lifted)
            return _lift_label(candidate.label, degree), scale_factor
    return None


def _hecke_witness_holds(product: NearlyHolomorphicForm, n: int) -> bool:
    image = hecke_nearly(n, product)
    ratio = vector_proportionality(
        flatten(product, product.degree, image.precision),
        flatten(image, product.degree, image.precision),
    )
    return ratio is None


def factor_id(f: HolomorphicForm) -> FormId:
    """Identifier of a factor; unlabeled forms are named by weight and cuspidality"""
    if f.label is None:
        kind = FormKind.CUSP if f.is_cusp else FormKind.EISENSTEIN
        return FormId(kind=kind, weight=f.weight)
    try:
        return FormId.parse(f.label)
    except ValidationError as invalid:
        raise DomainError(
            f"Factor label '{f.label}' is not an E<k> or D<k> identifier"
        ) from invalid


def classify_product(
    f: HolomorphicForm, r: int, g: HolomorphicForm, s: int, config: SearchConfig
) -> ProductCase:
    """Decide whether delta^{(r)}(f) * delta^{(s)}(g) is an eigenform.

    Two surviving expansion terms at distinct j certify not-eigen, since
    delta-lifts of different holomorphic weights never share eigenvalues.
    Otherwise the Hecke test decides.
    """
    f_id, g_id = factor_id(f), factor_id(g)
    total_weight = f.weight + g.weight + 2 * (r + s)
    if max(f.weight, g.weight) > config.max_factor_weight:
        raise DomainError(f"Factor weight exceeds max_factor_weight={config.max_factor_weight}")
    if total_weight > config.max_total_weight:
        raise DomainError(f"Total weight {total_weight} exceeds {config.max_total_weight}")
    f = f.truncate(config.precision)
    g = g.truncate(config.precision)
    base = {"f_id": f_id, "r": r, "g_id": g_id, "s": s, "total_weight": total_weight}

    expansion, _ = bracket_terms(f, r, g, s)
    survivors = nonzero_terms(expansion)
    if len(survivors) >= 2:
        census_logger.debug(
            f"{f_id}^({r}) * {g_id}^({s}): terms {survivors} survive, not an eigenform"
        )
        return ProductCase(
            **base,
            verdict=Verdict.NOT_EIGEN,
            nonzero_terms=survivors,
            witness=Witness(kind=WitnessKind.EXPANSION, terms=[survivors[0], survivors[-1]]),
        )

    product = delta_product(f, r, g, s)
    report = eigen_check(product, config.n_max, config.min_overlap)
    if not report.is_eigen:
        return ProductCase(
            **base,
            verdict=Verdict.NOT_EIGEN,
            nonzero_terms=survivors,
            witness=Witness(kind=WitnessKind.HECKE, n=report.failing_n),
        )

    match = identify_eigenform(product, config)
    if match is None:
        census_logger.error(f"{f_id}^({r}) * {g_id}^({s}) is eigen but matches no pool form")
        raise DomainError(
            f"Eigen product of weight {total_weight} has no normalized eigenform to match"
        )
    label, scale_factor = match
    census_logger.info(f"Eigen product {f_id}^({r}) * {g_id}^({s}) = {scale_factor} * {label}")
    return ProductCase(
        **base,
        verdict=Verdict.EIGEN,
        eigen_match=label,
        match_scale=scale_factor,
        eigenvalues=report.eigenvalues,
        nonzero_terms=survivors,
    )


def verify_witness(case: ProductCase, config: SearchConfig) -> bool:
    """Recompute a not-eigen witness from scratch"""
    if case.witness is None:
        return False
    f = build_form(case.f_id, config.precision)
    g = build_form(case.g_id, config.precision)
    if case.witness.kind is WitnessKind.EXPANSION:
        expansion, _ = bracket_terms(f, case.r, g, case.s)
        survivors = set(nonzero_terms(expansion))
        return all(j in survivors for j in case.witness.terms)
    product = delta_product(f, case.r, g, case.s)
    return _hecke_witness_holds(product, case.witness.n)


def _enumerate_tasks(config: SearchConfig) -> Iterable[Tuple[FormId, int, FormId, int]]:
    ids = _pool_ids(config)
    for left_index, f_id in enumerate(ids):
        for g_id in ids[left_index:]:
            for r in range(config.max_delta_iters + 1):
                for s in range(config.max_delta_iters - r + 1):
                    if f_id == g_id and r < s:
                        continue
                    if f_id.weight + g_id.weight + 2 * (r + s) > config.max_total_weight:
                        continue
                    yield f_id, r, g_id, s


def _classify_task(task: Tuple[FormId, int, FormId, int, SearchConfig]) -> ProductCase:
    f_id, r, g_id, s, config = task
    f = build_form(f_id, config.precision)
    g = build_form(g_id, config.precision)
    return classify_product(f, r, g, s, config)


def _case_sort_key(case: ProductCase) -> tuple:
    return (case.total_weight, case.f_id.sort_key, case.g_id.sort_key, case.r, case.s)


def run_search(config: SearchConfig) -> CensusReport:
    tasks = [(f_id, r, g_id, s, config) for f_id, r, g_id, s in _enumerate_tasks(config)]
    census_logger.info(f"Classifying {len(tasks)} products with {config.workers} worker(s)")
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            cases = list(executor.map(_classify_task, tasks, chunksize=4))
    else:
        cases = [_classify_task(task) for task in tasks]
    cases.sort(key=_case_sort_key)
    report = CensusReport(config=config, cases=cases)
    census_logger.info(
        f"Census complete: {len(report.eigen_cases)} eigen of {len(report.cases)} products"
    )
    return report


def expected_families(config: SearchConfig) -> List[Family]:
    """The eigen families that fall inside the configured search space"""
    allowed = {str(form_id) for form_id in _pool_ids(config)}
    selected = []
    for family in EXPECTED_EIGEN_FAMILIES:
        f_label, r, g_label, s = family
        weight = FormId.parse(f_label).weight + FormId.parse(g_label).weight + 2 * (r + s)
        if (
            f_label in allowed
            and g_label in allowed
            and r + s <= config.max_delta_iters
            and weight <= config.max_total_weight
        ):
            selected.append(family)
    return selected


def verify_theorem(
    config: SearchConfig, census: Optional[CensusReport] = None
) -> Tuple[TheoremReport, CensusReport]:
    census = census if census is not None else run_search(config)
    expected = expected_families(config)
    found = [case.family for case in census.eigen_cases]
    report = TheoremReport(
        expected=[list(family) for family in expected],
        found=[list(family) for family in found],
        missing=[list(family) for family in expected if family not in found],
        unexpected=[list(family) for family in found if family not in expected],
    )
    if not report.matches:
        census_logger.warning(
            f"Census disagrees with the classification: missing={report.missing}, "
            f"unexpected={report.unexpected}"
        )
    return report, census


def verify_remark(k_list: Sequence[int], config: SearchConfig) -> RemarkReport:
    """2 delta_k(E_k) E_k = delta_{2k}(E_k^2) always; eigen only for k = 4"""
    entries = []
    for k in k_list:
        e_k = eisenstein(k, config.precision)
        product = nmul(delta_iter(e_k, 1), from_holomorphic(e_k))
        square = nmul(from_holomorphic(e_k), from_holomorphic(e_k))
        identity_holds = nscale(2, product) == maass_shimura(square)
        is_eigen = eigen_check(product, config.n_max, config.min_overlap).is_eigen
        entries.append(
            RemarkEntry(k=k, identity_holds=identity_holds, is_eigen=is_eigen, expected_eigen=k == 4)
        )
    return RemarkReport(entries=entries)


def eigen_sum_criterion(
    parts: Sequence[NearlyHolomorphicForm], n_max: int, min_overlap: int
) -> bool:
    """Predicted eigen status of sum(parts) for parts of distinct holomorphic weight:
    every part must be an eigenform and all share one eigenvalue map."""
    reports = [eigen_check(part, n_max, min_overlap) for part in parts if not part.is_zero]
    if not reports or not all(report.is_eigen for report in reports):
        return False
    first = reports[0].eigenvalues
    return all(report.eigenvalues == first for report in reports[1:])
