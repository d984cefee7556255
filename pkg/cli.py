"""Command-line entry point: build forms, apply operators, expand products and
run the census checks. Output is text by default and JSON with --json."""
import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from brackets import bracket_terms, rankin_cohen
from classify import run_search, verify_remark, verify_theorem
from config import Settings
from errors import NholoError
from forms import build_form
from hecke import eigen_check, hecke_nearly
from models import ErrorInfo, ErrorPayload, FormId, SearchConfig
from nearly import delta_iter, delta_product
from utils import format_components, format_qseries, to_json

cli_logger = logging.getLogger(__name__)


def _form_id(text: str) -> FormId:
    try:
        return FormId.parse(text)
    except ValidationError as invalid:
        raise argparse.ArgumentTypeError(f"invalid form identifier '{text}'") from invalid


def _pool(text: str) -> List[FormId]:
    return [_form_id(item) for item in text.split(",") if item.strip()]


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="Emit JSON instead of text")
    parser.add_argument("--prec", type=int, default=None, help="Number of q-coefficients")


def _add_hecke_bounds(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n-max", type=int, default=None)
    parser.add_argument("--min-overlap", type=int, default=None)


def _add_census_bounds(parser: argparse.ArgumentParser) -> None:
    _add_hecke_bounds(parser)
    parser.add_argument("--max-factor-weight", type=int, default=None)
    parser.add_argument("--max-total-weight", type=int, default=None)
    parser.add_argument("--max-delta-iters", type=int, default=None)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--pool", type=_pool, default=None,
                        help="Comma-separated eigenforms, e.g. E4,E6,D12")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nholo",
        description="Exact computations with nearly holomorphic modular forms of level one",
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    form = verbs.add_parser("form", help="q-expansion of E_k or Delta_k")
    form.add_argument("kind", help="E, D, or a full identifier such as E4")
    form.add_argument("weight", type=int, nargs="?", default=None)
    _add_common(form)

    delta = verbs.add_parser("delta", help="delta^(r) of a holomorphic eigenform")
    delta.add_argument("--f", type=_form_id, required=True)
    delta.add_argument("--r", type=int, default=1)
    _add_common(delta)

    hecke = verbs.add_parser("hecke", help="T_n applied to delta^(r)(f)")
    hecke.add_argument("--f", type=_form_id, required=True)
    hecke.add_argument("--n", type=int, required=True)
    hecke.add_argument("--r", type=int, default=0)
    _add_common(hecke)

    bracket = verbs.add_parser("bracket", help="Rankin-Cohen bracket [f, g]_j")
    bracket.add_argument("--f", type=_form_id, required=True)
    bracket.add_argument("--g", type=_form_id, required=True)
    bracket.add_argument("--j", type=int, required=True)
    _add_common(bracket)

    expand = verbs.add_parser("expand", help="Bracket expansion of delta^(r)(f) delta^(s)(g)")
    expand.add_argument("--f", type=_form_id, required=True)
    expand.add_argument("--r", type=int, default=0)
    expand.add_argument("--g", type=_form_id, required=True)
    expand.add_argument("--s", type=int, default=0)
    expand.add_argument("--eigen", action="store_true", help="Also test each bracket for eigen")
    _add_hecke_bounds(expand)
    _add_common(expand)

    check = verbs.add_parser("check", help="Hecke eigen test of delta^(r)(f) [* delta^(s)(g)]")
    check.add_argument("--f", type=_form_id, required=True)
    check.add_argument("--r", type=int, default=0)
    check.add_argument("--g", type=_form_id, default=None)
    check.add_argument("--s", type=int, default=0)
    _add_hecke_bounds(check)
    _add_common(check)

    search = verbs.add_parser("search", help="Classify every product within the bounds")
    _add_census_bounds(search)
    _add_common(search)

    theorem = verbs.add_parser("verify-theorem", help="Compare the census with the classification")
    theorem.add_argument("--default", action="store_true",
                         help="Use the built-in bounds, ignoring environment overrides")
    _add_census_bounds(theorem)
    _add_common(theorem)

    remark = verbs.add_parser("verify-remark", help="2 delta(E_k) E_k = delta(E_k^2), eigen only at k=4")
    remark.add_argument("--k", type=int, nargs="+", default=[4, 6, 8, 10])
    _add_hecke_bounds(remark)
    _add_common(remark)
    return parser


def _precision(args: argparse.Namespace, app_settings: Settings) -> int:
    return args.prec if args.prec is not None else app_settings.default_precision


def _hecke_bounds(args: argparse.Namespace, app_settings: Settings):
    n_max = args.n_max if args.n_max is not None else app_settings.n_max
    min_overlap = args.min_overlap if args.min_overlap is not None else app_settings.min_overlap
    return n_max, min_overlap


def _search_config(args: argparse.Namespace, app_settings: Settings) -> SearchConfig:
    overrides = {
        "max_factor_weight": args.max_factor_weight,
        "max_total_weight": args.max_total_weight,
        "max_delta_iters": args.max_delta_iters,
        "n_max": args.n_max,
        "min_overlap": args.min_overlap,
        "precision": args.prec,
        "workers": args.workers,
        "pool": args.pool,
    }
    if getattr(args, "default", False):
        return SearchConfig(**{key: value for key, value in overrides.items() if value is not None})
    return app_settings.search_config(**overrides)


def run_form(args, app_settings) -> int:
    label = args.kind if args.weight is None else f"{args.kind}{args.weight}"
    try:
        form_id = FormId.parse(label)
    except ValidationError:
        raise argparse.ArgumentTypeError(f"invalid form identifier '{label}'")
    form = build_form(form_id, _precision(args, app_settings))
    if args.json:
        print(to_json(form.to_record()))
    else:
        print(f"{form_id} (weight {form.weight}): {format_qseries(form.series)}")
    return 0


def run_delta(args, app_settings) -> int:
    f = build_form(args.f, _precision(args, app_settings))
    lifted = delta_iter(f, args.r)
    if args.json:
        print(to_json(lifted.to_record()))
    else:
        print(f"delta^{args.r}({args.f}), weight {lifted.weight}")
        print(format_components(lifted.components))
    return 0


def run_hecke(args, app_settings) -> int:
    f = build_form(args.f, _precision(args, app_settings))
    image = hecke_nearly(args.n, delta_iter(f, args.r))
    if args.json:
        print(to_json(image.to_record()))
    else:
        print(f"T_{args.n} delta^{args.r}({args.f}), weight {image.weight}")
        print(format_components(image.components))
    return 0


def run_bracket(args, app_settings) -> int:
    precision = _precision(args, app_settings)
    bracket = rankin_cohen(build_form(args.f, precision), build_form(args.g, precision), args.j)
    if args.json:
        print(to_json(bracket.to_record()))
    else:
        print(f"{bracket.label} (weight {bracket.weight}): {format_qseries(bracket.series)}")
    return 0


def run_expand(args, app_settings) -> int:
    precision = _precision(args, app_settings)
    f, g = build_form(args.f, precision), build_form(args.g, precision)
    n_max, min_overlap = _hecke_bounds(args, app_settings) if args.eigen else (None, None)
    expansion, _ = bracket_terms(f, args.r, g, args.s, n_max, min_overlap)
    if args.json:
        print(to_json(expansion))
        return 0
    print(f"delta^{args.r}({args.f}) * delta^{args.s}({args.g}) "
          f"= sum_j alpha_j delta^({args.r + args.s}-j)([{args.f},{args.g}]_j)")
    for term in expansion.terms:
        status = "zero bracket" if term.bracket_is_zero else "nonzero bracket"
        if term.term_is_eigen is not None:
            status += ", eigen" if term.term_is_eigen else ", not eigen"
        print(f"  j={term.j}: alpha={term.alpha} ({status})")
    return 0


def run_check(args, app_settings) -> int:
    precision = _precision(args, app_settings)
    n_max, min_overlap = _hecke_bounds(args, app_settings)
    g = build_form(args.g, precision) if args.g is not None else None
    product = delta_product(build_form(args.f, precision), args.r, g, args.s)
    description = f"delta^{args.r}({args.f})"
    if g is not None:
        description += f" * delta^{args.s}({args.g})"
    report = eigen_check(product, n_max, min_overlap)
    if args.json:
        print(to_json(report))
    elif report.is_eigen:
        values = ", ".join(f"{n}: {value}" for n, value in report.eigenvalues.items())
        print(f"{description} is an eigenform; eigenvalues {{{values}}}")
    else:
        print(f"{description} is not an eigenform (fails T_{report.failing_n})")
    return 0


def run_search_verb(args, app_settings) -> int:
    report = run_search(_search_config(args, app_settings))
    if args.json:
        for case in report.cases:
            print(to_json(case))
        print(json.dumps({"summary": report.summary()}, separators=(",", ":")))
        return 0
    for case in report.cases:
        f_label, r, g_label, s = case.family
        line = f"delta^{r}({f_label}) * delta^{s}({g_label}) [weight {case.total_weight}]: {case.verdict.value}"
        if case.is_eigen:
            line += f" = {case.match_scale} * {case.eigen_match}"
        else:
            witness = case.witness
            line += f" (T_{witness.n})" if witness.n is not None else f" (terms {witness.terms})"
        print(line)
    print(f"{len(report.eigen_cases)} eigen of {len(report.cases)} products")
    return 0


def run_verify_theorem(args, app_settings) -> int:
    report, _ = verify_theorem(_search_config(args, app_settings))
    if args.json:
        print(to_json(report))
    else:
        print(f"{len(report.found)} eigen product families found")
        for family in report.missing:
            print(f"missing: {family}")
        for family in report.unexpected:
            print(f"unexpected: {family}")
    return 0 if report.matches else 1


def run_verify_remark(args, app_settings) -> int:
    n_max, min_overlap = _hecke_bounds(args, app_settings)
    config = app_settings.search_config(n_max=n_max, min_overlap=min_overlap, precision=args.prec)
    report = verify_remark(args.k, config)
    if args.json:
        print(to_json(report))
    else:
        for entry in report.entries:
            outcome = "ok" if entry.passed else "FAILED"
            print(f"k={entry.k}: identity {'holds' if entry.identity_holds else 'fails'}, "
                  f"{'eigen' if entry.is_eigen else 'not eigen'} [{outcome}]")
    return 0 if report.passed else 1


HANDLERS = {
    "form": run_form,
    "delta": run_delta,
    "hecke": run_hecke,
    "bracket": run_bracket,
    "expand": run_expand,
    "check": run_check,
    "search": run_search_verb,
    "verify-theorem": run_verify_theorem,
    "verify-remark": run_verify_remark,
}


def _report_error(payload: ErrorPayload, as_json: bool) -> None:
    if as_json:
        print(to_json(payload), file=sys.stderr)
    else:
        print(f"error: [{payload.error.code}] {payload.error.message}", file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = getattr(args, "json", False)

    try:
        app_settings = Settings()
    except ValidationError as invalid:
        _report_error(
            ErrorPayload(error=ErrorInfo(
                message="Invalid NHOLO_ environment configuration",
                code="VALIDATION_ERROR",
                details=str(invalid),
            )),
            as_json,
        )
        return 1

    logging.basicConfig(format=app_settings.log_format, level=app_settings.log_level.upper())
    cli_logger.debug(f"Running '{args.verb}'")

    try:
        return HANDLERS[args.verb](args, app_settings)
    except argparse.ArgumentTypeError as usage_error:
        parser.error(str(usage_error))
    except NholoError as failure:
        cli_logger.info(f"'{args.verb}' failed: {failure.message}")
        _report_error(failure.to_payload(), as_json)
        return 1
    except ValidationError as invalid:
        _report_error(
            ErrorPayload(error=ErrorInfo(
                message="Invalid configuration",
                code="VALIDATION_ERROR",
                details=str(invalid),
            )),
            as_json,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
