import pytest

from errors import DomainError, PrecisionError
from forms import (
    HolomorphicForm,
    build_form,
    cusp_dimension,
    cusp_eigenform,
    delta12,
    eisenstein,
)
from models import FormId, FormRecord
from series import QExpansion


def test_eisenstein_e4():
    assert eisenstein(4, 6).series.coeffs == (1, 240, 2160, 6720, 17520, 30240)


def test_eisenstein_e6():
    assert eisenstein(6, 4).series.coeffs == (1, -504, -16632, -122976)


def test_eisenstein_rejects_odd_or_small_weight():
    with pytest.raises(DomainError):
        eisenstein(2, 5)
    with pytest.raises(DomainError):
        eisenstein(5, 5)


def test_delta_is_tau_series():
    assert delta12(6).series.coeffs == (0, 1, -24, 252, -1472, 4830)
    assert delta12(6).is_cusp


def test_delta_needs_two_coefficients():
    with pytest.raises(PrecisionError):
        delta12(1)


def test_weight_sixteen_cusp_form():
    assert cusp_eigenform(16, 4).series.coeffs == (0, 1, 216, -3348)


@pytest.mark.parametrize("weight", [12, 16, 18, 20, 22, 26])
def test_cusp_eigenforms_are_normalized(weight):
    form = cusp_eigenform(weight, 5)
    assert form.series[0] == 0
    assert form.series[1] == 1
    assert form.label == f"D{weight}"


def test_unsupported_cusp_weight():
    with pytest.raises(DomainError):
        cusp_eigenform(14, 5)
    with pytest.raises(DomainError):
        cusp_eigenform(24, 5)


@pytest.mark.parametrize(
    "weight, dimension",
    [(4, 0), (12, 1), (14, 0), (16, 1), (24, 2), (26, 1), (28, 2), (38, 2), (64, 5)],
)
def test_cusp_dimension(weight, dimension):
    assert cusp_dimension(weight) == dimension


def test_build_form_from_identifier():
    assert build_form(FormId.parse("E8"), 3).series.coeffs == (1, 480, 61920)
    assert build_form(FormId.parse("Delta12"), 3).label == "D12"


def test_label_does_not_affect_equality():
    unlabeled = HolomorphicForm(4, eisenstein(4, 5).series)
    assert unlabeled == eisenstein(4, 5)


def test_weight_must_be_even():
    with pytest.raises(DomainError):
        HolomorphicForm(3, QExpansion([1]))


def test_record_serializes_exact_strings():
    record = eisenstein(4, 3).to_record()
    payload = record.model_dump(mode="json")
    assert payload["coefficients"] == ["1", "240", "2160"]
    assert payload["id"] == "E4"
    restored = HolomorphicForm.from_record(FormRecord.model_validate(payload))
    assert restored == eisenstein(4, 3)


IDENTITY_PRECISION = 64


@pytest.mark.parametrize(
    "left, right, product",
    [
        ("E4", "E4", "E8"),
        ("E4", "E6", "E10"),
        ("E4", "E10", "E14"),
        ("E6", "E8", "E14"),
        ("E4", "D12", "D16"),
        ("E6", "D12", "D18"),
        ("E4", "D16", "D20"),
        ("E8", "D12", "D20"),
        ("E4", "D18", "D22"),
        ("E6", "D16", "D22"),
        ("E10", "D12", "D22"),
        ("E4", "D22", "D26"),
        ("E6", "D20", "D26"),
        ("E8", "D18", "D26"),
        ("E10", "D16", "D26"),
        ("D12", "E14", "D26"),
    ],
)
def test_eigenform_products_in_one_dimensional_spaces(left, right, product):
    f = build_form(FormId.parse(left), IDENTITY_PRECISION)
    g = build_form(FormId.parse(right), IDENTITY_PRECISION)
    h = build_form(FormId.parse(product), IDENTITY_PRECISION)
    assert f.weight + g.weight == h.weight
    assert f.series * g.series == h.series
