import random
from fractions import Fraction

import pytest

from errors import DomainError, PrecisionError
from forms import HolomorphicForm, cusp_eigenform, eisenstein
from hecke import (
    eigen_check,
    eigenvalue_maps_differ,
    hecke_form,
    hecke_holomorphic,
    hecke_nearly,
    hecke_precision,
)
from nearly import (
    delta_iter,
    from_holomorphic,
    maass_iter,
    maass_shimura,
    nmul,
    nscale,
    zero_form,
)
from series import QExpansion, scale, sigma

TAU = {2: -24, 3: 252, 4: -1472, 5: 4830, 6: -6048, 7: -16744, 8: 84480}


def test_output_precision():
    assert hecke_precision(33, 2) == 17
    assert hecke_precision(33, 8) == 5
    assert hecke_precision(5, 5) == 1


def test_t2_on_e4(e4):
    image = hecke_holomorphic(2, 4, e4.series.truncate(11))
    assert image.precision == 6
    assert image == scale(9, e4.series.truncate(6))


def test_constant_term_uses_divisor_sum(e4):
    image = hecke_holomorphic(6, 4, e4.series)
    assert image[0] == sigma(6, 3)


def test_t1_is_identity(e4):
    assert hecke_holomorphic(1, 4, e4.series) == e4.series


def test_hecke_refuses_too_little_precision():
    with pytest.raises(PrecisionError):
        hecke_holomorphic(5, 4, eisenstein(4, 5).series)
    with pytest.raises(DomainError):
        hecke_holomorphic(0, 4, eisenstein(4, 5).series)


def test_hecke_multiplicativity_for_coprime_indices():
    f = HolomorphicForm(12, eisenstein(4, 61).series * eisenstein(8, 61).series)
    composed = hecke_form(2, hecke_form(3, f))
    assert composed.series == hecke_form(6, f).series


def test_hecke_recursion_at_prime_square():
    f = HolomorphicForm(12, eisenstein(4, 61).series * eisenstein(8, 61).series)
    twice = hecke_form(2, hecke_form(2, f)).series
    expected = hecke_form(4, f).series + scale(2 ** 11, f.series.truncate(16))
    assert twice == expected


def test_hecke_commutes_with_delta_on_a_non_eigen_form():
    f = HolomorphicForm(12, eisenstein(4, 21).series * eisenstein(8, 21).series)
    left = hecke_nearly(2, delta_iter(f, 1))
    right = nscale(2, maass_shimura(from_holomorphic(hecke_form(2, f))))
    assert left == right


@pytest.mark.parametrize("weight", [4, 6, 12])
@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_hecke_commutes_with_delta_iterates(weight, m, n):
    f = cusp_eigenform(12, 25) if weight == 12 else eisenstein(weight, 25)
    left = hecke_nearly(n, delta_iter(f, m))
    right = nscale(n ** m, maass_iter(from_holomorphic(hecke_form(n, f)), m))
    assert left == right


SPAN_PRECISION = 61
# exponents (a, b) of E4^a E6^b spanning M_k
SPAN_MONOMIALS = {12: [(3, 0), (0, 2)], 16: [(4, 0), (1, 2)], 20: [(5, 0), (2, 2)]}


def _random_span_element(rng, weight):
    e4 = eisenstein(4, SPAN_PRECISION).series
    e6 = eisenstein(6, SPAN_PRECISION).series
    total = QExpansion.zero(SPAN_PRECISION)
    for a, b in SPAN_MONOMIALS[weight]:
        monomial = QExpansion.one(SPAN_PRECISION)
        for factor in [e4] * a + [e6] * b:
            monomial = monomial * factor
        total = total + scale(Fraction(rng.randint(-30, 30), rng.randint(1, 6)), monomial)
    return HolomorphicForm(weight, total)


@pytest.mark.parametrize("weight", sorted(SPAN_MONOMIALS))
def test_hecke_algebra_laws_on_random_span_elements(weight):
    rng = random.Random(weight)
    for _ in range(3):
        f = _random_span_element(rng, weight)
        assert hecke_form(2, hecke_form(3, f)).series == hecke_form(6, f).series
        assert hecke_form(3, hecke_form(2, f)).series == hecke_form(6, f).series
        twice = hecke_form(2, hecke_form(2, f)).series
        assert twice == hecke_form(4, f).series + scale(2 ** (weight - 1), f.series.truncate(16))


def test_e4_is_eigen_with_divisor_sum_eigenvalues(e4):
    report = eigen_check(from_holomorphic(e4))
    assert report.is_eigen
    assert report.tested_n == [2, 3, 4, 5, 6, 7, 8]
    assert report.eigenvalues == {n: sigma(n, 3) for n in range(2, 9)}
    assert report.limiting_precision == 5
    assert report.failing_n is None


def test_delta_eigenvalues_are_tau(delta):
    report = eigen_check(from_holomorphic(delta))
    assert report.is_eigen
    assert report.eigenvalues == TAU


def test_delta_iterate_eigenvalues_gain_a_factor_n(e4):
    report = eigen_check(delta_iter(e4, 1))
    assert report.is_eigen
    assert report.eigenvalues[2] == 18
    assert report.eigenvalues == {n: n * sigma(n, 3) for n in range(2, 9)}


def test_delta_e4_times_e4_is_eigen(e4):
    product = nmul(delta_iter(e4, 1), from_holomorphic(e4))
    report = eigen_check(product)
    assert report.is_eigen
    assert report.eigenvalues == {n: n * sigma(n, 7) for n in range(2, 9)}


def test_e4_e8_is_not_eigen(e4, e8):
    report = eigen_check(nmul(from_holomorphic(e4), from_holomorphic(e8)))
    assert not report.is_eigen
    assert report.failing_n == 2
    assert report.eigenvalues == {}


def test_e4_cubed_is_not_eigen(e4):
    f = from_holomorphic(e4)
    assert not eigen_check(nmul(nmul(f, f), f)).is_eigen


def test_eigen_check_refuses_low_precision():
    with pytest.raises(PrecisionError):
        eigen_check(from_holomorphic(eisenstein(4, 10)))
    # n_max=2, min_overlap=2 needs only 3 coefficients
    assert eigen_check(from_holomorphic(eisenstein(4, 3)), n_max=2, min_overlap=2).is_eigen


def test_eigen_check_argument_domain(e4):
    with pytest.raises(DomainError):
        eigen_check(zero_form(4, 33))
    with pytest.raises(DomainError):
        eigen_check(from_holomorphic(e4), n_max=1)
    with pytest.raises(DomainError):
        eigen_check(from_holomorphic(e4), min_overlap=1)


def test_vanishing_prefix_raises():
    lacunary = HolomorphicForm(12, QExpansion.monomial(31, 33))
    with pytest.raises(PrecisionError):
        eigen_check(from_holomorphic(lacunary))


def test_eigenvalue_maps_differ(e4, e6):
    first = eigen_check(from_holomorphic(e4))
    second = eigen_check(from_holomorphic(e6))
    assert eigenvalue_maps_differ(first, second)
    assert not eigenvalue_maps_differ(first, first)
    f = from_holomorphic(e4)
    not_eigen = eigen_check(nmul(nmul(f, f), f))
    assert not not_eigen.is_eigen
    with pytest.raises(DomainError):
        eigenvalue_maps_differ(first, not_eigen)


def test_eigenvalues_are_exact_rationals(e4):
    report = eigen_check(from_holomorphic(e4))
    assert all(isinstance(value, Fraction) for value in report.eigenvalues.values())
    assert report.model_dump(mode="json")["eigenvalues"]["2"] == "9"
