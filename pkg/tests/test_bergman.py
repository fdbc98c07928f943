"""Weighted-norm engine: monomial weights, coefficient norms, oracles."""

import numpy as np
import pytest

from bergmult import (
    DomainError,
    InvalidInputError,
    PowerSeries,
    RationalMap,
    bergman_norm_sq,
    binomial_coeffs,
    dirichlet_norm_sq,
    disk_quadrature_norm_sq,
    growth_norm,
    monomial_weight,
    monomial_weights,
    polynomial_norm_sq,
    Polynomial,
    preset_symbol,
)


# ---------------------------------------------------------------------------
# monomial weights
# ---------------------------------------------------------------------------


def test_weight_zero_index_is_one():
    for alpha in (-0.5, 0.0, 1.0, 2.5):
        assert monomial_weight(alpha, 0) == pytest.approx(1.0, rel=1e-14)


def test_weight_first_index_alpha_zero():
    assert monomial_weight(0.0, 1) == pytest.approx(0.5, rel=1e-12)


def test_weight_harmonic_at_alpha_zero():
    for n in (1, 2, 7, 50, 500):
        assert monomial_weight(0.0, n) == pytest.approx(1.0 / (n + 1), rel=1e-12)


def test_weight_recurrence():
    alpha = 1.7
    w = monomial_weights(alpha, 64).w
    assert w[0] == 1.0
    for n in range(64):
        assert w[n + 1] / w[n] == pytest.approx((n + 1) / (n + alpha + 2), rel=1e-13)
    assert (w > 0).all()


def test_weight_domain_error():
    with pytest.raises(DomainError):
        monomial_weight(-1.0, 3)


# ---------------------------------------------------------------------------
# bergman_norm_sq
# ---------------------------------------------------------------------------


def test_norm_of_constant():
    est = bergman_norm_sq(PowerSeries([1.0]), 0.0)
    assert est.value_sq == pytest.approx(1.0, rel=1e-14)
    assert est.kind == "series"


def test_norm_of_monomial():
    est = bergman_norm_sq(PowerSeries([0.0, 1.0]), 0.0)
    assert est.value_sq == pytest.approx(0.5, rel=1e-12)


def test_norm_geometric_square_closed_form():
    # (1 - 0.5 z)^{-2}: sum (n+1) 0.25^n = (1 - 0.25)^{-2} = 16/9
    coeffs = binomial_coeffs(2.0, 256) * np.power(0.5, np.arange(257.0))
    est = bergman_norm_sq(PowerSeries(coeffs), 0.0)
    assert est.value_sq == pytest.approx(16.0 / 9.0, rel=1e-12)


def test_norm_rotation_invariance(rng):
    coeffs = rng.standard_normal(20) + 1j * rng.standard_normal(20)
    theta = 0.83
    rotated = coeffs * np.exp(1j * theta * np.arange(20))
    a = bergman_norm_sq(PowerSeries(coeffs), 0.7)
    b = bergman_norm_sq(PowerSeries(rotated), 0.7)
    assert a.value_sq == pytest.approx(b.value_sq, rel=1e-14)


def test_norm_monotone_in_alpha(rng):
    coeffs = rng.standard_normal(16)
    lo = bergman_norm_sq(PowerSeries(coeffs), 0.0).value_sq
    hi = bergman_norm_sq(PowerSeries(coeffs), 2.0).value_sq
    assert hi <= lo + 1e-14


# ---------------------------------------------------------------------------
# dirichlet_norm_sq
# ---------------------------------------------------------------------------


def test_dirichlet_examples():
    assert dirichlet_norm_sq(PowerSeries([1.0]), 0.0).value_sq == pytest.approx(1.0)
    assert dirichlet_norm_sq(PowerSeries([0.0, 1.0]), 0.0).value_sq == pytest.approx(1.0)
    assert dirichlet_norm_sq(PowerSeries([0.0, 0.0, 1.0]), 0.0).value_sq == pytest.approx(
        2.0, rel=1e-12
    )


# ---------------------------------------------------------------------------
# growth norm
# ---------------------------------------------------------------------------


def test_growth_norm_of_constant():
    assert growth_norm(PowerSeries([1.0]), 0.0) == pytest.approx(1.0, rel=1e-12)


def test_growth_norm_koebe_schwarzian():
    s_koebe = RationalMap([-6.0], [1.0, 0.0, -2.0, 0.0, 1.0])
    value = growth_norm(s_koebe, 2.0)
    assert value == pytest.approx(6.0, rel=1e-6)
    assert value <= 6.0 * (1.0 + 1e-6)


def test_growth_norm_reference_symbol():
    g0 = preset_symbol("g0", 0.0, 4.0)
    assert growth_norm(g0, 2.0) == pytest.approx(1.0, rel=1e-6)


def test_growth_norm_rejects_interior_pole():
    with pytest.raises(InvalidInputError):
        growth_norm(RationalMap([1.0], [1.0, -2.0]), 1.0)  # pole at 0.5


# ---------------------------------------------------------------------------
# quadrature oracle
# ---------------------------------------------------------------------------


def test_quadrature_constant():
    est = disk_quadrature_norm_sq(PowerSeries([1.0]), 0.0)
    assert est.value_sq == pytest.approx(1.0, abs=1e-10)
    assert est.kind == "quadrature"


def test_quadrature_monomial():
    est = disk_quadrature_norm_sq(PowerSeries([0.0, 1.0]), 0.0)
    assert est.value_sq == pytest.approx(0.5, abs=1e-8)


def test_quadrature_geometric_square():
    coeffs = binomial_coeffs(2.0, 128) * np.power(0.5, np.arange(129.0))
    est = disk_quadrature_norm_sq(PowerSeries(coeffs), 0.0)
    assert est.value_sq == pytest.approx(16.0 / 9.0, rel=1e-6)


@pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.5])
def test_quadrature_agrees_with_coefficient_norm(alpha, rng):
    # 50 random polynomials split across the four weights
    for _ in range(13):
        deg = int(rng.integers(0, 13))
        coeffs = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
        series = PowerSeries(coeffs)
        exact = bergman_norm_sq(series, alpha).value_sq
        quad = disk_quadrature_norm_sq(series, alpha).value_sq
        assert quad == pytest.approx(exact, rel=1e-6)


def test_polynomial_norm_matches_series_norm(rng):
    coeffs = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    a = polynomial_norm_sq(Polynomial(coeffs), 1.2).value_sq
    b = bergman_norm_sq(PowerSeries(coeffs), 1.2).value_sq
    assert a == pytest.approx(b, rel=1e-14)
