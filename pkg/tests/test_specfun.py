"""Gamma, log-Gamma, and generalized binomial coefficients."""

import math

import numpy as np
import pytest

from bergmult import DomainError, binomial_coeffs, gamma, log_gamma


def test_gamma_at_one():
    assert gamma(1.0).value == pytest.approx(1.0, rel=1e-14)


def test_gamma_factorial():
    assert gamma(6.0).value == pytest.approx(120.0, rel=1e-13)


def test_gamma_half_integer():
    # Gamma(1.5) = sqrt(pi)/2
    assert gamma(1.5).value == pytest.approx(0.886226925452758, rel=1e-12)
    assert gamma(1.5).value == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-13)


def test_gamma_value_matches_log_value():
    for x in (0.2, 1.0, 3.7, 25.0, 100.0, 169.5):
        g = gamma(x)
        assert g.value == pytest.approx(math.exp(g.log_value), rel=1e-12)


def test_gamma_overflow_reports_inf_with_valid_log():
    g = gamma(500.0)
    assert math.isinf(g.value)
    assert math.isfinite(g.log_value)
    # Stirling check: log Gamma(x) ~ (x-0.5) log x - x + log sqrt(2 pi)
    x = 500.0
    stirling = (x - 0.5) * math.log(x) - x + 0.5 * math.log(2.0 * math.pi)
    assert g.log_value == pytest.approx(stirling, rel=1e-6)


def test_log_gamma_large_argument():
    assert math.isfinite(log_gamma(1e6))


@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan"), float("inf")])
def test_gamma_domain_errors(bad):
    with pytest.raises(DomainError):
        gamma(bad)


def test_gamma_recurrence_consistency(rng):
    # gamma(x+1) / gamma(x) = x, 100 random points in (0.1, 50)
    xs = rng.uniform(0.1, 50.0, size=100)
    for x in xs:
        ratio = gamma(x + 1.0).value / gamma(x).value
        assert ratio == pytest.approx(x, rel=1e-10)


def test_binomial_coeffs_geometric():
    assert np.allclose(binomial_coeffs(1.0, 3), [1.0, 1.0, 1.0, 1.0], rtol=0, atol=0)


def test_binomial_coeffs_linear():
    assert np.allclose(binomial_coeffs(2.0, 3), [1.0, 2.0, 3.0, 4.0], rtol=1e-15)


def test_binomial_coeffs_half():
    out = binomial_coeffs(0.5, 1)
    assert out[0] == 1.0
    assert out[1] == pytest.approx(0.5, rel=1e-15)


@pytest.mark.parametrize("g", [0.3, 1.7, 4.2])
def test_binomial_coeffs_match_gamma_ratio(g):
    coeffs = binomial_coeffs(g, 50)
    for n in range(51):
        direct = math.exp(
            log_gamma(n + g) - log_gamma(n + 1.0) - log_gamma(g)
        )
        assert coeffs[n] == pytest.approx(direct, rel=1e-10)


def test_binomial_coeffs_no_overflow_at_large_n():
    out = binomial_coeffs(2.0, 10_000)
    assert out.shape == (10_001,)
    assert np.isfinite(out).all()
    assert out[-1] == pytest.approx(10_001.0, rel=1e-12)


def test_binomial_coeffs_domain_errors():
    with pytest.raises(DomainError):
        binomial_coeffs(0.0, 4)
    with pytest.raises(DomainError):
        binomial_coeffs(1.0, -1)
