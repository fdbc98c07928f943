"""Multiplier-norm machinery: matrices, compressions, probes, Volterra."""

import math

import numpy as np
import pytest

from bergmult import (
    DomainError,
    InvalidInputError,
    MultiplierSpec,
    OperatorMatrix,
    Polynomial,
    PowerSeries,
    RationalMap,
    bergman_norm_sq,
    claim_boundedness_probe,
    compression_norm_sq,
    dilate_symbol,
    g0_norm_sq,
    koebe_norm_sq,
    monomial_weights,
    operator_matrix,
    preset_symbol,
    rotate_symbol,
    volterra_i_norm_sq,
    volterra_j_norm_sq,
)
from bergmult import test_family_rayleigh as radial_probe
from bergmult.series import rational_to_series


def _spec(alpha=0.0, beta=4.0, name="g0"):
    return MultiplierSpec(alpha=alpha, beta=beta, symbol=preset_symbol(name, alpha, beta))


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def test_koebe_closed_form_values():
    assert koebe_norm_sq(0.0) == pytest.approx(67.5, rel=1e-12)
    assert koebe_norm_sq(1.0) == pytest.approx(57.6, rel=1e-12)
    assert koebe_norm_sq(2.0) == pytest.approx(52.5, rel=1e-12)


def test_koebe_closed_form_asymptote():
    assert koebe_norm_sq(1e6) == pytest.approx(36.0, rel=1e-4)


def test_koebe_domain_error():
    with pytest.raises(DomainError):
        koebe_norm_sq(-1.0)


def test_reference_symbol_closed_form():
    assert g0_norm_sq(0.0, 4.0) == pytest.approx(1.875, rel=1e-12)
    assert g0_norm_sq(0.0, 2.0) == pytest.approx(1.5, rel=1e-12)


# ---------------------------------------------------------------------------
# operator_matrix
# ---------------------------------------------------------------------------


def test_matrix_constant_symbol_is_diagonal():
    spec = _spec(name="one")
    mat = operator_matrix(spec, n_cols=5, n_rows=8).entries
    w0 = monomial_weights(0.0, 8).w
    w4 = monomial_weights(4.0, 8).w
    for m in range(9):
        for n in range(6):
            want = math.sqrt(w4[m] / w0[m]) if m == n else 0.0
            assert mat[m, n] == pytest.approx(want, abs=1e-14)


def test_matrix_shift_symbol_is_subdiagonal():
    spec = MultiplierSpec(alpha=1.0, beta=1.0, symbol=Polynomial([0.0, 1.0]))
    mat = operator_matrix(spec, n_cols=4, n_rows=6).entries
    w = monomial_weights(1.0, 6).w
    for m in range(7):
        for n in range(5):
            want = math.sqrt(w[n + 1] / w[n]) if m == n + 1 else 0.0
            assert mat[m, n] == pytest.approx(want, abs=1e-14)


def test_matrix_block_matches_column_norms():
    # g = (1-z)^{-1}, alpha=0, beta=2: column n of the matrix realizes
    # M_g z^n / sqrt(w_n(0)) in the beta-orthonormal basis, so its
    # squared euclidean length must equal ||g z^n||^2_2 / w_n(0).
    g = RationalMap([1.0], [1.0, -1.0])
    spec = MultiplierSpec(alpha=0.0, beta=2.0, symbol=g)
    n_rows = 400
    mat = operator_matrix(spec, n_cols=2, n_rows=n_rows).entries
    w0 = monomial_weights(0.0, 2).w
    series = rational_to_series(g, n_rows)
    for n in range(3):
        shifted = np.zeros(n_rows + 1, dtype=np.complex128)
        shifted[n:] = series.coeffs[: n_rows + 1 - n]
        col_sq = float((np.abs(mat[:, n]) ** 2).sum())
        want = bergman_norm_sq(PowerSeries(shifted), 2.0).value_sq / w0[n]
        assert col_sq == pytest.approx(want, rel=1e-9)


def test_matrix_rejects_short_series_symbol():
    spec = MultiplierSpec(alpha=0.0, beta=4.0, symbol=PowerSeries([1.0, 1.0]))
    with pytest.raises(InvalidInputError):
        operator_matrix(spec, n_cols=4, n_rows=16)


def test_spec_rejects_beta_below_alpha():
    with pytest.raises(DomainError):
        MultiplierSpec(alpha=1.0, beta=0.5, symbol=PowerSeries([1.0]))
    with pytest.raises(DomainError):
        MultiplierSpec(alpha=-1.0, beta=1.0, symbol=PowerSeries([1.0]))


# ---------------------------------------------------------------------------
# compression_norm_sq
# ---------------------------------------------------------------------------


def test_compression_of_diagonal():
    mat = OperatorMatrix(entries=np.diag([3.0, 1.0, 2.0]).astype(np.complex128), tail_hint=0.0)
    assert compression_norm_sq(mat).value_sq == pytest.approx(9.0, rel=1e-10)


def test_compression_constant_symbol():
    est = compression_norm_sq(operator_matrix(_spec(name="one"), n_cols=32, n_rows=128))
    assert est.value_sq == pytest.approx(1.0, rel=1e-10)
    assert est.kind == "lower-bound"


def test_compression_reference_symbol_bracket():
    est = compression_norm_sq(operator_matrix(_spec(), n_cols=512, n_rows=2048))
    assert 1.5 <= est.value_sq <= 1.875 * (1.0 + 1e-9)


def test_compression_monotone_and_bounded():
    closed = g0_norm_sq(0.0, 4.0)
    previous = 0.0
    for n_cols in (32, 64, 128, 256, 512, 1024):
        est = compression_norm_sq(operator_matrix(_spec(), n_cols=n_cols, n_rows=4 * n_cols))
        assert est.value_sq >= previous - 1e-12
        assert est.value_sq <= closed * (1.0 + 1e-9)
        previous = est.value_sq


def test_compression_agrees_with_svd(rng):
    entries = rng.standard_normal((40, 16)) + 1j * rng.standard_normal((40, 16))
    est = compression_norm_sq(OperatorMatrix(entries=entries, tail_hint=0.0))
    top = np.linalg.svd(entries, compute_uv=False)[0]
    assert est.value_sq == pytest.approx(top * top, rel=1e-9)


# ---------------------------------------------------------------------------
# symbol transforms
# ---------------------------------------------------------------------------


def test_dilation_monotonicity():
    closed = g0_norm_sq(0.0, 4.0)
    g0 = preset_symbol("g0", 0.0, 4.0)
    for a in (0.5, 0.9, 0.99, 0.7j):
        spec = MultiplierSpec(alpha=0.0, beta=4.0, symbol=dilate_symbol(g0, a))
        est = compression_norm_sq(operator_matrix(spec, n_cols=128, n_rows=512))
        assert est.value_sq <= closed * (1.0 + 1e-9)


def test_rotation_invariance():
    # Rotation multiplies matrix entries by unimodular factors, a unitary
    # equivalence; the estimates agree to rounding (the factors e^{i n theta}
    # themselves carry one ulp of phase error, so bit-exactness is out).
    base = compression_norm_sq(operator_matrix(_spec(), n_cols=64, n_rows=256)).value_sq
    for theta in (math.pi, math.pi / 2.0, 0.7):
        spec = MultiplierSpec(
            alpha=0.0, beta=4.0, symbol=rotate_symbol(preset_symbol("g0", 0.0, 4.0), theta)
        )
        rotated = compression_norm_sq(operator_matrix(spec, n_cols=64, n_rows=256)).value_sq
        assert rotated == pytest.approx(base, rel=1e-12)


def test_scaling_by_complex_constant():
    base = compression_norm_sq(operator_matrix(_spec(), n_cols=64, n_rows=256)).value_sq
    g = preset_symbol("g0", 0.0, 4.0)
    scaled_symbol = RationalMap(g.num * (3.0 - 4.0j), g.den)
    spec = MultiplierSpec(alpha=0.0, beta=4.0, symbol=scaled_symbol)
    scaled = compression_norm_sq(operator_matrix(spec, n_cols=64, n_rows=256)).value_sq
    assert scaled == pytest.approx(25.0 * base, rel=1e-12)


def test_dilation_rejects_modulus_one():
    with pytest.raises(DomainError):
        dilate_symbol(preset_symbol("g0", 0.0, 4.0), 1.0)


# ---------------------------------------------------------------------------
# radial test family
# ---------------------------------------------------------------------------


def test_rayleigh_soundness_reference_symbol():
    spec = _spec()
    closed = g0_norm_sq(0.0, 4.0)
    for lam in (1.01, 1.5, 2.0):
        for r in (0.9, 0.99):
            probe = radial_probe(spec, lam, r, family="one_minus_rz_sq")
            assert probe.rayleigh_sq <= closed * (1.0 + 1e-9)


def test_rayleigh_soundness_koebe_schwarzian():
    spec = _spec(name="koebe-schwarzian")
    closed = koebe_norm_sq(0.0)
    for r in (0.9, 0.99):
        probe = radial_probe(spec, 1.01, r)
        assert probe.rayleigh_sq <= closed * (1.0 + 1e-9)


def test_rayleigh_monotone_toward_reference_limit():
    spec = _spec()
    values = [
        radial_probe(spec, 1.01, r, family="one_minus_rz_sq").rayleigh_sq
        for r in (0.9, 0.99, 0.999, 0.9999)
    ]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert values[-1] >= 0.90 * 1.875


def test_rayleigh_domain_errors():
    spec = _spec()
    with pytest.raises(DomainError):
        radial_probe(spec, 1.01, 1.5)
    with pytest.raises(DomainError):
        radial_probe(spec, 0.9, 0.5)  # 2*0.9 < alpha + 2
    with pytest.raises(InvalidInputError):
        radial_probe(spec, 1.5, 0.5, family="unknown")


# ---------------------------------------------------------------------------
# Volterra reductions
# ---------------------------------------------------------------------------


def test_volterra_j_closed_form():
    spec = _spec(name="g2")
    est = volterra_j_norm_sq(spec)
    assert est.value_sq == pytest.approx(30.0, rel=1e-12)
    assert est.kind == "closed-form"


def test_volterra_j_zero_symbol():
    spec = MultiplierSpec(alpha=0.0, beta=4.0, symbol=PowerSeries([0.0]))
    assert volterra_j_norm_sq(spec).value_sq == 0.0


def test_volterra_remark_normalization():
    # 2^{-(beta-alpha)} * ||g2||_J^2 equals the g0 closed form at (0,4)
    spec = _spec(name="g2")
    value = volterra_j_norm_sq(spec).value_sq
    assert 2.0 ** (-4.0) * value == pytest.approx(g0_norm_sq(0.0, 4.0), rel=1e-12)


def test_volterra_i_closed_form():
    g3 = preset_symbol("g3", 0.0, 4.0)
    est = volterra_i_norm_sq(g3, 0.0, 4.0)
    assert est.value_sq == pytest.approx(30.0, rel=1e-12)


def test_volterra_i_constant_symbol():
    assert volterra_i_norm_sq(PowerSeries([5.0]), 0.0, 4.0).value_sq == 0.0


def test_volterra_i_identity_symbol():
    est = volterra_i_norm_sq(Polynomial([0.0, 1.0]), 0.0, 0.0)
    assert est.value_sq == pytest.approx(1.0, rel=1e-9)


def test_volterra_numeric_lower_bound_stays_below_closed_form():
    spec = _spec(name="g2")
    est = volterra_j_norm_sq(spec, n_cols=256, force_numeric=True)
    assert est.kind == "lower-bound"
    assert est.value_sq <= 30.0 * (1.0 + 1e-9)
    assert est.value_sq >= 15.0


# ---------------------------------------------------------------------------
# claim boundedness probes
# ---------------------------------------------------------------------------


def test_claim_probe_t2_bounded_within_factor_two():
    values = claim_boundedness_probe(
        lambda z: np.ones_like(z), 1.2, 0.0, "T2", (0.9, 0.99, 0.999)
    )
    values = np.asarray(values, dtype=float)
    assert values.max() <= 2.0 * values.min()


def test_claim_probe_t4_bounded_trend():
    values = claim_boundedness_probe(
        lambda z: np.ones_like(z), 1.2, math.pi, "T4", (0.9, 0.99, 0.999)
    )
    values = np.asarray(values, dtype=float)
    assert np.isfinite(values).all()
    assert values.max() <= 5.0 * max(values.min(), 1e-12)


def test_claim_probe_zero_integrand():
    values = claim_boundedness_probe(
        lambda z: np.zeros_like(z), 1.2, 0.0, "T1", (0.9, 0.99)
    )
    assert np.allclose(values, 0.0, atol=1e-14)


def test_claim_probe_exponent_window_enforced():
    with pytest.raises(DomainError):
        claim_boundedness_probe(lambda z: np.ones_like(z), 1.6, 0.0, "T2", (0.9,))
    with pytest.raises(DomainError):
        claim_boundedness_probe(lambda z: np.ones_like(z), 0.9, 0.0, "T2", (0.9,))
