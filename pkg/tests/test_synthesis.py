import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from asibeam import fixtures
from asibeam.geometry import UlaGeometry, UraGeometry, angle_grid, azimuth_cut
from asibeam.patterns import ElementPattern, array_factor_total, element_gain, total_pattern
from asibeam.synthesis import (
    ArraySetup,
    InfeasibleTargetError,
    OptimizerConfig,
    SynthesisTarget,
    REFERENCE_TARGET,
    apply_tilt,
    build_dpbf_2d,
    build_spbf_2d,
    design_dpbf,
    measured_hpbw,
    normalize_power,
    optimize_phase_only,
    printed_dpbf,
    printed_spbf,
    pattern_variance,
    taper_loss,
    taper_loss_db,
    tilt_phases,
    two_element_bisection,
    two_element_hpbw,
    two_element_weights,
    virtualize_subarrays,
    zero_pad,
)
from asibeam.weights import DualPolWeights

GAUSS = ElementPattern.gaussian(90.0, 90.0)
FAST = OptimizerConfig(seed=3, iterations=30, population=16)


@given(st.lists(st.floats(-np.pi, np.pi), min_size=2, max_size=16))
def test_constant_modulus_has_zero_taper_loss(ph):
    w = DualPolWeights(np.exp(1j * np.array(ph)) * 0.3, np.exp(-1j * np.array(ph)) * 0.3)
    assert taper_loss_db(w) == pytest.approx(0.0, abs=1e-12)


@given(st.lists(st.complex_numbers(min_magnitude=1e-3, max_magnitude=10), min_size=1, max_size=12))
def test_taper_loss_at_least_one(vals):
    a = np.array(vals)
    assert taper_loss(DualPolWeights(a, a)) >= 1.0 - 1e-12


def test_taper_loss_example():
    w = DualPolWeights([1.0, 0.5], [1.0, 0.5])
    assert taper_loss(w) == pytest.approx(4 * 1.0 / 2.5)


@given(st.floats(-10, 60), st.lists(st.floats(0.1, 2.0), min_size=2, max_size=8))
def test_normalize_power_radiates_budget_minus_taper(p_dbm, amps):
    a = np.array(amps)
    w, alpha = normalize_power(DualPolWeights(a, a[::-1]), p_dbm)
    radiated = 10 * np.log10(np.sum(np.abs(w.stacked()) ** 2))
    assert radiated == pytest.approx(p_dbm - taper_loss_db(w), abs=1e-9)
    # the strongest PA runs at exactly its per-PA share
    assert np.max(np.abs(w.stacked())) ** 2 == pytest.approx(10 ** (p_dbm / 10) / w.n_entries, rel=1e-9)
    assert w.power_dbm == p_dbm and alpha > 0


def test_normalize_is_idempotent():
    w, _ = normalize_power(fixtures.ura8x8(), 46.0)
    w2, alpha = normalize_power(w, 46.0)
    assert alpha == pytest.approx(1.0)
    assert w2.allclose(w)


def test_target_validation():
    with pytest.raises(ValueError):
        SynthesisTarget(hpbw_az_deg=0.0)
    with pytest.raises(ValueError):
        SynthesisTarget(shape="cosine")
    with pytest.raises(InfeasibleTargetError):
        OptimizerConfig(population=1)


def test_pattern_variance_small_for_broad_beam_large_for_narrow():
    """Near the peak a broad two-element beam follows the target; a uniform 8-element beam does not."""
    w = two_element_weights(np.deg2rad(30.0))
    assert pattern_variance(w, UlaGeometry(2), GAUSS, SynthesisTarget(65.0, 15.0), sector=(-5, 5)) < 0.05
    bad = pattern_variance(DualPolWeights(np.ones(8), np.ones(8)), UlaGeometry(8), GAUSS, SynthesisTarget(65.0, 15.0))
    assert bad > 1.0


@pytest.mark.parametrize("pol", ["symmetric", "single", "free"])
def test_phase_only_output_is_constant_modulus_and_deterministic(pol):
    w1, rep1 = optimize_phase_only(UlaGeometry(4), GAUSS, SynthesisTarget(65.0, 15.0), FAST,
                                   plane="azimuth", polarization=pol)
    w2, rep2 = optimize_phase_only(UlaGeometry(4), GAUSS, SynthesisTarget(65.0, 15.0), FAST,
                                   plane="azimuth", polarization=pol)
    assert np.max(np.abs(np.abs(w1.stacked()) - 1 / np.sqrt(8))) <= 1e-12
    assert w1.allclose(w2, atol=0) and rep1 == rep2
    assert rep1.taper_loss_db == pytest.approx(0.0, abs=1e-12)
    if pol == "symmetric":
        np.testing.assert_allclose(w1.w_b, np.conj(w1.w_a))


def test_phase_only_geometry_and_mode_checks():
    t = SynthesisTarget()
    with pytest.raises(ValueError):
        optimize_phase_only(UlaGeometry(4), GAUSS, t, FAST, polarization="circular")
    with pytest.raises(TypeError):
        optimize_phase_only(UraGeometry(4, 2), GAUSS, t, FAST, plane="elevation")
    with pytest.raises(ValueError):
        optimize_phase_only(UraGeometry(6, 1), GAUSS, t, FAST, plane="elevation", subarray=4)


def test_two_element_factor_is_analytic():
    gamma = np.deg2rad(23.58)
    w = two_element_weights(gamma)
    d = azimuth_cut(1.0)
    psi = -np.pi * np.sin(d.phi)
    np.testing.assert_allclose(array_factor_total(w, UlaGeometry(2), d), 1 + np.cos(2 * gamma) * np.cos(psi),
                               atol=1e-12)


def test_two_element_hpbw_increases_with_gamma():
    h = [two_element_hpbw(np.deg2rad(g), GAUSS) for g in (5, 15, 25, 35)]
    assert all(a < b for a, b in zip(h, h[1:]))
    assert two_element_hpbw(np.pi / 4, GAUSS) == pytest.approx(90.0, abs=0.05)


def test_bisection_hits_target_and_rejects_unreachable():
    w = two_element_bisection(65.0, GAUSS)
    assert w.provenance["hpbw_deg"] == pytest.approx(65.0, abs=0.1)
    with pytest.raises(InfeasibleTargetError):
        two_element_bisection(20.0, GAUSS)
    with pytest.raises(InfeasibleTargetError):
        two_element_bisection(120.0, GAUSS)


def test_zero_pad_and_overlap_check():
    np.testing.assert_array_equal(zero_pad([1, 2], 4), [1, 2, 0, 0])
    with pytest.raises(ValueError):
        zero_pad([1, 2, 3], 2)
    with pytest.raises(ValueError):
        build_dpbf_2d(np.ones(2), np.ones(2), np.ones(4), np.ones(4))


def test_spbf_is_rank_one_on_both_polarizations():
    W = build_spbf_2d(np.array([1, 2j]), np.array([1, -1, 1j]))
    assert np.linalg.matrix_rank(W.w_a) == 1
    np.testing.assert_array_equal(W.w_a, W.w_b)


def test_dpbf_build_is_constant_modulus_for_constant_modulus_inputs(rng):
    m, n = 4, 4
    za, zb = np.exp(2j * np.pi * rng.random((2, m)))
    ya = zero_pad(np.exp(2j * np.pi * rng.random(n // 2)), n)
    yb = zero_pad(np.exp(2j * np.pi * rng.random(n // 2)), n)
    W = build_dpbf_2d(za, zb, ya, yb)
    np.testing.assert_allclose(np.abs(W.w_a), 1.0, atol=1e-14)
    np.testing.assert_allclose(np.abs(W.w_b), 1.0, atol=1e-14)


def test_virtualization_and_tilt():
    w = virtualize_subarrays([1, 1j], 2, 0.0)
    np.testing.assert_allclose(w, [1, 1, 1j, 1j])
    assert tilt_phases(3, 0.5, 0.0) == pytest.approx(np.ones(3))
    g = UraGeometry(8, 1, 0.5, 0.5)
    tilted = apply_tilt(np.ones(8) / 4, g, 10.0)
    d = angle_grid(0.25, phi_range=(0.0, 0.0))
    af = np.abs(np.exp(1j * np.outer(-np.pi * np.cos(d.theta), np.arange(8))) @ tilted) ** 2
    assert 90.0 - np.rad2deg(d.theta[np.argmax(af)]) == pytest.approx(-10.0, abs=0.25)
    with pytest.raises(TypeError):
        apply_tilt(np.ones(4), UlaGeometry(4), 5.0)


def test_printed_designs_taper_losses():
    assert printed_spbf().report.taper_loss_db == pytest.approx(1.1, abs=0.05)
    assert printed_dpbf().report.taper_loss_db == pytest.approx(0.0, abs=1e-9)


def test_printed_dpbf_beam_points_down():
    setup = ArraySetup()
    h = measured_hpbw(printed_dpbf(), setup)
    assert h["peak_elevation_deg"] == pytest.approx(-REFERENCE_TARGET.tilt_deg, abs=0.5)
    assert h["elevation_hpbw_deg"] == pytest.approx(15.0, abs=1.0)


def test_designed_dpbf_is_deterministic_and_constant_modulus():
    a = design_dpbf(config=FAST)
    b = design_dpbf(config=FAST)
    assert a.weights.allclose(b.weights, atol=0)
    mod = np.abs(a.weights.stacked())
    np.testing.assert_allclose(mod, mod[0], rtol=1e-12)
    assert a.weights.power_dbm == 46.0
