"""Acceptance criteria.

Each test prints one ``[PASS]``/``[FAIL]`` line with the measured numbers,
then asserts. Lines are written past pytest's capture so they appear in a
plain ``pytest -v`` run.
"""

import time
import timeit

import numpy as np
import pytest

from asibeam import fixtures
from asibeam.asi import expand_ula, expand_ura, verify_expansion
from asibeam.geometry import Direction, UlaGeometry, UraGeometry, angle_grid, azimuth_cut
from asibeam.netsim import DeploymentConfig, attach_and_run, drop_ues, generate_layout
from asibeam.patterns import ElementPattern, array_factor_total, fields_ura
from asibeam.synthesis import (
    ArraySetup,
    design_dpbf,
    elevation_phases,
    measured_hpbw,
    printed_dpbf,
    printed_spbf,
    two_element_bisection,
    two_element_hpbw,
    two_element_weights,
    virtualize_subarrays,
    zero_pad,
)
from asibeam.weights import DualPolWeights

ISO = ElementPattern.isotropic()


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str) -> bool:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        return ok

    return emit


def test_criterion_01_golden_ula_expansion(report):
    single = fixtures.single_element()
    w = expand_ula(single, 3)
    exact = np.array_equal(w.w_a, fixtures.ULA8_A) and np.array_equal(w.w_b, fixtures.ULA8_B)
    t = min(timeit.repeat(lambda: expand_ula(single, 3), number=100, repeat=5)) / 100
    ok = exact and t < 1e-3
    assert report(1, ok, f"exact match={exact}, runtime {t * 1e6:.1f} us (limit 1000 us)")


def test_criterion_02_flat_ula_factor(report):
    t0 = time.perf_counter()
    cut = azimuth_cut(0.1)
    worst = 0.0
    for d_y in (0.5, 0.7):
        for k in range(1, 8):
            w = expand_ula(fixtures.single_element(), k)
            n = 2**k
            af = array_factor_total(w, UlaGeometry(n, d_y), cut)
            worst = max(worst, float(np.max(np.abs(af - 2 * n)) / (2 * n)))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-10 and dt < 5.0
    assert report(2, ok, f"max relative deviation {worst:.2e} (limit 1e-10), runtime {dt:.2f} s (limit 5 s)")


def test_criterion_03_flat_ura_factor(report):
    grid = angle_grid(1.0)
    g = UraGeometry(8, 8)
    generated = expand_ura(fixtures.single_element(), 3, 3)
    devs, unit = [], True
    for w in (generated, fixtures.ura8x8()):
        af = array_factor_total(w, g, grid)
        devs.append(float(np.max(np.abs(af - 128.0)) / 128.0))
        unit &= bool(np.all(np.abs(w.w_a) == 1.0) and np.all(np.abs(w.w_b) == 1.0))
    same = generated.allclose(fixtures.ura8x8(), atol=0)
    ok = max(devs) <= 1e-10 and unit
    assert report(3, ok, f"deviation generated {devs[0]:.2e}, printed {devs[1]:.2e} (limit 1e-10), "
                         f"unit modulus={unit}, generated equals printed={same}")


def test_criterion_04_propositions(report):
    rng = np.random.default_rng(2024)
    grid = angle_grid(2.0)
    worst_inner = worst_dev = worst_pointwise = 0.0
    for case in range(50):
        if case < 25:
            n = int(rng.integers(1, 9))
            shape = (n,)
            g1, g2 = UlaGeometry(n, 0.5), UlaGeometry(2 * n, 0.5)
        else:
            shape = (int(rng.integers(1, 5)), int(rng.integers(1, 5)))
        w = DualPolWeights(np.exp(2j * np.pi * rng.random(shape)), np.exp(2j * np.pi * rng.random(shape)))
        if case < 25:
            e = expand_ula(w, 1)
        else:
            vertical = bool(rng.integers(0, 2))
            e = expand_ura(w, int(not vertical), int(vertical))
            g1 = UraGeometry(*shape, 0.5, 0.5)
            g2 = UraGeometry(*e.shape, 0.5, 0.5)
        rep = verify_expansion(w, e, g1, g2, grid)
        worst_inner = max(worst_inner, rep.max_field_inner)
        worst_dev = max(worst_dev, rep.max_pattern_dev)
        p1 = array_factor_total(w, g1, grid)
        p2 = array_factor_total(e, g2, grid)
        sel = p1 > 1e-6 * p1.max()
        worst_pointwise = max(worst_pointwise, float(np.max(np.abs(p2[sel] / (2 * p1[sel]) - 1))))
    ok = worst_inner <= 1e-10 and worst_dev <= 1e-12
    assert report(4, ok, f"max |e1^H e2| {worst_inner:.2e} (limit 1e-10), pattern deviation {worst_dev:.2e} "
                         f"(limit 1e-12, peak-relative); pointwise away from nulls {worst_pointwise:.2e}")


def test_criterion_05_taper_loss(report):
    spbf = printed_spbf().report.taper_loss_db
    dpbf = printed_dpbf().report.taper_loss_db
    ok = abs(spbf - 1.1) <= 0.05 and abs(dpbf) <= 1e-9
    assert report(5, ok, f"SPBF {spbf:.4f} dB (1.1 +/- 0.05), DPBF {dpbf:.2e} dB (0 +/- 1e-9)")


def test_criterion_06_two_element_bisection(report):
    element = ArraySetup().element
    target = two_element_hpbw(np.deg2rad(23.58), element)
    w = two_element_bisection(target, element, tol_deg=0.01)
    err = float(np.max(np.abs(w.w_a - fixtures.DPBF_WY_PROTO_A)))
    gamma = np.deg2rad(23.58)
    cut = azimuth_cut(0.1)
    psi = -np.pi * np.sin(cut.phi)
    af = array_factor_total(two_element_weights(gamma), UlaGeometry(2), cut)
    analytic = float(np.max(np.abs(af - (1 + np.cos(2 * gamma) * np.cos(psi)))))
    ok = err <= 0.01 and analytic <= 1e-12
    assert report(6, ok, f"target HPBW {target:.2f} deg, w_a error {err:.4f} (limit 0.01), "
                         f"analytic factor error {analytic:.1e} (limit 1e-12)")


def test_criterion_07_dpbf_separability(report):
    setup = ArraySetup()
    g = setup.geometry
    design = design_dpbf(setup)
    grid = angle_grid(2.0)
    alpha2 = design.weights.provenance["alpha"] ** 2
    total = array_factor_total(design.weights, g, grid) / alpha2
    # per-plane ingredients as placed on the array: tilted column, padded row
    ph = elevation_phases(setup, 6.0)
    col = UraGeometry(g.m_rows, 1, g.spacing_y, g.spacing_z)
    zw = DualPolWeights(
        (virtualize_subarrays(design.elevation.w_a, setup.subarray_rows, 0.0, g.spacing_z) * ph)[:, None],
        (virtualize_subarrays(design.elevation.w_b, setup.subarray_rows, 0.0, g.spacing_z) * ph)[:, None])
    y = expand_ula(design.azimuth, design.details["azimuth_expansion_k"])
    yw = DualPolWeights(zero_pad(y.w_a, g.n_cols), zero_pad(y.w_b, g.n_cols))
    product = array_factor_total(zw, col, grid) * array_factor_total(yw, UlaGeometry(g.n_cols, g.spacing_y), grid)
    dev = float(np.max(np.abs(total - product)) / np.max(product))
    assert report(7, dev <= 1e-10, f"max |G2D - Gel*Gaz| / max {dev:.2e} (limit 1e-10)")


def test_criterion_08_synthesized_beam_shape(report):
    setup = ArraySetup()
    h = measured_hpbw(design_dpbf(setup), setup)
    az, el = h["azimuth_hpbw_deg"], h["elevation_hpbw_deg"]
    ok = abs(az - 65.0) <= 3.0 and abs(el - 15.0) <= 2.0
    assert report(8, ok, f"azimuth HPBW {az:.2f} deg (65 +/- 3), elevation HPBW {el:.2f} deg (15 +/- 2), "
                         f"peak elevation {h['peak_elevation_deg']:.2f} deg")


def test_criterion_09_network_simulation(report):
    t0 = time.perf_counter()
    setup = ArraySetup()
    cfg = DeploymentConfig(ues_per_cell=75, seed=2024)
    layout = generate_layout(cfg)
    drops = drop_ues(cfg, layout, setup.element)
    beams = {"dpbf": design_dpbf(setup).weights, "spbf": printed_spbf(setup).weights}
    res = attach_and_run(cfg, beams, setup.geometry, setup.element, drops=drops)
    gap = res.median_gap_db("dpbf", "spbf")
    crn = attach_and_run(cfg, {"x": beams["dpbf"], "y": beams["dpbf"]}, setup.geometry, setup.element, drops=drops)
    identical = crn.cdfs["x"] == crn.cdfs["y"]
    dt = time.perf_counter() - t0
    ok = len(res.drops) >= 2000 and 0.5 <= gap <= 2.0 and identical and dt < 60.0
    assert report(9, ok, f"{len(res.drops)} UEs, median DPBF {res.cdfs['dpbf'].median:.2f} dBm, "
                         f"SPBF {res.cdfs['spbf'].median:.2f} dBm, gap {gap:.3f} dB ([0.5, 2.0]), "
                         f"identical-pattern CDFs equal={identical}, runtime {dt:.1f} s")


def test_criterion_10_brute_force_oracle(report):
    rng = np.random.default_rng(10)
    worst = 0.0
    for _ in range(1000):
        m, n = (int(x) for x in rng.integers(1, 4, size=2))
        g = UraGeometry(m, n, float(rng.uniform(0.3, 1.0)), float(rng.uniform(0.3, 1.0)))
        w = DualPolWeights(rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n)),
                           rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n)))
        d = Direction(rng.uniform(-np.pi, np.pi, 8), rng.uniform(0, np.pi, 8))
        ea, eb = fields_ura(w, g, ISO, d)
        ba = np.zeros(8, complex)
        bb = np.zeros(8, complex)
        for k in range(8):
            psi_y = -2 * np.pi * g.spacing_y * np.sin(d.theta[k]) * np.sin(d.phi[k])
            psi_z = -2 * np.pi * g.spacing_z * np.cos(d.theta[k])
            for i in range(m):
                for j in range(n):
                    ph = np.exp(1j * (j * psi_y + i * psi_z))
                    ba[k] += w.w_a[i, j] * ph
                    bb[k] += w.w_b[i, j] * ph
        scale = max(np.max(np.abs(ba)), np.max(np.abs(bb)))
        worst = max(worst, float(max(np.max(np.abs(ea - ba)), np.max(np.abs(eb - bb))) / scale))
    assert report(10, worst <= 1e-12, f"max relative error {worst:.2e} over 1000 cases (limit 1e-12)")
