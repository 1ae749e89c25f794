"""
Cell-specific broad-beam design.

Elevation and azimuth are designed separately and combined into a 2D
excitation: a rank-one outer product for single-polarization beamforming
(SPBF), or the dual-polarization (DPBF) construction that places a reversed,
conjugated copy of the azimuth weights on the complementary columns so that
all entries keep a constant modulus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import differential_evolution

from .asi import expand_ula
from .geometry import Direction, Geometry, UlaGeometry, UraGeometry, azimuth_cut, elevation_cut
from .patterns import ElementPattern, NoHalfPowerCrossing, element_gain, measure_hpbw, total_pattern
from .weights import DualPolWeights

_FOUR_LN2 = 4.0 * np.log(2.0)

DEFAULT_SECTOR_AZ = (-60.0, 60.0)
DEFAULT_SECTOR_EL = (-15.0, 15.0)


class InfeasibleTargetError(ValueError):
    """The requested beam cannot be produced with the given constraints."""


@dataclass(frozen=True)
class SynthesisTarget:
    """Gaussian target beam, peak at azimuth 0 and elevation ``-tilt_deg``."""

    hpbw_az_deg: float = 65.0
    hpbw_el_deg: float = 15.0
    tilt_deg: float = 0.0
    shape: str = "gaussian"

    def __post_init__(self):
        if self.shape != "gaussian":
            raise ValueError("only gaussian targets are supported")
        for hpbw in (self.hpbw_az_deg, self.hpbw_el_deg):
            if not 0.0 < hpbw < 180.0:
                raise ValueError("target HPBW must lie in (0, 180) degrees")

    def gain(self, d: Direction) -> np.ndarray:
        d_az = np.rad2deg(np.angle(np.exp(1j * d.phi)))
        el = 90.0 - np.rad2deg(d.theta)
        x = (d_az / self.hpbw_az_deg) ** 2 + ((el + self.tilt_deg) / self.hpbw_el_deg) ** 2
        return np.exp(-_FOUR_LN2 * x)


@dataclass(frozen=True)
class ObjectiveReport:
    pattern_variance_db2: float
    taper_loss_db: float

    def __post_init__(self):
        if self.taper_loss_db < -1e-12:
            raise ValueError("taper loss cannot be negative")


@dataclass(frozen=True)
class OptimizerConfig:
    seed: int = 0
    iterations: int = 200
    population: int = 40

    def __post_init__(self):
        if self.population < 2:
            raise InfeasibleTargetError("population must be at least 2")
        if self.iterations < 1:
            raise InfeasibleTargetError("iterations must be at least 1")


# -- power utilization -------------------------------------------------------


def taper_loss(w: DualPolWeights) -> float:
    """``2MN max|w|^2 / ||w||^2`` over both polarizations (linear, >= 1)."""
    s = np.abs(w.stacked()) ** 2
    total = s.sum()
    if total == 0:
        raise ValueError("all weights are zero")
    return float(s.size * s.max() / total)


def taper_loss_db(w: DualPolWeights) -> float:
    return float(10.0 * np.log10(taper_loss(w)))


def normalize_power(w: DualPolWeights, p_bs_dbm: float) -> tuple[DualPolWeights, float]:
    """Scale weights to the largest power that overloads no amplifier.

    Each of the ``2MN`` amplifiers may deliver ``P_BS / 2MN``. With
    ``alpha = sqrt(P_BS / (L_taper ||w||^2))`` the strongest entry meets that
    cap exactly and the radiated total is ``P_BS / L_taper``. Amplitudes are
    in sqrt(mW).
    """
    p_mw = 10.0 ** (p_bs_dbm / 10.0)
    norm2 = float(np.sum(np.abs(w.stacked()) ** 2))
    if norm2 == 0:
        raise ValueError("all weights are zero")
    alpha = float(np.sqrt(p_mw / (taper_loss(w) * norm2)))
    out = w.scaled(alpha)
    return DualPolWeights(out.w_a, out.w_b, power_dbm=float(p_bs_dbm), provenance=dict(w.provenance)), alpha


# -- pattern objective -------------------------------------------------------


def plane_cut(plane: str, target: SynthesisTarget, step_deg: float = 0.25) -> tuple[Direction, np.ndarray]:
    """Principal cut through the target peak and its angle relative to the peak.

    ``azimuth``: phi sweep at the peak zenith; ``elevation``: theta sweep at
    phi = 0, angle measured as elevation ``90 - theta`` plus the tilt.
    """
    if plane == "azimuth":
        d = azimuth_cut(step_deg, zenith_deg=90.0 + target.tilt_deg)
        return d, np.rad2deg(d.phi)
    if plane == "elevation":
        d = elevation_cut(step_deg)
        return d, 90.0 - np.rad2deg(d.theta) + target.tilt_deg
    raise ValueError(f"unknown plane {plane!r}")


def pattern_variance(
    w: DualPolWeights,
    g: Geometry,
    p: ElementPattern,
    target: SynthesisTarget,
    sector: Optional[tuple[float, float]] = None,
    plane: str = "azimuth",
    step_deg: float = 0.25,
) -> float:
    """Variance over the sector of the dB difference between target and pattern.

    Both patterns are normalized to their own peak first; ``sector`` is in
    degrees relative to the target peak along the cut.
    """
    sector = sector or (DEFAULT_SECTOR_AZ if plane == "azimuth" else DEFAULT_SECTOR_EL)
    d, rel = plane_cut(plane, target, step_deg)
    sel = (rel >= sector[0]) & (rel <= sector[1])
    if not np.any(sel):
        raise ValueError(f"sector {sector} is empty")
    achieved = total_pattern(w, g, p, d).total_power
    return _variance_db(achieved, target.gain(d), sel)


def _variance_db(achieved: np.ndarray, target: np.ndarray, sel: np.ndarray) -> float:
    tiny = np.finfo(float).tiny
    a = 10.0 * np.log10(np.maximum(achieved / achieved.max(), tiny))
    t = 10.0 * np.log10(np.maximum(target / target.max(), tiny))
    return float(np.var(t[sel] - a[sel]))


# -- phase-only optimization -------------------------------------------------


def optimize_phase_only(
    g: Geometry,
    p: ElementPattern,
    target: SynthesisTarget,
    config: OptimizerConfig = OptimizerConfig(),
    *,
    plane: str = "azimuth",
    polarization: str = "symmetric",
    subarray: int = 1,
    sector: Optional[tuple[float, float]] = None,
    mask_weight: float = 1.0,
) -> tuple[DualPolWeights, ObjectiveReport]:
    """Constant-modulus weight search for one principal plane.

    ``g`` is a :class:`UlaGeometry` for ``plane="azimuth"`` or a single
    column :class:`UraGeometry` (``n_cols == 1``) for ``plane="elevation"``.
    With ``subarray > 1`` the search runs over subarray ports, each feeding
    ``subarray`` adjacent rows in phase.

    ``polarization`` selects how polarization B follows A:
    ``"symmetric"`` (conjugate, giving a pattern symmetric about the
    peak), ``"single"`` (identical, SPBF) or ``"free"`` (independent phases).

    The whole population is scored per generation before any update, so the
    search trajectory depends only on ``config.seed``.

    The scalar cost is the in-sector dB variance plus ``mask_weight`` times
    the mean squared excess of the pattern over the sector-edge level
    outside the sector. Every returned entry has modulus
    ``1/sqrt(2 n_ports)``; taper loss is therefore 0 dB.
    """
    if polarization not in ("symmetric", "single", "free"):
        raise ValueError(f"unknown polarization mode {polarization!r}")
    n_elem, steer = _plane_steering(g, plane, target)
    if n_elem % subarray:
        raise ValueError(f"{n_elem} elements do not split into subarrays of {subarray}")
    n_ports = n_elem // subarray
    sector = sector or (DEFAULT_SECTOR_AZ if plane == "azimuth" else DEFAULT_SECTOR_EL)
    d, rel = plane_cut(plane, target)
    amp = np.sqrt(element_gain(p, d))
    # fold the subarray feed and element pattern into a port steering matrix
    port_steer = steer.reshape(steer.shape[0], n_ports, subarray).sum(axis=2) * amp[:, None]
    tgt = target.gain(d)
    visible = np.abs(rel) <= 90.0
    sel = (rel >= sector[0]) & (rel <= sector[1])
    out = visible & ~sel
    tiny = np.finfo(float).tiny
    t_db = 10.0 * np.log10(np.maximum(tgt / tgt.max(), tiny))
    edge_db = float(np.min(t_db[sel]))
    scale = 1.0 / np.sqrt(2.0 * n_ports)
    n_var = 2 * n_ports if polarization == "free" else n_ports

    def weights_from(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        if polarization == "free":
            wa = np.exp(1j * x[:n_ports]) * scale
            wb = np.exp(1j * x[n_ports:]) * scale
        else:
            wa = np.exp(1j * x) * scale
            wb = np.conj(wa) if polarization == "symmetric" else wa
        return wa, wb

    def cost(xs: np.ndarray) -> np.ndarray:
        # vectorized: one column per population member
        wa, wb = weights_from(xs.reshape(n_var, -1))
        pw = np.abs(port_steer @ wa) ** 2 + np.abs(port_steer @ wb) ** 2
        a_db = 10.0 * np.log10(np.maximum(pw / pw.max(axis=0), tiny))
        var = np.var(t_db[sel, None] - a_db[sel], axis=0)
        excess = np.maximum(a_db[out] - edge_db, 0.0)
        return var + mask_weight * np.mean(excess**2, axis=0)

    res = differential_evolution(
        cost,
        bounds=[(-np.pi, np.pi)] * n_var,
        maxiter=config.iterations,
        popsize=max(1, -(-config.population // n_var)),
        rng=config.seed,
        tol=0.0,
        polish=False,
        updating="deferred",
        vectorized=True,
        init="latinhypercube",
    )
    x = np.angle(np.exp(1j * res.x))
    wa, wb = weights_from(x)
    w = DualPolWeights(wa, wb, provenance={
        "plane": plane, "polarization": polarization, "subarray": subarray,
        "seed": config.seed, "iterations": config.iterations, "population": config.population,
        "cost": float(res.fun),
    })
    pw = np.abs(port_steer @ wa) ** 2 + np.abs(port_steer @ wb) ** 2
    report = ObjectiveReport(_variance_db(pw, tgt, sel), taper_loss_db(w))
    return w, report


def _plane_steering(g: Geometry, plane: str, target: SynthesisTarget) -> tuple[int, np.ndarray]:
    d, _ = plane_cut(plane, target)
    if plane == "azimuth":
        if not isinstance(g, UlaGeometry):
            raise TypeError("azimuth designs need a UlaGeometry")
        n = np.arange(g.n_elements)
        psi = -2.0 * np.pi * g.spacing_y * np.sin(d.theta) * np.sin(d.phi)
        return g.n_elements, np.exp(1j * np.outer(psi, n))
    if not isinstance(g, UraGeometry) or g.n_cols != 1:
        raise TypeError("elevation designs need a single-column UraGeometry")
    m = np.arange(g.m_rows)
    psi = -g.z_phase_factor * np.pi * g.spacing_z * np.cos(d.theta)
    return g.m_rows, np.exp(1j * np.outer(psi, m))


# -- two-element azimuth protoarray ------------------------------------------


def two_element_weights(gamma_rad: float) -> DualPolWeights:
    """``w_A = [e^{-j gamma}, e^{j gamma}] / 2`` and ``w_B = conj(w_A)``.

    The total array factor is ``1 + cos(2 gamma) cos(psi_y)``.
    """
    wa = 0.5 * np.array([np.exp(-1j * gamma_rad), np.exp(1j * gamma_rad)])
    return DualPolWeights(wa, np.conj(wa), provenance={"gamma_deg": float(np.rad2deg(gamma_rad))})


def two_element_hpbw(gamma_rad: float, p: ElementPattern, spacing_y: float = 0.5, step_deg: float = 0.05) -> float:
    """Azimuth HPBW of the two-element total pattern (``inf`` when flat)."""
    d = azimuth_cut(step_deg)
    res = total_pattern(two_element_weights(gamma_rad), UlaGeometry(2, spacing_y), p, d)
    try:
        return measure_hpbw(np.rad2deg(d.phi), res.total_power)
    except NoHalfPowerCrossing:
        return float("inf")


def two_element_bisection(
    target_hpbw_deg: float,
    p: ElementPattern,
    spacing_y: float = 0.5,
    tol_deg: float = 0.1,
    max_iter: int = 60,
) -> DualPolWeights:
    """Find ``gamma`` whose two-element total pattern has the target HPBW.

    The HPBW grows monotonically from the ``gamma = 0`` pattern to the
    flat-factor limit at 45 degrees, where the total pattern is the
    element pattern itself.
    """
    lo, hi = 0.0, np.pi / 4
    h_lo = two_element_hpbw(lo, p, spacing_y)
    h_hi = two_element_hpbw(hi, p, spacing_y)
    if target_hpbw_deg < h_lo - tol_deg or target_hpbw_deg > h_hi + tol_deg:
        raise InfeasibleTargetError(
            f"target HPBW {target_hpbw_deg:.2f} deg outside achievable [{h_lo:.2f}, {h_hi:.2f}]"
        )
    gamma = lo
    for _ in range(max_iter):
        gamma = 0.5 * (lo + hi)
        h = two_element_hpbw(gamma, p, spacing_y)
        if abs(h - target_hpbw_deg) <= tol_deg:
            break
        if h < target_hpbw_deg:
            lo = gamma
        else:
            hi = gamma
    w = two_element_weights(gamma)
    return w.with_provenance(hpbw_deg=two_element_hpbw(gamma, p, spacing_y), target_hpbw_deg=target_hpbw_deg)


# -- 2D construction ---------------------------------------------------------


def build_spbf_2d(w_z: np.ndarray, w_y: np.ndarray) -> DualPolWeights:
    """Rank-one ``w_z w_y^T``, fed identically on both polarizations."""
    w_z = np.asarray(w_z, dtype=complex)
    w_y = np.asarray(w_y, dtype=complex)
    if w_z.ndim != 1 or w_y.ndim != 1:
        raise ValueError("build_spbf_2d needs two vectors")
    W = np.outer(w_z, w_y)
    return DualPolWeights(W, W.copy(), provenance={"construction": "spbf_outer"})


def zero_pad(w: np.ndarray, n: int) -> np.ndarray:
    """Pad with zeros at the high-index end to length ``n``."""
    w = np.asarray(w, dtype=complex)
    if w.size > n:
        raise ValueError(f"cannot pad length {w.size} to {n}")
    return np.concatenate([w, np.zeros(n - w.size, dtype=complex)])


def build_dpbf_2d(w_za, w_zb, w_ya, w_yb) -> DualPolWeights:
    """Dual-polarization 2D weights from per-plane vectors.

    ``W_A = w_zA w_yA^T - w_zB (J conj w_yB)^T`` and
    ``W_B = w_zA w_yB^T + w_zB (J conj w_yA)^T``. The azimuth vectors must be
    zero padded so that their reversals land on the complementary columns;
    overlapping supports would mix amplitudes and are rejected.
    """
    w_za, w_zb, w_ya, w_yb = (np.asarray(x, dtype=complex) for x in (w_za, w_zb, w_ya, w_yb))
    if w_za.shape != w_zb.shape or w_ya.shape != w_yb.shape:
        raise ValueError("per-polarization vectors must have equal lengths")
    rev_a = np.conj(w_ya[::-1])
    rev_b = np.conj(w_yb[::-1])
    if np.any(w_zb) and np.any(w_za):
        direct = (w_ya != 0) | (w_yb != 0)
        mirrored = (rev_a != 0) | (rev_b != 0)
        if np.any(direct & mirrored):
            raise ValueError("azimuth supports overlap after reversal; zero pad the azimuth vectors")
    W_a = np.outer(w_za, w_ya) - np.outer(w_zb, rev_b)
    W_b = np.outer(w_za, w_yb) + np.outer(w_zb, rev_a)
    return DualPolWeights(W_a, W_b, provenance={"construction": "dpbf", "zero_pad": "high"})


def virtualize_subarrays(w_sub, s: int, subarray_tilt_deg: float = 0.0, spacing_z: float = 0.5) -> np.ndarray:
    """Element-space weights for ``s``-row subarrays fed by ``w_sub``.

    Each port drives ``s`` adjacent rows; inside a subarray the rows carry a
    fixed progressive phase for the subarray tilt.
    """
    w_sub = np.asarray(w_sub, dtype=complex)
    if s < 1:
        raise ValueError("subarray size must be positive")
    inner = tilt_phases(s, spacing_z, subarray_tilt_deg)
    return np.kron(w_sub, inner)


def tilt_phases(n: int, spacing: float, tilt_deg: float) -> np.ndarray:
    """Row phases ``exp(-j 2 pi m d sin(tilt))``; positive tilt points down."""
    m = np.arange(n)
    return np.exp(-2j * np.pi * m * spacing * np.sin(np.deg2rad(tilt_deg)))


def apply_tilt(w, g: UraGeometry, tilt_deg: float):
    """Apply an electrical down-tilt to the rows of ``w``.

    Accepts :class:`DualPolWeights` (matrix) or a plain column vector.
    """
    if not isinstance(g, UraGeometry):
        raise TypeError("tilt needs a UraGeometry (rows along z)")
    ph = tilt_phases(g.m_rows, g.spacing_z, tilt_deg)
    if isinstance(w, DualPolWeights):
        if w.is_vector or w.shape[0] != g.m_rows:
            raise ValueError("weights do not match the geometry rows")
        return DualPolWeights(w.w_a * ph[:, None], w.w_b * ph[:, None], w.power_dbm,
                              {**w.provenance, "tilt_deg": tilt_deg})
    w = np.asarray(w, dtype=complex)
    if w.shape[0] != g.m_rows:
        raise ValueError("weights do not match the geometry rows")
    return w * ph.reshape((-1,) + (1,) * (w.ndim - 1))


# -- reference pipeline --------------------------------------------------------


@dataclass(frozen=True)
class ArraySetup:
    """Array and radio parameters for a cell-specific beam."""

    geometry: UraGeometry = UraGeometry(8, 8, spacing_y=0.5, spacing_z=0.6)
    element: ElementPattern = field(default_factory=lambda: ElementPattern.gaussian(90.0, 90.0))
    subarray_rows: int = 2
    subarray_tilt_deg: float = 6.0
    p_bs_dbm: float = 46.0

    def __post_init__(self):
        if self.geometry.m_rows % self.subarray_rows:
            raise ValueError("rows do not split into subarrays")

    @property
    def n_ports(self) -> int:
        return self.geometry.m_rows // self.subarray_rows

    def column(self) -> UraGeometry:
        g = self.geometry
        return UraGeometry(g.m_rows, 1, g.spacing_y, g.spacing_z, g.z_phase_factor)

    def row(self, n: Optional[int] = None) -> UlaGeometry:
        return UlaGeometry(n or self.geometry.n_cols, self.geometry.spacing_y)


REFERENCE_TARGET = SynthesisTarget(hpbw_az_deg=65.0, hpbw_el_deg=15.0, tilt_deg=6.0)


@dataclass(frozen=True)
class BeamDesign:
    """A finished 2D design with its per-plane ingredients."""

    name: str
    weights: DualPolWeights
    elevation: DualPolWeights
    azimuth: DualPolWeights
    report: ObjectiveReport
    details: dict = field(default_factory=dict)


def elevation_phases(setup: ArraySetup, tilt_deg: float) -> np.ndarray:
    """Combined subarray tilt and electrical array tilt for every row."""
    s = setup.subarray_rows
    dz = setup.geometry.spacing_z
    port = tilt_phases(setup.n_ports, s * dz, tilt_deg)
    return virtualize_subarrays(port, s, setup.subarray_tilt_deg, dz)


def assemble_dpbf(setup: ArraySetup, target: SynthesisTarget, w_elev: DualPolWeights,
                  w_az_proto: DualPolWeights, name: str = "dpbf") -> BeamDesign:
    """Expand, pad, combine, tilt and normalize DPBF per-plane weights."""
    g = setup.geometry
    n_proto = w_az_proto.shape[0]
    k = int(round(np.log2(g.n_cols / (2 * n_proto))))
    if n_proto * 2 ** (k + 1) != g.n_cols or k < 0:
        raise ValueError(f"{n_proto}-element protoarray cannot fill half of {g.n_cols} columns")
    w_y = expand_ula(w_az_proto, k)
    w_za = virtualize_subarrays(w_elev.w_a, setup.subarray_rows, 0.0, g.spacing_z)
    w_zb = virtualize_subarrays(w_elev.w_b, setup.subarray_rows, 0.0, g.spacing_z)
    W = build_dpbf_2d(w_za, w_zb, zero_pad(w_y.w_a, g.n_cols), zero_pad(w_y.w_b, g.n_cols))
    return _finish(name, setup, target, W, w_elev, w_az_proto, {"azimuth_expansion_k": k})


def assemble_spbf(setup: ArraySetup, target: SynthesisTarget, w_elev_sub: np.ndarray,
                  w_az: np.ndarray, name: str = "spbf") -> BeamDesign:
    """Outer-product SPBF build, fed on both polarizations, tilted and normalized."""
    g = setup.geometry
    w_z = virtualize_subarrays(w_elev_sub, setup.subarray_rows, 0.0, g.spacing_z)
    W = build_spbf_2d(w_z, w_az)
    elev = DualPolWeights(w_elev_sub, w_elev_sub)
    az = DualPolWeights(w_az, w_az)
    return _finish(name, setup, target, W, elev, az, {})


def _finish(name, setup, target, W, w_elev, w_az, details) -> BeamDesign:
    ph = elevation_phases(setup, target.tilt_deg)
    W = DualPolWeights(W.w_a * ph[:, None], W.w_b * ph[:, None], provenance=dict(W.provenance))
    loss_db = taper_loss_db(W)
    Wn, alpha = normalize_power(W, setup.p_bs_dbm)
    Wn = Wn.with_provenance(design=name, tilt_deg=target.tilt_deg,
                            subarray_tilt_deg=setup.subarray_tilt_deg, alpha=alpha)
    var = (pattern_variance(Wn, setup.geometry, setup.element, target, plane="azimuth")
           + pattern_variance(Wn, setup.geometry, setup.element, target, plane="elevation"))
    return BeamDesign(name, Wn, w_elev, w_az, ObjectiveReport(var, loss_db), details)


def design_dpbf(setup: ArraySetup = ArraySetup(), target: SynthesisTarget = REFERENCE_TARGET,
                config: OptimizerConfig = OptimizerConfig()) -> BeamDesign:
    """Phase-only symmetric elevation search plus two-element azimuth bisection."""
    untilted = SynthesisTarget(target.hpbw_az_deg, target.hpbw_el_deg, 0.0)
    w_elev, rep_el = optimize_phase_only(
        setup.column(), setup.element, untilted, config,
        plane="elevation", polarization="symmetric", subarray=setup.subarray_rows,
    )
    w_az = two_element_bisection(target.hpbw_az_deg, setup.element, setup.geometry.spacing_y)
    design = assemble_dpbf(setup, target, w_elev, w_az)
    design.details.update(elevation_variance_db2=rep_el.pattern_variance_db2)
    return design


def design_spbf(setup: ArraySetup = ArraySetup(), target: SynthesisTarget = REFERENCE_TARGET,
                config: OptimizerConfig = OptimizerConfig()) -> BeamDesign:
    """Phase-only single-polarization search in both planes."""
    untilted = SynthesisTarget(target.hpbw_az_deg, target.hpbw_el_deg, 0.0)
    w_elev, _ = optimize_phase_only(
        setup.column(), setup.element, untilted, config,
        plane="elevation", polarization="single", subarray=setup.subarray_rows,
    )
    w_az, _ = optimize_phase_only(
        setup.row(), setup.element, untilted, config,
        plane="azimuth", polarization="single",
    )
    return assemble_spbf(setup, target, w_elev.w_a, w_az.w_a)


def printed_dpbf(setup: ArraySetup = ArraySetup(), target: SynthesisTarget = REFERENCE_TARGET) -> BeamDesign:
    """DPBF design from the printed reference per-plane weights."""
    from . import fixtures

    return assemble_dpbf(setup, target, fixtures.dpbf_elevation_sub(), fixtures.dpbf_azimuth_proto(),
                         name="printed-dpbf")


def printed_spbf(setup: ArraySetup = ArraySetup(), target: SynthesisTarget = REFERENCE_TARGET) -> BeamDesign:
    """SPBF design from the printed reference per-plane weights."""
    from . import fixtures

    return assemble_spbf(setup, target, fixtures.SPBF_WZ_SUB, fixtures.SPBF_WY, name="printed-spbf")


def measured_hpbw(design: BeamDesign, setup: ArraySetup, step_deg: float = 0.05) -> dict:
    """Azimuth and elevation HPBW of the tilted 2D total pattern at its peak."""
    el_cut = elevation_cut(step_deg)
    el_pow = total_pattern(design.weights, setup.geometry, setup.element, el_cut).total_power
    theta_pk = float(np.rad2deg(el_cut.theta[np.argmax(el_pow)]))
    az_cut = azimuth_cut(step_deg, zenith_deg=theta_pk)
    az_pow = total_pattern(design.weights, setup.geometry, setup.element, az_cut).total_power
    return {
        "azimuth_hpbw_deg": measure_hpbw(np.rad2deg(az_cut.phi), az_pow),
        "elevation_hpbw_deg": measure_hpbw(np.rad2deg(el_cut.theta), el_pow),
        "peak_elevation_deg": 90.0 - theta_pk,
    }
