"""
Element patterns, radiated fields and total-power patterns.

The total power pattern of a dual-polarized array is the sum of the per
polarization powers, ``G = |e_A|^2 + |e_B|^2``, which factors into the
array factor times the element power pattern.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Sequence

import numpy as np

from ._backend import kernels
from .geometry import Direction, Geometry, UlaGeometry, UraGeometry, as_ura, phase_y, phase_z
from .weights import DualPolWeights, UnnormalizedWeightsError

DB_FLOOR = -100.0
_FOUR_LN2 = 4.0 * np.log(2.0)


class NoHalfPowerCrossing(ValueError):
    """The cut never drops 3 dB below its peak on one side."""


@dataclass(frozen=True)
class ElementPattern:
    """Element power pattern, identical for both polarizations.

    The Gaussian model is separable in azimuth and elevation,
    ``exp(-4 ln2 [(d_az/HPBW_az)^2 + (d_el/HPBW_el)^2])``, with offsets taken
    from ``boresight`` (default: broadside, +x).
    """

    kind: str = "isotropic"
    hpbw_az_deg: float = 90.0
    hpbw_el_deg: float = 90.0
    boresight: Direction = field(default_factory=lambda: Direction(0.0, np.pi / 2))

    def __post_init__(self):
        if self.kind not in ("isotropic", "gaussian"):
            raise ValueError(f"unknown element kind {self.kind!r}")
        for hpbw in (self.hpbw_az_deg, self.hpbw_el_deg):
            if not 0.0 < hpbw < 180.0:
                raise ValueError("element HPBW must lie in (0, 180) degrees")

    @classmethod
    def isotropic(cls) -> "ElementPattern":
        return cls("isotropic")

    @classmethod
    def gaussian(cls, hpbw_az_deg: float = 90.0, hpbw_el_deg: float = 90.0) -> "ElementPattern":
        return cls("gaussian", hpbw_az_deg, hpbw_el_deg)

    def __hash__(self):
        return hash((self.kind, self.hpbw_az_deg, self.hpbw_el_deg,
                     float(self.boresight.phi), float(self.boresight.theta)))


def element_gain(p: ElementPattern, d: Direction) -> np.ndarray:
    """Element power gain in (0, 1], peak 1 at boresight."""
    if p.kind == "isotropic":
        return np.ones(d.shape)
    d_az = np.angle(np.exp(1j * (d.phi - float(p.boresight.phi))))
    d_el = float(p.boresight.theta) - d.theta
    x = (np.rad2deg(d_az) / p.hpbw_az_deg) ** 2 + (np.rad2deg(d_el) / p.hpbw_el_deg) ** 2
    return np.exp(-_FOUR_LN2 * x)


@lru_cache(maxsize=32)
def element_directivity(p: ElementPattern, step_deg: float = 0.1) -> float:
    """Peak directivity ``4 pi / integral(G_el dOmega)`` by midpoint quadrature."""
    if p.kind == "isotropic":
        return 1.0
    h = np.deg2rad(step_deg)
    th = np.arange(h / 2, np.pi, h)
    ph = np.arange(-np.pi + h / 2, np.pi, h)
    T, P = np.meshgrid(th, ph, indexing="ij")
    g = element_gain(p, Direction(P, T))
    integral = np.sum(g * np.sin(T)) * h * h
    return float(4.0 * np.pi / integral)


def _check_dims(w: DualPolWeights, g: Geometry) -> DualPolWeights:
    if isinstance(g, UlaGeometry):
        if not w.is_vector or w.shape[0] != g.n_elements:
            raise ValueError(f"weights of shape {w.shape} do not fit a {g.n_elements}-element ULA")
        return w.as_matrix()
    if w.is_vector:
        w = w.as_matrix()
    if w.shape != g.shape:
        raise ValueError(f"weights of shape {w.shape} do not fit a {g.shape} URA")
    return w


def _array_fields(w: DualPolWeights, g: Geometry, d: Direction):
    wm = _check_dims(w, g)
    flat = d.ravel()
    py = np.ascontiguousarray(phase_y(g, flat), dtype=float)
    pz = np.ascontiguousarray(phase_z(as_ura(g), flat), dtype=float)
    ea, eb = kernels.dual_pol_fields(
        np.ascontiguousarray(wm.w_a), np.ascontiguousarray(wm.w_b), py, pz
    )
    return np.asarray(ea).reshape(d.shape), np.asarray(eb).reshape(d.shape)


def fields(w: DualPolWeights, g: Geometry, p: ElementPattern, d: Direction):
    """Per-polarization far fields ``(e_A, e_B)`` including the element field."""
    ea, eb = _array_fields(w, g, d)
    amp = np.sqrt(element_gain(p, d))
    return ea * amp, eb * amp


def fields_ula(w: DualPolWeights, g: UlaGeometry, p: ElementPattern, d: Direction):
    if not isinstance(g, UlaGeometry):
        raise TypeError("fields_ula needs a UlaGeometry")
    return fields(w, g, p, d)


def fields_ura(w: DualPolWeights, g: UraGeometry, p: ElementPattern, d: Direction):
    if not isinstance(g, UraGeometry):
        raise TypeError("fields_ura needs a UraGeometry")
    if w.is_vector:
        raise ValueError("fields_ura needs matrix weights")
    return fields(w, g, p, d)


def array_factor_total(w: DualPolWeights, g: Geometry, d: Direction) -> np.ndarray:
    """Total-power array factor ``|w_A^T a|^2 + |w_B^T a|^2``."""
    ea, eb = _array_fields(w, g, d)
    return ea.real**2 + ea.imag**2 + eb.real**2 + eb.imag**2


@dataclass(frozen=True)
class PatternResult:
    grid: Direction
    field_a: np.ndarray
    field_b: np.ndarray
    total_power: np.ndarray

    @property
    def power_a(self) -> np.ndarray:
        return np.abs(self.field_a) ** 2

    @property
    def power_b(self) -> np.ndarray:
        return np.abs(self.field_b) ** 2

    def total_db(self) -> np.ndarray:
        return to_db(self.total_power)


def total_pattern(w: DualPolWeights, g: Geometry, p: ElementPattern, d: Direction) -> PatternResult:
    ea, eb = fields(w, g, p, d)
    total = ea.real**2 + ea.imag**2 + eb.real**2 + eb.imag**2
    return PatternResult(d, ea, eb, total)


def to_db(x, floor: float = DB_FLOOR) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        out = 10.0 * np.log10(x)
    return np.maximum(out, floor)


def measure_hpbw(angles_deg: Sequence[float], power: Sequence[float]) -> float:
    """Half-power beamwidth (degrees) of a sampled cut around its maximum.

    Crossings are located by linear interpolation of the linear power
    between neighbouring samples.
    """
    x = np.asarray(angles_deg, dtype=float)
    p = np.asarray(power, dtype=float)
    if x.shape != p.shape or x.ndim != 1 or x.size < 3:
        raise ValueError("cut must be two equal-length 1-D sequences")
    i_pk = int(np.argmax(p))
    half = 0.5 * p[i_pk]

    below = np.nonzero(p[:i_pk] < half)[0]
    if below.size == 0:
        raise NoHalfPowerCrossing("no half-power crossing before the peak")
    j = below[-1]
    left = x[j] + (half - p[j]) * (x[j + 1] - x[j]) / (p[j + 1] - p[j])

    below = np.nonzero(p[i_pk + 1:] < half)[0]
    if below.size == 0:
        raise NoHalfPowerCrossing("no half-power crossing after the peak")
    j = i_pk + 1 + below[0]
    right = x[j - 1] + (half - p[j - 1]) * (x[j] - x[j - 1]) / (p[j] - p[j - 1])
    return float(right - left)


def ripple_db(angles_deg: Sequence[float], power: Sequence[float], sector: tuple[float, float]) -> float:
    """Max minus min of the power in dB over ``sector`` (inclusive bounds)."""
    x = np.asarray(angles_deg, dtype=float)
    p = np.asarray(power, dtype=float)
    sel = (x >= sector[0]) & (x <= sector[1])
    if not np.any(sel):
        raise ValueError(f"sector {sector} contains no samples")
    db = to_db(p[sel])
    return float(db.max() - db.min())


def eirp_dbm(w: DualPolWeights, g: Geometry, p: ElementPattern, d: Direction) -> np.ndarray:
    """EIRP in dBm for power-normalized weights.

    Weight amplitudes are in sqrt(mW), so ``|e_A|^2 + |e_B|^2`` is the
    radiated power density relative to an isotropic element; multiplying by
    the element's peak directivity gives EIRP.
    """
    if not w.is_normalized:
        raise UnnormalizedWeightsError("EIRP needs weights from normalize_power()")
    res = total_pattern(w, g, p, d)
    return to_db(res.total_power * element_directivity(p), floor=-np.inf)


PATTERN_CSV_HEADER = ["theta_deg", "phi_deg", "pow_a_db", "pow_b_db", "pow_total_db"]


def write_pattern_csv(res: PatternResult, path) -> Path:
    path = Path(path)
    th = np.rad2deg(res.grid.theta).ravel()
    ph = np.rad2deg(res.grid.phi).ravel()
    cols = [to_db(res.power_a).ravel(), to_db(res.power_b).ravel(), res.total_db().ravel()]
    with path.open("w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(PATTERN_CSV_HEADER)
        for i in range(th.size):
            out.writerow([_f6(v) for v in (th[i], ph[i], cols[0][i], cols[1][i], cols[2][i])])
    return path


def _f6(v: float) -> str:
    # adding 0.0 turns -0.0 into 0.0 after rounding
    return f"{round(float(v), 6) + 0.0:.6f}"
