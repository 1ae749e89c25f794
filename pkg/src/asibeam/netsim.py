"""
Multi-cell received-power simulation.

Hexagonal multi-site layout with three sectors per site, UMa NLOS path
loss, lognormal shadowing and a small ray-based angular spread. Every UE
draws its randomness from its own stream seeded by ``(seed, ue_id)``, and
drops are shared by all beams under test, so differences between beam CDFs
come from the beams alone.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields as dc_fields
from pathlib import Path
from typing import Mapping, Optional

import numpy as np

from .geometry import Direction, Geometry
from .patterns import ElementPattern, element_directivity, element_gain, total_pattern
from .weights import DualPolWeights, UnnormalizedWeightsError

SPEED_OF_LIGHT = 299_792_458.0


@dataclass(frozen=True)
class DeploymentConfig:
    isd_m: float = 500.0
    n_sites: int = 9
    sectors_per_site: int = 3
    cell_hole_m: float = 25.0
    bs_height_m: float = 25.0
    building_height_m: float = 20.0
    ue_outdoor_height_m: float = 1.5
    indoor_fraction: float = 0.8
    indoor_loss_db: float = 20.0
    shadowing_sigma_db: float = 6.0
    angular_spread_deg: tuple = (2.0, 5.0)
    n_rays: int = 8
    freq_ghz: float = 3.5
    bs_power_dbm: float = 46.0
    ue_ant_gain_dbi: float = 0.0
    ues_per_cell: int = 75
    center_site_only: bool = False
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "angular_spread_deg", tuple(float(x) for x in self.angular_spread_deg))
        positive = ("isd_m", "n_sites", "sectors_per_site", "bs_height_m", "building_height_m",
                    "ue_outdoor_height_m", "freq_ghz", "ues_per_cell", "n_rays")
        for name in positive:
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        for name in ("cell_hole_m", "indoor_loss_db", "shadowing_sigma_db"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if not 0.0 <= self.indoor_fraction <= 1.0:
            raise ValueError("indoor_fraction must lie in [0, 1]")
        lo, hi = self.angular_spread_deg if len(self.angular_spread_deg) == 2 else (None, None)
        if lo is None or not 0 <= lo <= hi:
            raise ValueError("angular_spread_deg must be [min, max] with 0 <= min <= max")
        if self.cell_hole_m >= self.isd_m / 2:
            raise ValueError("cell hole does not fit inside a site")

    @classmethod
    def from_dict(cls, data: Mapping) -> "DeploymentConfig":
        known = {f.name for f in dc_fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown deployment fields: {sorted(unknown)}")
        return cls(**data)

    @property
    def n_cells(self) -> int:
        return self.n_sites * self.sectors_per_site


@dataclass(frozen=True)
class Cell:
    cell_id: int
    site: int
    position: np.ndarray
    boresight_rad: float


@dataclass(frozen=True)
class Layout:
    sites: np.ndarray
    cells: list


def site_positions(n_sites: int, isd_m: float) -> np.ndarray:
    """Hexagonal lattice points ordered by distance from the origin, then angle."""
    rings = 1
    while 1 + 3 * rings * (rings + 1) < n_sites:
        rings += 1
    pts = []
    for i in range(-rings, rings + 1):
        for j in range(-rings, rings + 1):
            if abs(i) <= rings and abs(j) <= rings and abs(i + j) <= rings:
                x = isd_m * (i + 0.5 * j)
                y = isd_m * (math.sqrt(3) / 2 * j)
                pts.append((round(math.hypot(x, y), 6), math.atan2(y, x) % (2 * math.pi), x, y))
    pts.sort()
    return np.array([(x, y) for _, _, x, y in pts[:n_sites]])


def generate_layout(cfg: DeploymentConfig) -> Layout:
    """Sites on a hexagonal grid; sector boresights 120 degrees apart from 30 degrees."""
    sites = site_positions(cfg.n_sites, cfg.isd_m)
    cells = []
    step = 2 * math.pi / cfg.sectors_per_site
    first = math.pi / 6 if cfg.sectors_per_site == 3 else 0.0
    for s, (x, y) in enumerate(sites):
        for k in range(cfg.sectors_per_site):
            az = math.remainder(first + k * step, 2 * math.pi)
            cells.append(Cell(len(cells), s, np.array([x, y, cfg.bs_height_m]), az))
    return Layout(sites, cells)


# -- propagation -------------------------------------------------------------


def uma_nlos_pathloss_db(d3d_m, freq_ghz: float, h_ut_m) -> np.ndarray:
    """UMa NLOS path loss ``13.54 + 39.08 log10(d3D) + 20 log10(fc) - 0.6 (h_UT - 1.5)``."""
    d3d_m = np.asarray(d3d_m, dtype=float)
    if np.any(d3d_m <= 0):
        raise ValueError("distance must be positive")
    return 13.54 + 39.08 * np.log10(d3d_m) + 20.0 * np.log10(freq_ghz) - 0.6 * (np.asarray(h_ut_m) - 1.5)


def pathloss_db(cfg: DeploymentConfig, bs_position, ue_position, indoor: bool) -> float:
    """Distance path loss plus the indoor penetration loss for indoor UEs."""
    bs = np.asarray(bs_position, dtype=float)
    ue = np.asarray(ue_position, dtype=float)
    d3d = float(np.linalg.norm(ue - bs))
    if d3d == 0:
        raise ValueError("UE coincides with the base station")
    pl = float(uma_nlos_pathloss_db(d3d, cfg.freq_ghz, ue[2]))
    return pl + (cfg.indoor_loss_db if indoor else 0.0)


def local_direction(cell: Cell, ue_position) -> tuple[float, float]:
    """(azimuth, zenith) of the UE in the sector's antenna frame, radians."""
    v = np.asarray(ue_position, dtype=float) - cell.position
    phi = math.remainder(math.atan2(v[1], v[0]) - cell.boresight_rad, 2 * math.pi)
    theta = math.pi / 2 - math.atan2(v[2], math.hypot(v[0], v[1]))
    return phi, theta


# -- UE drops ----------------------------------------------------------------


@dataclass(frozen=True)
class UeDrop:
    ue_id: int
    position: np.ndarray
    indoor: bool
    drop_site: int
    serving_cell: int
    pathloss_db: np.ndarray
    shadowing_db: np.ndarray
    coupling_loss_db: np.ndarray
    spread_deg: float
    ray_offsets_rad: np.ndarray = field(repr=False)


def ue_rng(seed: int, ue_id: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(ue_id)])


def drop_ue(cfg: DeploymentConfig, layout: Layout, ue_id: int,
            element: Optional[ElementPattern] = None) -> UeDrop:
    """Drop one UE and attach it to the cell with the lowest coupling loss.

    Coupling loss is path loss plus shadowing minus the (beam independent)
    element gain toward the UE, so a UE is not handed to a co-sited sector
    that faces away from it.
    """
    element = element or ElementPattern.gaussian(90.0, 90.0)
    rng = ue_rng(cfg.seed, ue_id)
    per_site = cfg.ues_per_cell * cfg.sectors_per_site
    site = ue_id // per_site
    cx, cy = layout.sites[site]
    xy = _uniform_in_hexagon(rng, cfg.isd_m, cfg.cell_hole_m)
    indoor = bool(rng.random() < cfg.indoor_fraction)
    h = float(rng.uniform(0.0, cfg.building_height_m)) if indoor else cfg.ue_outdoor_height_m
    pos = np.array([cx + xy[0], cy + xy[1], h])
    shadow = rng.normal(0.0, cfg.shadowing_sigma_db, size=len(layout.cells))
    lo, hi = cfg.angular_spread_deg
    spread = float(rng.uniform(lo, hi))
    offsets = rng.normal(0.0, np.deg2rad(spread), size=(cfg.n_rays, 2))

    pl = np.array([pathloss_db(cfg, c.position, pos, indoor) for c in layout.cells])
    dirs = np.array([local_direction(c, pos) for c in layout.cells])
    g_el = element_gain(element, Direction(dirs[:, 0], dirs[:, 1]))
    coupling = pl + shadow - 10.0 * np.log10(g_el)
    serving = int(np.argmin(coupling))
    return UeDrop(ue_id, pos, indoor, site, serving, pl, shadow, coupling, spread, offsets)


def drop_ues(cfg: DeploymentConfig, layout: Optional[Layout] = None,
             element: Optional[ElementPattern] = None, workers: int = 1) -> list[UeDrop]:
    """All UE drops, ordered by UE id; identical for any ``workers``."""
    layout = layout or generate_layout(cfg)
    n = cfg.ues_per_cell * cfg.n_cells
    if workers <= 1:
        return [drop_ue(cfg, layout, i, element) for i in range(n)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda i: drop_ue(cfg, layout, i, element), range(n)))


def _uniform_in_hexagon(rng: np.random.Generator, isd_m: float, hole_m: float) -> np.ndarray:
    # Voronoi cell of the site lattice: inradius isd/2, edge normals at 0/60/120 deg
    r_out = isd_m / math.sqrt(3)
    normals = np.array([[1.0, 0.0], [0.5, math.sqrt(3) / 2], [-0.5, math.sqrt(3) / 2]])
    while True:
        xy = rng.uniform(-r_out, r_out, size=2)
        if np.all(np.abs(normals @ xy) <= isd_m / 2) and math.hypot(*xy) >= hole_m:
            return xy


# -- received power ----------------------------------------------------------


@dataclass(frozen=True)
class LinkSample:
    ue_id: int
    cell_id: int
    rx_power_dbm: float

    def __post_init__(self):
        if not math.isfinite(self.rx_power_dbm):
            raise ValueError("received power must be finite")


def ray_directions(cell: Cell, ue: UeDrop) -> Direction:
    """Nominal UE direction perturbed by the UE's ray offsets."""
    phi0, theta0 = local_direction(cell, ue.position)
    phi = np.angle(np.exp(1j * (phi0 + ue.ray_offsets_rad[:, 0])))
    theta = np.clip(theta0 + ue.ray_offsets_rad[:, 1], 0.0, np.pi)
    return Direction(phi, theta)


def received_power(w: DualPolWeights, g: Geometry, p: ElementPattern, cell: Cell,
                   ue: UeDrop, cfg: DeploymentConfig) -> LinkSample:
    """Serving-link received power: ray-averaged EIRP minus losses plus UE gain.

    The total (both polarizations) power pattern is used, as the UE receives
    on two orthogonally polarized antennas.
    """
    if not w.is_normalized:
        raise UnnormalizedWeightsError("received_power needs weights from normalize_power()")
    d = ray_directions(cell, ue)
    eirp_mw = total_pattern(w, g, p, d).total_power * element_directivity(p)
    rx = (10.0 * np.log10(np.mean(eirp_mw)) - ue.pathloss_db[cell.cell_id]
          - ue.shadowing_db[cell.cell_id] + cfg.ue_ant_gain_dbi)
    return LinkSample(ue.ue_id, cell.cell_id, float(rx))


# -- statistics --------------------------------------------------------------


@dataclass(frozen=True)
class CdfSummary:
    values: np.ndarray

    def __post_init__(self):
        v = np.sort(np.asarray(self.values, dtype=float))
        if v.size == 0:
            raise ValueError("empty sample")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def percentile(self, q) -> np.ndarray | float:
        """Linearly interpolated percentile(s), ``q`` in [0, 100]."""
        out = np.percentile(self.values, q)
        return float(out) if np.ndim(out) == 0 else out

    @property
    def median(self) -> float:
        return self.percentile(50.0)

    def __eq__(self, other):
        return isinstance(other, CdfSummary) and np.array_equal(self.values, other.values)

    __hash__ = None


@dataclass(frozen=True)
class SimulationResult:
    drops: list
    samples: dict
    cdfs: dict

    def median_gap_db(self, better: str, worse: str) -> float:
        return self.cdfs[better].median - self.cdfs[worse].median


def attach_and_run(cfg: DeploymentConfig, beams: Mapping[str, DualPolWeights], geometry: Geometry,
                   element: ElementPattern, workers: int = 1,
                   drops: Optional[list] = None) -> SimulationResult:
    """Evaluate every beam on one shared set of drops and channel draws."""
    if not beams:
        raise ValueError("at least one beam is required")
    for name, w in beams.items():
        if not w.is_normalized:
            raise UnnormalizedWeightsError(f"beam {name!r} is not power normalized")
    layout = generate_layout(cfg)
    if drops is None:
        drops = drop_ues(cfg, layout, element, workers)
    if cfg.center_site_only:
        drops = [u for u in drops if layout.cells[u.serving_cell].site == 0]
        if not drops:
            raise ValueError("no UE is served by the center site")

    dirs = [ray_directions(layout.cells[u.serving_cell], u) for u in drops]
    phi = np.concatenate([d.phi for d in dirs])
    theta = np.concatenate([d.theta for d in dirs])
    grid = Direction(phi, theta)
    n_rays = cfg.n_rays
    loss = np.array([u.pathloss_db[u.serving_cell] + u.shadowing_db[u.serving_cell] for u in drops])
    directivity = element_directivity(element)

    samples, cdfs = {}, {}
    for name, w in beams.items():
        eirp = total_pattern(w, geometry, element, grid).total_power.reshape(len(drops), n_rays)
        rx = 10.0 * np.log10(eirp.mean(axis=1) * directivity) - loss + cfg.ue_ant_gain_dbi
        samples[name] = [LinkSample(u.ue_id, u.serving_cell, float(r)) for u, r in zip(drops, rx)]
        cdfs[name] = CdfSummary(rx)
    return SimulationResult(drops, samples, cdfs)


def write_results_csv(result: SimulationResult, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["beam_name", "ue_id", "cell_id", "rx_dbm"])
        for name, rows in result.samples.items():
            for s in rows:
                out.writerow([name, s.ue_id, s.cell_id, f"{s.rx_power_dbm:.6f}"])
    return path


def write_cdf_csv(result: SimulationResult, path) -> Path:
    path = Path(path)
    q = np.arange(0, 101)
    with path.open("w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["beam_name", "percentile", "rx_dbm"])
        for name, cdf in result.cdfs.items():
            for qi, v in zip(q, cdf.percentile(q)):
                out.writerow([name, int(qi), f"{v:.6f}"])
    return path
