"""
Array geometries, directions and steering vectors.

Angles follow the usual spherical convention: the zenith angle ``theta`` is
measured from the z-axis and the azimuth ``phi`` from the x-axis. The array
lies in the y-z plane; columns run along y (azimuth) and rows along z
(elevation). All angles are in radians.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

ArrayLike = Union[float, np.ndarray]

_ANGLE_SLACK = 1e-9


@dataclass(frozen=True)
class Direction:
    """A direction, or a grid of directions when the fields are arrays.

    Parameters
    ----------
    azimuth_rad : float or ndarray
        Azimuth ``phi`` in [-pi, pi].
    zenith_rad : float or ndarray
        Zenith ``theta`` in [0, pi].
    """

    azimuth_rad: ArrayLike
    zenith_rad: ArrayLike

    def __post_init__(self):
        phi = np.asarray(self.azimuth_rad, dtype=float)
        theta = np.asarray(self.zenith_rad, dtype=float)
        if phi.shape != theta.shape:
            raise ValueError(f"azimuth shape {phi.shape} != zenith shape {theta.shape}")
        if np.any(np.abs(phi) > np.pi + _ANGLE_SLACK):
            raise ValueError("azimuth outside [-pi, pi]")
        if np.any(theta < -_ANGLE_SLACK) or np.any(theta > np.pi + _ANGLE_SLACK):
            raise ValueError("zenith outside [0, pi]")

    @classmethod
    def from_degrees(cls, azimuth_deg: ArrayLike, zenith_deg: ArrayLike) -> "Direction":
        return cls(np.deg2rad(azimuth_deg), np.deg2rad(zenith_deg))

    @property
    def phi(self) -> np.ndarray:
        return np.asarray(self.azimuth_rad, dtype=float)

    @property
    def theta(self) -> np.ndarray:
        return np.asarray(self.zenith_rad, dtype=float)

    @property
    def shape(self) -> tuple:
        return self.phi.shape

    def __len__(self) -> int:
        return self.phi.size

    def ravel(self) -> "Direction":
        return Direction(self.phi.ravel(), self.theta.ravel())


@dataclass(frozen=True)
class UlaGeometry:
    """N-element uniform linear array along the y-axis, spacing in wavelengths."""

    n_elements: int
    spacing_y: float = 0.5

    def __post_init__(self):
        if int(self.n_elements) != self.n_elements or self.n_elements < 1:
            raise ValueError("n_elements must be a positive integer")
        if not self.spacing_y > 0:
            raise ValueError("spacing_y must be positive")

    @property
    def shape(self) -> tuple[int, int]:
        return (1, self.n_elements)


@dataclass(frozen=True)
class UraGeometry:
    """M x N uniform rectangular array in the y-z plane.

    ``z_phase_factor`` scales the vertical phase progression,
    ``psi_z = -z_phase_factor * pi * d_z * cos(theta)``. The physical value is
    2, matching the horizontal progression; 1 is kept available for
    reproducing the half-factor variant of the formula.
    """

    m_rows: int
    n_cols: int
    spacing_y: float = 0.5
    spacing_z: float = 0.5
    z_phase_factor: float = 2.0

    def __post_init__(self):
        for name in ("m_rows", "n_cols"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ValueError(f"{name} must be a positive integer")
        if not (self.spacing_y > 0 and self.spacing_z > 0):
            raise ValueError("element spacings must be positive")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m_rows, self.n_cols)


Geometry = Union[UlaGeometry, UraGeometry]


def unit_vector(d: Direction) -> np.ndarray:
    """Unit direction vector(s), shape ``d.shape + (3,)``."""
    st = np.sin(d.theta)
    return np.stack([st * np.cos(d.phi), st * np.sin(d.phi), np.cos(d.theta)], axis=-1)


def phase_y(g: Geometry, d: Direction) -> ArrayLike:
    """Inter-column phase progression ``-2 pi d_y sin(theta) sin(phi)``."""
    return -2.0 * np.pi * g.spacing_y * np.sin(d.theta) * np.sin(d.phi)


def phase_z(g: UraGeometry, d: Direction) -> ArrayLike:
    """Inter-row phase progression ``-c_z pi d_z cos(theta)``."""
    if not isinstance(g, UraGeometry):
        return np.zeros_like(d.theta)
    return -g.z_phase_factor * np.pi * g.spacing_z * np.cos(d.theta)


def steering_vector_ula(g: UlaGeometry, d: Direction) -> np.ndarray:
    """Steering vector(s) ``exp(j n psi_y)``, shape ``d.shape + (N,)``."""
    n = np.arange(g.n_elements)
    return np.exp(1j * np.multiply.outer(phase_y(g, d), n))


def steering_matrix_ura(g: UraGeometry, d: Direction) -> np.ndarray:
    """Steering matrix ``a[m, n] = exp(j (n psi_y + m psi_z))``, shape ``d.shape + (M, N)``."""
    m = np.arange(g.m_rows)
    n = np.arange(g.n_cols)
    py = np.asarray(phase_y(g, d))[..., None, None]
    pz = np.asarray(phase_z(g, d))[..., None, None]
    return np.exp(1j * (n[None, :] * py + m[:, None] * pz))


def vec(x: np.ndarray) -> np.ndarray:
    """Column-major vectorization over the last two axes."""
    x = np.asarray(x)
    return np.swapaxes(x, -1, -2).reshape(x.shape[:-2] + (-1,))


def as_ura(g: Geometry) -> UraGeometry:
    """View a ULA as a single-row URA."""
    if isinstance(g, UraGeometry):
        return g
    return UraGeometry(1, g.n_elements, spacing_y=g.spacing_y)


def angle_grid(step_deg: float = 0.5, theta_range=(0.0, 180.0), phi_range=(-180.0, 180.0)) -> Direction:
    """Uniform (theta, phi) grid, theta-major ordering."""
    th = _inclusive_range(*theta_range, step_deg)
    ph = _inclusive_range(*phi_range, step_deg)
    T, P = np.meshgrid(th, ph, indexing="ij")
    return Direction.from_degrees(P.ravel(), T.ravel())


def azimuth_cut(step_deg: float = 0.5, zenith_deg: float = 90.0, phi_range=(-180.0, 180.0)) -> Direction:
    ph = _inclusive_range(*phi_range, step_deg)
    return Direction.from_degrees(ph, np.full_like(ph, zenith_deg))


def elevation_cut(step_deg: float = 0.5, azimuth_deg: float = 0.0, theta_range=(0.0, 180.0)) -> Direction:
    th = _inclusive_range(*theta_range, step_deg)
    return Direction.from_degrees(np.full_like(th, azimuth_deg), th)


def _inclusive_range(lo: float, hi: float, step: float) -> np.ndarray:
    if step <= 0:
        raise ValueError("grid step must be positive")
    n = int(np.floor((hi - lo) / step + 1e-9))
    return np.linspace(lo, lo + n * step, n + 1)
