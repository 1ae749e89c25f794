"""Dual-polarized excitation weights and their CSV representation."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

import numpy as np


class UnnormalizedWeightsError(ValueError):
    """Raised when an operation needs power-normalized weights."""


@dataclass(frozen=True)
class DualPolWeights:
    """Per-polarization complex excitations.

    ``w_a`` and ``w_b`` are either vectors (ULA) or ``M x N`` matrices (URA,
    rows along z). ``power_dbm`` is set by power normalization; amplitudes
    are then in sqrt(mW).
    """

    w_a: np.ndarray
    w_b: np.ndarray
    power_dbm: Optional[float] = None
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        a = np.array(self.w_a, dtype=complex)
        b = np.array(self.w_b, dtype=complex)
        if a.shape != b.shape:
            raise ValueError(f"polarization shapes differ: {a.shape} vs {b.shape}")
        if a.ndim not in (1, 2) or a.size == 0:
            raise ValueError("weights must be a non-empty vector or matrix")
        if not (np.any(a) or np.any(b)):
            raise ValueError("all weights are zero")
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "w_a", a)
        object.__setattr__(self, "w_b", b)

    @property
    def shape(self) -> tuple:
        return self.w_a.shape

    @property
    def is_vector(self) -> bool:
        return self.w_a.ndim == 1

    @property
    def n_entries(self) -> int:
        """Number of power amplifiers driven (both polarizations)."""
        return 2 * self.w_a.size

    @property
    def is_normalized(self) -> bool:
        return self.power_dbm is not None

    def as_matrix(self) -> "DualPolWeights":
        """Vectors become single-row matrices (a ULA is one URA row)."""
        if not self.is_vector:
            return self
        return replace(self, w_a=self.w_a[None, :], w_b=self.w_b[None, :])

    def stacked(self) -> np.ndarray:
        """All entries of both polarizations, column-major per polarization."""
        return np.concatenate([self.w_a.ravel(order="F"), self.w_b.ravel(order="F")])

    def scaled(self, alpha: complex) -> "DualPolWeights":
        return replace(self, w_a=self.w_a * alpha, w_b=self.w_b * alpha)

    def with_provenance(self, **info) -> "DualPolWeights":
        return replace(self, provenance={**self.provenance, **info})

    def allclose(self, other: "DualPolWeights", atol: float = 1e-12) -> bool:
        return (
            self.shape == other.shape
            and np.allclose(self.w_a, other.w_a, rtol=0, atol=atol)
            and np.allclose(self.w_b, other.w_b, rtol=0, atol=atol)
        )


WEIGHT_CSV_HEADER = ["row", "col", "re_a", "im_a", "re_b", "im_b"]


def write_weights_csv(w: DualPolWeights, path) -> Path:
    """Write weights row-major with 12 significant digits; vectors are row 0."""
    m = w.as_matrix()
    path = Path(path)
    with path.open("w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(WEIGHT_CSV_HEADER)
        rows, cols = m.shape
        for r in range(rows):
            for c in range(cols):
                a = m.w_a[r, c]
                b = m.w_b[r, c]
                out.writerow([r, c] + [_fmt(x) for x in (a.real, a.imag, b.real, b.imag)])
    return path


def read_weights_csv(path, as_vector: Optional[bool] = None) -> DualPolWeights:
    """Read a weight CSV.

    With ``as_vector=None`` a single-row file is returned as a vector.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != WEIGHT_CSV_HEADER:
            raise ValueError(f"{path}: expected header {','.join(WEIGHT_CSV_HEADER)}")
        records = [row for row in reader if row]
    if not records:
        raise ValueError(f"{path}: no weight rows")
    idx = np.array([[int(r[0]), int(r[1])] for r in records])
    vals = np.array([[float(x) for x in r[2:6]] for r in records])
    rows, cols = idx.max(axis=0) + 1
    if len(records) != rows * cols or len({tuple(i) for i in idx}) != len(records):
        raise ValueError(f"{path}: incomplete or duplicated (row, col) entries")
    wa = np.zeros((rows, cols), dtype=complex)
    wb = np.zeros((rows, cols), dtype=complex)
    wa[idx[:, 0], idx[:, 1]] = vals[:, 0] + 1j * vals[:, 1]
    wb[idx[:, 0], idx[:, 1]] = vals[:, 2] + 1j * vals[:, 3]
    if as_vector is None:
        as_vector = rows == 1
    if as_vector:
        if rows != 1:
            raise ValueError(f"{path}: {rows} rows cannot be read as a vector")
        return DualPolWeights(wa[0], wb[0])
    return DualPolWeights(wa, wb)


def _fmt(x: float) -> str:
    s = f"{x:.12g}"
    return "0" if s == "-0" else s
