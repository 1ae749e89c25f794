"""Minimal SVG writers for pattern cuts, CDFs and half-sphere heatmaps."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Mapping, Sequence
from xml.sax.saxutils import escape

import numpy as np

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _ticks(lo: float, hi: float, n: int = 6) -> np.ndarray:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=10 * mag)
    return np.arange(math.ceil(lo / step) * step, hi + 1e-9 * step, step)


def _num(x: float) -> str:
    return f"{x:.2f}"


def line_plot(path, series: Mapping[str, tuple[Sequence[float], Sequence[float]]], *,
              title: str = "", xlabel: str = "", ylabel: str = "",
              ylim: tuple[float, float] | None = None,
              width: int = 640, height: int = 420) -> Path:
    """Write a cartesian line plot, one polyline per named series."""
    if not series:
        raise ValueError("nothing to plot")
    xs = np.concatenate([np.asarray(x, float) for x, _ in series.values()])
    ys = np.concatenate([np.asarray(y, float) for _, y in series.values()])
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = ylim if ylim else (float(np.min(ys[np.isfinite(ys)])), float(np.max(ys[np.isfinite(ys)])))
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y0, y1 = y0 - 1.0, y1 + 1.0
    ml, mr, mt, mb = 64, 150, 36, 48
    pw, ph = width - ml - mr, height - mt - mb

    def sx(v):
        return ml + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return mt + (1 - (np.clip(v, y0, y1) - y0) / (y1 - y0)) * ph

    out = [_header(width, height)]
    out.append(f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="#444"/>')
    for t in _ticks(x0, x1):
        X = _num(sx(t))
        out.append(f'<line x1="{X}" y1="{mt}" x2="{X}" y2="{mt + ph}" stroke="#ddd"/>')
        out.append(f'<text x="{X}" y="{mt + ph + 16}" text-anchor="middle">{t:g}</text>')
    for t in _ticks(y0, y1):
        Y = _num(sy(t))
        out.append(f'<line x1="{ml}" y1="{Y}" x2="{ml + pw}" y2="{Y}" stroke="#ddd"/>')
        out.append(f'<text x="{ml - 6}" y="{Y}" text-anchor="end" dominant-baseline="middle">{t:g}</text>')
    for i, (name, (x, y)) in enumerate(series.items()):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{_num(sx(a))},{_num(sy(b))}" for a, b in zip(x, y) if np.isfinite(b))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = mt + 14 + 18 * i
        out.append(f'<line x1="{ml + pw + 10}" y1="{ly}" x2="{ml + pw + 30}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{ml + pw + 36}" y="{ly}" dominant-baseline="middle">{escape(name)}</text>')
    out.append(f'<text x="{ml + pw / 2}" y="20" text-anchor="middle" font-size="14">{escape(title)}</text>')
    out.append(f'<text x="{ml + pw / 2}" y="{height - 8}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="14" y="{mt + ph / 2}" text-anchor="middle" '
               f'transform="rotate(-90 14 {mt + ph / 2})">{escape(ylabel)}</text>')
    out.append("</svg>\n")
    return _write(path, out)


def cdf_plot(path, samples: Mapping[str, np.ndarray], *, title: str = "Received power CDF",
             xlabel: str = "received power [dBm]") -> Path:
    series = {}
    for name, v in samples.items():
        v = np.sort(np.asarray(v, float))
        series[name] = (v, np.arange(1, v.size + 1) / v.size)
    return line_plot(path, series, title=title, xlabel=xlabel, ylabel="CDF", ylim=(0.0, 1.0))


def _colormap(t: np.ndarray) -> list[str]:
    # dark blue -> teal -> yellow
    stops = np.array([[0.0, 20, 30, 90], [0.5, 30, 150, 140], [1.0, 250, 230, 40]])
    t = np.clip(t, 0.0, 1.0)
    rgb = np.stack([np.interp(t, stops[:, 0], stops[:, k]) for k in (1, 2, 3)], axis=-1)
    return [f"#{int(r):02x}{int(g):02x}{int(b):02x}" for r, g, b in rgb]


def polar_heatmap(path, theta_deg: np.ndarray, phi_deg: np.ndarray, value_db: np.ndarray, *,
                  title: str = "", dynamic_range_db: float = 40.0, size: int = 520) -> Path:
    """Front half-sphere (|phi| <= 90) seen from boresight.

    Points are placed by orthographic projection of the unit vector onto
    the y-z plane; each sample becomes one small square.
    """
    theta = np.deg2rad(np.asarray(theta_deg, float)).ravel()
    phi = np.deg2rad(np.asarray(phi_deg, float)).ravel()
    val = np.asarray(value_db, float).ravel()
    keep = np.abs(phi) <= np.pi / 2 + 1e-12
    theta, phi, val = theta[keep], phi[keep], val[keep]
    if val.size == 0:
        raise ValueError("no samples on the front half-sphere")
    top = float(np.max(val))
    colors = _colormap((val - (top - dynamic_range_db)) / dynamic_range_db)
    r = size / 2 - 40
    cx, cy = size / 2, size / 2 + 10
    y = np.sin(theta) * np.sin(phi)
    z = np.cos(theta)
    cell = max(2.0, 2.2 * r / math.sqrt(val.size))
    out = [_header(size, size)]
    out.append(f'<circle cx="{cx}" cy="{cy}" r="{r + 1}" fill="#111"/>')
    for yy, zz, c in zip(y, z, colors):
        out.append(f'<rect x="{_num(cx + yy * r - cell / 2)}" y="{_num(cy - zz * r - cell / 2)}" '
                   f'width="{_num(cell)}" height="{_num(cell)}" fill="{c}"/>')
    out.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="none" stroke="#888"/>')
    out.append(f'<text x="{cx}" y="20" text-anchor="middle" font-size="14">{escape(title)}</text>')
    out.append(f'<text x="{cx}" y="{size - 6}" text-anchor="middle">'
               f'peak {top:.1f} dB, range {dynamic_range_db:g} dB</text>')
    out.append("</svg>\n")
    return _write(path, out)


def _header(w: int, h: int) -> str:
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
            f'viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="11">\n'
            f'<rect width="{w}" height="{h}" fill="white"/>')


def _write(path, parts: list[str]) -> Path:
    path = Path(path)
    path.write_text("\n".join(parts), encoding="utf-8")
    return path
