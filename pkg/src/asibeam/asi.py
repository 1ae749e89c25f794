"""
Array-size invariant (ASI) expansion.

A protoarray is doubled by appending a companion array whose weights are
the reversed, conjugated weights of the opposite polarization (negated for
polarization A). The companion's field is orthogonal to the protoarray's
field in every direction, so the total power pattern is exactly doubled.
Reversals are done by index slicing; exchange matrices are never formed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .geometry import Direction, Geometry, UlaGeometry, UraGeometry
from .patterns import ElementPattern, array_factor_total, fields
from .weights import DualPolWeights


class AttachSide(enum.Enum):
    """Where the companion goes: below the rows or right of the columns."""

    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"


def companion_ula(w: DualPolWeights) -> DualPolWeights:
    """Companion weights ``(-J conj(w_B), J conj(w_A))``."""
    if not w.is_vector:
        raise ValueError("companion_ula needs vector weights")
    return DualPolWeights(-np.conj(w.w_b[::-1]), np.conj(w.w_a[::-1]))


def companion_ura(w: DualPolWeights) -> DualPolWeights:
    """Companion weights ``(-J_M conj(W_B) J_N, J_M conj(W_A) J_N)``."""
    if w.is_vector:
        raise ValueError("companion_ura needs matrix weights")
    return DualPolWeights(-np.conj(w.w_b[::-1, ::-1]), np.conj(w.w_a[::-1, ::-1]))


def expand_ula(w: DualPolWeights, k: int) -> DualPolWeights:
    """Double a ULA ``k`` times; the result has ``N * 2**k`` elements."""
    if k < 0:
        raise ValueError("k must be non-negative")
    steps = 0
    for _ in range(k):
        c = companion_ula(w)
        w = DualPolWeights(np.concatenate([w.w_a, c.w_a]), np.concatenate([w.w_b, c.w_b]))
        steps += 1
    return w.with_provenance(expansion="ula", companion_steps=steps)


def attach(w: DualPolWeights, side: AttachSide) -> DualPolWeights:
    """One URA expansion step."""
    c = companion_ura(w)
    axis = 0 if AttachSide(side) is AttachSide.VERTICAL else 1
    return DualPolWeights(
        np.concatenate([w.w_a, c.w_a], axis=axis),
        np.concatenate([w.w_b, c.w_b], axis=axis),
    )


ExpansionOrder = Union[str, Sequence[AttachSide]]


def expansion_schedule(k: int, l: int, order: ExpansionOrder = "vertical_first") -> list[AttachSide]:
    """Sequence of attach steps: ``k`` horizontal and ``l`` vertical doublings."""
    if k < 0 or l < 0:
        raise ValueError("k and l must be non-negative")
    if order == "vertical_first":
        return [AttachSide.VERTICAL] * l + [AttachSide.HORIZONTAL] * k
    if order == "horizontal_first":
        return [AttachSide.HORIZONTAL] * k + [AttachSide.VERTICAL] * l
    if isinstance(order, str):
        raise ValueError(f"unknown expansion order {order!r}")
    sched = [AttachSide(s) for s in order]
    if sched.count(AttachSide.HORIZONTAL) != k or sched.count(AttachSide.VERTICAL) != l:
        raise ValueError("explicit schedule does not match k and l")
    return sched


def expand_ura(w: DualPolWeights, k: int, l: int, order: ExpansionOrder = "vertical_first") -> DualPolWeights:
    """Expand a URA to ``(M * 2**l) x (N * 2**k)``.

    ``order`` is ``"vertical_first"`` (rows doubled first, as in the
    elevation-then-azimuth recipe), ``"horizontal_first"``, or an explicit
    sequence of :class:`AttachSide`. The schedule used is recorded in
    ``provenance["schedule"]``.
    """
    schedule = expansion_schedule(k, l, order)
    w = w.as_matrix()
    for side in schedule:
        w = attach(w, side)
    return w.with_provenance(expansion="ura", schedule=[s.value for s in schedule],
                             companion_steps=len(schedule))


def orthogonal_twin(w: DualPolWeights) -> DualPolWeights:
    """A beam with the same total power pattern and orthogonal field.

    The companion weights are placed on the same elements instead of being
    appended. The reversal only multiplies the steering vector by a common
    phase and conjugates it, so the twin's total pattern is unchanged and
    its field is orthogonal to the original's everywhere.
    """
    return companion_ula(w) if w.is_vector else companion_ura(w)


@dataclass(frozen=True)
class ExpansionReport:
    """Numerical check of one expansion step.

    ``max_field_inner`` is ``max |e_1^H e_2|`` over the grid divided by the
    peak protoarray power; ``max_pattern_dev`` is ``max |G - r G_1|`` over
    the peak of ``r G_1`` (``r`` = size ratio, 1 or 2); ``flatness_dev`` is
    the relative spread of the expanded array factor when the protoarray
    factor is flat, else ``None``.
    """

    size_ratio: int
    max_field_inner: float
    max_pattern_dev: float
    flatness_dev: float | None


def verify_expansion(
    w_proto: DualPolWeights,
    w_expanded: DualPolWeights,
    g_proto: Geometry,
    g_expanded: Geometry,
    grid: Direction,
    element: ElementPattern | None = None,
    flat_tol: float = 1e-9,
) -> ExpansionReport:
    element = element or ElementPattern.isotropic()
    _check_compatible(g_proto, g_expanded)
    proto_m = w_proto.as_matrix().w_a
    exp_m = w_expanded.as_matrix().w_a
    if isinstance(g_expanded, UlaGeometry) != isinstance(g_proto, UlaGeometry):
        raise ValueError("geometry kinds differ")
    pr, pc = proto_m.shape
    er, ec = exp_m.shape
    if (pr, pc) != tuple(g_proto.shape) or (er, ec) != tuple(g_expanded.shape):
        raise ValueError("weights do not match their geometries")
    if er % pr or ec % pc or (er // pr) * (ec // pc) not in (1, 2):
        raise ValueError(f"{(er, ec)} is not a single expansion of {(pr, pc)}")
    ratio = (er // pr) * (ec // pc)

    g1 = _total(w_proto, g_proto, element, grid)
    g = _total(w_expanded, g_expanded, element, grid)
    scale = max(float(np.max(ratio * g1)), np.finfo(float).tiny)
    pattern_dev = float(np.max(np.abs(g - ratio * g1)) / scale)

    if ratio == 1:
        inner = 0.0
    else:
        first, rest = _split(w_expanded, pr, pc)
        e1a, e1b = fields(first, g_expanded, element, grid)
        e2a, e2b = fields(rest, g_expanded, element, grid)
        ip = np.conj(e1a) * e2a + np.conj(e1b) * e2b
        inner = float(np.max(np.abs(ip)) / max(float(np.max(g1)), np.finfo(float).tiny))

    flat = None
    af1 = array_factor_total(w_proto, g_proto, grid)
    if np.ptp(af1) <= flat_tol * np.max(af1):
        af = array_factor_total(w_expanded, g_expanded, grid)
        flat = float(np.ptp(af) / np.max(af))
    return ExpansionReport(ratio, inner, pattern_dev, flat)


def _total(w, g, p, d):
    ea, eb = fields(w, g, p, d)
    return ea.real**2 + ea.imag**2 + eb.real**2 + eb.imag**2


def _split(w: DualPolWeights, pr: int, pc: int):
    vec = w.is_vector
    m = w.as_matrix()
    first_a = np.zeros_like(m.w_a)
    first_b = np.zeros_like(m.w_b)
    first_a[:pr, :pc] = m.w_a[:pr, :pc]
    first_b[:pr, :pc] = m.w_b[:pr, :pc]
    rest_a = m.w_a - first_a
    rest_b = m.w_b - first_b
    if vec:
        first_a, first_b, rest_a, rest_b = (x[0] for x in (first_a, first_b, rest_a, rest_b))
    return _loose(first_a, first_b), _loose(rest_a, rest_b)


def _loose(a, b) -> DualPolWeights:
    # a zero-padded half can be all zero only for corrupted input; keep the
    # report meaningful instead of raising
    if not (np.any(a) or np.any(b)):
        a = a.copy()
        a.flat[0] = np.finfo(float).tiny
    return DualPolWeights(a, b)


def _check_compatible(g1: Geometry, g2: Geometry) -> None:
    if type(g1) is not type(g2):
        raise ValueError("geometry kinds differ")
    if g1.spacing_y != g2.spacing_y:
        raise ValueError("column spacings differ")
    if isinstance(g1, UraGeometry) and (g1.spacing_z != g2.spacing_z or g1.z_phase_factor != g2.z_phase_factor):
        raise ValueError("row spacings differ")
