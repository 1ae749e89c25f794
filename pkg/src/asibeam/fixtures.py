"""Reference weight sets used as golden fixtures.

Values are copied verbatim (three decimals where printed that way).
"""

import numpy as np

from .weights import DualPolWeights

# 8-element ULA from a single element expanded three times
ULA8_A = np.array([1, -1, -1, -1, -1, 1, -1, -1], dtype=complex)
ULA8_B = np.array([1, 1, -1, 1, -1, -1, -1, 1], dtype=complex)

# 8x8 URA, rows expanded first, then columns
URA8_A = np.array(
    [
        [1, -1, -1, -1, -1, 1, -1, -1],
        [-1, 1, 1, 1, 1, -1, 1, 1],
        [-1, 1, 1, 1, 1, -1, 1, 1],
        [-1, 1, 1, 1, 1, -1, 1, 1],
        [-1, -1, 1, -1, 1, 1, 1, -1],
        [1, 1, -1, 1, -1, -1, -1, 1],
        [-1, -1, 1, -1, 1, 1, 1, -1],
        [-1, -1, 1, -1, 1, 1, 1, -1],
    ],
    dtype=complex,
)
URA8_B = np.array(
    [
        [1, -1, -1, -1, -1, 1, -1, -1],
        [1, -1, -1, -1, -1, 1, -1, -1],
        [-1, 1, 1, 1, 1, -1, 1, 1],
        [1, -1, -1, -1, -1, 1, -1, -1],
        [-1, -1, 1, -1, 1, 1, 1, -1],
        [-1, -1, 1, -1, 1, 1, 1, -1],
        [-1, -1, 1, -1, 1, 1, 1, -1],
        [1, 1, -1, 1, -1, -1, -1, 1],
    ],
    dtype=complex,
)

# single-polarization design: 4 elevation subarrays and 8 columns
SPBF_WZ_SUB = np.array([0.297 - 0.146j, 0.271 + 0.256j, 0.267 + 0.260j, 0.301 - 0.146j])
SPBF_WY = np.array(
    [
        0.189 + 0.189j,
        0.093 - 0.165j,
        -0.244 + 0.112j,
        -0.129 + 0.232j,
        -0.129 + 0.232j,
        -0.244 + 0.112j,
        0.093 - 0.165j,
        0.189 + 0.189j,
    ]
)

# dual-polarization design: elevation subarray vector (pol A; pol B is its
# conjugate) and the 2-element azimuth protoarray (pol B is its conjugate)
DPBF_WZ_SUB_A = np.array([0.271 + 0.227j, 0.181 + 0.304j, -0.091 + 0.342j, -0.199 + 0.292j])
DPBF_WY_PROTO_A = np.array([0.458 - 0.200j, 0.458 + 0.200j])


def single_element() -> DualPolWeights:
    return DualPolWeights(np.array([1.0 + 0j]), np.array([1.0 + 0j]))


def ula8() -> DualPolWeights:
    return DualPolWeights(ULA8_A, ULA8_B)


def ura8x8() -> DualPolWeights:
    return DualPolWeights(URA8_A, URA8_B)


def dpbf_azimuth_proto() -> DualPolWeights:
    return DualPolWeights(DPBF_WY_PROTO_A, np.conj(DPBF_WY_PROTO_A))


def dpbf_elevation_sub(project_phase: bool = True) -> DualPolWeights:
    """Elevation subarray weights; printed values are rounded, so by default
    they are projected onto the constant modulus ``1/sqrt(8)``."""
    wa = DPBF_WZ_SUB_A
    if project_phase:
        wa = np.exp(1j * np.angle(wa)) / np.sqrt(2 * wa.size)
    return DualPolWeights(wa, np.conj(wa))
