"""NumPy reference kernels.

``dual_pol_fields(wa, wb, psi_y, psi_z)`` evaluates, for every direction g,

    e_X[g] = sum_{m,n} W_X[m, n] exp(j (n psi_y[g] + m psi_z[g]))

for both polarizations. ``wa``/``wb`` are C-contiguous complex ``M x N``
arrays, ``psi_y``/``psi_z`` contiguous float vectors of equal length.
"""

import numpy as np

_BLOCK = 8192


def dual_pol_fields(wa, wb, psi_y, psi_z):
    wa = np.asarray(wa, dtype=complex)
    wb = np.asarray(wb, dtype=complex)
    psi_y = np.asarray(psi_y, dtype=float)
    psi_z = np.asarray(psi_z, dtype=float)
    if wa.shape != wb.shape:
        raise ValueError("polarization weight shapes differ")
    if psi_y.shape != psi_z.shape:
        raise ValueError("psi_y and psi_z lengths differ")
    n_rows, n_cols = wa.shape
    m = np.arange(n_rows)
    n = np.arange(n_cols)
    ea = np.empty(psi_y.size, dtype=complex)
    eb = np.empty(psi_y.size, dtype=complex)
    for lo in range(0, psi_y.size, _BLOCK):
        sl = slice(lo, lo + _BLOCK)
        ay = np.exp(1j * np.multiply.outer(psi_y[sl], n))
        az = np.exp(1j * np.multiply.outer(psi_z[sl], m))
        ea[sl] = np.einsum("gm,gm->g", az, ay @ wa.T)
        eb[sl] = np.einsum("gm,gm->g", az, ay @ wb.T)
    return ea, eb


def total_power(wa, wb, psi_y, psi_z):
    ea, eb = dual_pol_fields(wa, wb, psi_y, psi_z)
    return ea.real**2 + ea.imag**2 + eb.real**2 + eb.imag**2
