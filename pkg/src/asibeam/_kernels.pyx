# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dual-polarization field kernel.

Same contract as ``asibeam._kernels_py``; see there for the argument layout.

For each direction the row phasors ``exp(j m psi_z)`` are tabulated once,
every column is reduced against them as a plain dot product, and the column
sums are combined by Horner's rule in ``exp(j psi_y)``.
Directions are independent and split across OpenMP threads; every direction
runs the same arithmetic whatever the thread count, so results do not
depend on it.
"""
import numpy as np

from cython.parallel cimport parallel, prange
from libc.math cimport cos, sin
from libc.stdlib cimport free, malloc


def dual_pol_fields(const double complex[:, ::1] wa,
                    const double complex[:, ::1] wb,
                    const double[::1] psi_y,
                    const double[::1] psi_z):
    cdef Py_ssize_t n_dir = psi_y.shape[0]
    cdef Py_ssize_t n_rows = wa.shape[0]
    cdef Py_ssize_t n_cols = wa.shape[1]

    if wb.shape[0] != n_rows or wb.shape[1] != n_cols:
        raise ValueError("polarization weight shapes differ")
    if psi_z.shape[0] != n_dir:
        raise ValueError("psi_y and psi_z lengths differ")

    # column-major real/imag copies: the inner Horner loop walks one column
    cdef const double[:, ::1] ar = np.ascontiguousarray(np.asarray(wa).real.T)
    cdef const double[:, ::1] ai = np.ascontiguousarray(np.asarray(wa).imag.T)
    cdef const double[:, ::1] br = np.ascontiguousarray(np.asarray(wb).real.T)
    cdef const double[:, ::1] bi = np.ascontiguousarray(np.asarray(wb).imag.T)

    out_a = np.empty(n_dir, dtype=np.complex128)
    out_b = np.empty(n_dir, dtype=np.complex128)
    cdef double complex[::1] ea = out_a
    cdef double complex[::1] eb = out_b

    cdef Py_ssize_t g, m, n
    cdef double yr, yi, t
    cdef double ca_r, ca_i, cb_r, cb_i, sa_r, sa_i, sb_r, sb_i
    cdef double *zr
    cdef double *zi

    with nogil, parallel():
        zr = <double *> malloc(n_rows * sizeof(double))
        zi = <double *> malloc(n_rows * sizeof(double))
        if zr == NULL or zi == NULL:
            with gil:
                raise MemoryError()
        for g in prange(n_dir, schedule="static"):
            yr = cos(psi_y[g])
            yi = sin(psi_y[g])
            for m in range(n_rows):
                zr[m] = cos(m * psi_z[g])
                zi[m] = sin(m * psi_z[g])
            sa_r = 0.0
            sa_i = 0.0
            sb_r = 0.0
            sb_i = 0.0
            for n in range(n_cols - 1, -1, -1):
                ca_r = 0.0
                ca_i = 0.0
                cb_r = 0.0
                cb_i = 0.0
                for m in range(n_rows):
                    ca_r = ca_r + ar[n, m] * zr[m] - ai[n, m] * zi[m]
                    ca_i = ca_i + ar[n, m] * zi[m] + ai[n, m] * zr[m]
                    cb_r = cb_r + br[n, m] * zr[m] - bi[n, m] * zi[m]
                    cb_i = cb_i + br[n, m] * zi[m] + bi[n, m] * zr[m]
                t = sa_r * yr - sa_i * yi + ca_r
                sa_i = sa_r * yi + sa_i * yr + ca_i
                sa_r = t
                t = sb_r * yr - sb_i * yi + cb_r
                sb_i = sb_r * yi + sb_i * yr + cb_i
                sb_r = t
            ea[g] = sa_r + 1j * sa_i
            eb[g] = sb_r + 1j * sb_i
        free(zr)
        free(zi)
    return out_a, out_b


def total_power(const double complex[:, ::1] wa,
                const double complex[:, ::1] wb,
                const double[::1] psi_y,
                const double[::1] psi_z):
    ea, eb = dual_pol_fields(wa, wb, psi_y, psi_z)
    return ea.real ** 2 + ea.imag ** 2 + eb.real ** 2 + eb.imag ** 2
