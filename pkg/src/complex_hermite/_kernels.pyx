# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; same signatures and semantics as ``_kernels_py``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


def chp_table(z, double nu, Py_ssize_t m_max, Py_ssize_t n_max):
    cdef double complex zz = complex(z)
    cdef double complex nz = nu * zz
    cdef double complex nzb = nu * zz.conjugate()
    out = np.empty((m_max + 1, n_max + 1), dtype=np.complex128)
    cdef double complex[:, ::1] h = out
    cdef Py_ssize_t m, n
    h[0, 0] = 1.0
    for n in range(1, n_max + 1):
        h[0, n] = nzb * h[0, n - 1]
    for m in range(m_max):
        h[m + 1, 0] = nz * h[m, 0]
        for n in range(1, n_max + 1):
            h[m + 1, n] = nz * h[m, n] - (nu * n) * h[m, n - 1]
    return out


def chp_points(Py_ssize_t m, Py_ssize_t n, zs, double nu):
    arr = np.asarray(zs, dtype=np.complex128)
    flat_arr = np.ascontiguousarray(arr.ravel())
    cdef double complex[::1] flat = flat_arr
    res = np.empty(flat_arr.shape[0], dtype=np.complex128)
    cdef double complex[::1] out = res
    cdef double complex[::1] row = np.empty(n + 1, dtype=np.complex128)
    cdef Py_ssize_t p, i, j
    cdef double complex zz, nz, nzb, prev, cur
    for p in range(flat.shape[0]):
        zz = flat[p]
        nz = nu * zz
        nzb = nu * zz.conjugate()
        row[0] = 1.0
        for j in range(1, n + 1):
            row[j] = nzb * row[j - 1]
        for i in range(m):
            # in-place update; keep the old row[j-1] in prev
            prev = row[0]
            row[0] = nz * row[0]
            for j in range(1, n + 1):
                cur = row[j]
                row[j] = nz * cur - (nu * j) * prev
                prev = cur
        out[p] = row[n]
    return res.reshape(arr.shape)


def chp_scaled_table(z, double nu, Py_ssize_t order):
    cdef double complex zz = complex(z)
    cdef double x = nu * (zz.real * zz.real + zz.imag * zz.imag)
    cdef double complex step = sqrt(nu) * zz
    cdef Py_ssize_t size = order + 1
    out = np.zeros((size, size), dtype=np.complex128)
    cdef double complex[:, ::1] h = out
    cdef Py_ssize_t d, n
    cdef double complex pref = 1.0
    cdef double lam_prev, lam, nxt, sign
    for d in range(size):
        if d > 0:
            pref = pref * step / sqrt(<double>d)
        lam_prev = 0.0
        lam = 1.0
        sign = 1.0
        for n in range(size - d):
            h[n + d, n] = sign * pref * lam
            nxt = ((2 * n + 1 + d - x) * lam - sqrt(<double>(n * (n + d))) * lam_prev) \
                / sqrt(<double>((n + 1) * (n + 1 + d)))
            lam_prev = lam
            lam = nxt
            sign = -sign
    for n in range(size):
        for d in range(n + 1, size):
            h[n, d] = h[d, n].conjugate()
    return out


def hermite_function_table(double x, Py_ssize_t order):
    out = np.empty(order + 1)
    cdef double[::1] psi = out
    cdef Py_ssize_t n
    psi[0] = 1.0
    if order >= 1:
        psi[1] = sqrt(2.0) * x
    for n in range(1, order):
        psi[n + 1] = sqrt(2.0 / (n + 1)) * x * psi[n] - sqrt(n / (n + 1.0)) * psi[n - 1]
    return out
