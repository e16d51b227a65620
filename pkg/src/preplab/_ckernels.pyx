# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same contracts as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, isfinite

cnp.import_array()

BACKEND = "cython"


def int_convolve(list a, list b):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    if na == 0 or nb == 0:
        return []
    cdef list out = [0] * (na + nb - 1)
    cdef object x
    for i in range(na):
        x = a[i]
        if x:
            for j in range(nb):
                out[i + j] = out[i + j] + x * b[j]
    return out


cdef void _escape_row(const double[:] ar, const double[:] ai,
                      const double[:] br, const double[:] bi,
                      double cre0, double cim0, double re_min, double re_step,
                      double tim, Py_ssize_t width, int n_max, double radius,
                      double[:] wre, double[:] wim, int[:] out) noexcept nogil:
    cdef Py_ssize_t deg = ar.shape[0] - 1, col, k
    cdef int n, count
    cdef double tre, zr, zi, hr, hi, tr, r2, bound
    for col in range(width):
        tre = re_min + col * re_step
        for k in range(deg + 1):
            wre[k] = ar[k] * tre - ai[k] * tim + br[k]
            wim[k] = ar[k] * tim + ai[k] * tre + bi[k]
        if radius > 0:
            r2 = radius * radius
        else:
            bound = 1.0
            for k in range(deg):
                bound = bound + sqrt(wre[k] * wre[k] + wim[k] * wim[k])
            r2 = bound * bound
        zr = cre0
        zi = cim0
        count = n_max + 1
        for n in range(1, n_max + 1):
            hr = wre[deg]
            hi = wim[deg]
            for k in range(deg - 1, -1, -1):
                tr = hr * zr - hi * zi + wre[k]
                hi = hr * zi + hi * zr + wim[k]
                hr = tr
            zr = hr
            zi = hi
            if zr * zr + zi * zi > r2:
                count = n
                break
        out[col] = count


def escape_rows(acoef, bcoef, c, double re_min, double re_step,
                double im_min, double im_step, Py_ssize_t width,
                Py_ssize_t row_start, Py_ssize_t row_stop, int n_max,
                double radius, out):
    a = np.asarray(acoef, dtype=np.complex128)
    b = np.asarray(bcoef, dtype=np.complex128)
    cdef double[:] ar = np.ascontiguousarray(a.real)
    cdef double[:] ai = np.ascontiguousarray(a.imag)
    cdef double[:] br = np.ascontiguousarray(b.real)
    cdef double[:] bi = np.ascontiguousarray(b.imag)
    cdef double[:] wre = np.empty(len(a))
    cdef double[:] wim = np.empty(len(a))
    cdef int[:, :] view = out
    cdef double cre0 = complex(c).real, cim0 = complex(c).imag
    cdef Py_ssize_t row
    with nogil:
        for row in range(row_start, row_stop):
            _escape_row(ar, ai, br, bi, cre0, cim0, re_min, re_step,
                        im_min + row * im_step, width, n_max, radius,
                        wre, wim, view[row])


def aberth(coeffs, z0, int max_iter):
    a = np.asarray(coeffs, dtype=np.complex128)
    cdef Py_ssize_t n = len(a) - 1, i, j, k
    cdef double complex[:] av = a
    cdef double[:] absa = np.abs(a)
    z_arr = np.array(z0, dtype=np.complex128)
    znew_arr = z_arr.copy()
    conv_arr = np.zeros(n, dtype=np.uint8)
    cdef double complex[:] z = z_arr
    cdef double complex[:] znew = znew_arr
    cdef cnp.uint8_t[:] conv = conv_arr
    cdef double eps = np.finfo(np.float64).eps
    cdef double complex p, dp, s, ratio, delta
    cdef double err, az, dr, di
    cdef int it = 0
    cdef Py_ssize_t left = n
    with nogil:
        while it < max_iter and left > 0:
            it += 1
            for i in range(n):
                znew[i] = z[i]
                if conv[i]:
                    continue
                p = av[0]
                dp = 0
                err = absa[0]
                az = sqrt(z[i].real * z[i].real + z[i].imag * z[i].imag)
                for k in range(1, n + 1):
                    dp = dp * z[i] + p
                    p = p * z[i] + av[k]
                    err = err * az + absa[k]
                if _cabs(p) <= 4.0 * eps * err:
                    conv[i] = 2
                    continue
                s = 0
                for j in range(n):
                    if j != i:
                        s = s + 1.0 / (z[i] - z[j])
                ratio = p / dp
                delta = ratio / (1.0 - ratio * s)
                if not (isfinite(delta.real) and isfinite(delta.imag)):
                    delta = eps * (1.0 + az)
                znew[i] = z[i] - delta
                if _cabs(delta) <= 2.0 * eps * _cabs(znew[i]):
                    conv[i] = 2
            left = 0
            for i in range(n):
                z[i] = znew[i]
                if conv[i] == 2:
                    conv[i] = 1
                if not conv[i]:
                    left += 1
    return z_arr, conv_arr.astype(bool), it


cdef inline double _cabs(double complex x) noexcept nogil:
    return sqrt(x.real * x.real + x.imag * x.imag)
