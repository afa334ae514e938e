# Compiled hot kernels: complex soft-thresholding and the periodic DB-4
# filter bank. Mirrors ncbinsar._pykernels exactly.

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

cdef double _S3 = sqrt(3.0)
cdef double _NORM = 4.0 * sqrt(2.0)
cdef double H0 = (1.0 + _S3) / _NORM
cdef double H1 = (3.0 + _S3) / _NORM
cdef double H2 = (3.0 - _S3) / _NORM
cdef double H3 = (1.0 - _S3) / _NORM
cdef double G0 = H3
cdef double G1 = -H2
cdef double G2 = H1
cdef double G3 = -H0


def soft_threshold(v, double kappa):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] src = np.ascontiguousarray(v, dtype=np.complex128).ravel()
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] dst = np.empty_like(src)
    cdef Py_ssize_t i, n = src.shape[0]
    cdef double re, im, mag, scale
    with nogil:
        for i in range(n):
            re = src[i].real
            im = src[i].imag
            mag = sqrt(re * re + im * im)
            if mag > kappa:
                scale = (mag - kappa) / mag
                dst[i].real = re * scale
                dst[i].imag = im * scale
            else:
                dst[i].real = 0.0
                dst[i].imag = 0.0
    return dst.reshape(np.shape(v))


def db4_analyze_rows(x):
    cdef double[:, ::1] src = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t rows = src.shape[0], n = src.shape[1]
    cdef Py_ssize_t half = n // 2
    out = np.empty((rows, n), dtype=np.float64)
    cdef double[:, ::1] dst = out
    cdef Py_ssize_t r, k, i0, i1, i2, i3
    cdef double x0, x1, x2, x3
    with nogil:
        for r in range(rows):
            for k in range(half):
                i0 = 2 * k
                i1 = i0 + 1
                i2 = (i0 + 2) % n
                i3 = (i0 + 3) % n
                x0 = src[r, i0]
                x1 = src[r, i1]
                x2 = src[r, i2]
                x3 = src[r, i3]
                dst[r, k] = H0 * x0 + H1 * x1 + H2 * x2 + H3 * x3
                dst[r, half + k] = G0 * x0 + G1 * x1 + G2 * x2 + G3 * x3
    return out


def db4_synthesize_rows(c):
    cdef double[:, ::1] src = np.ascontiguousarray(c, dtype=np.float64)
    cdef Py_ssize_t rows = src.shape[0], n = src.shape[1]
    cdef Py_ssize_t half = n // 2
    out = np.empty((rows, n), dtype=np.float64)
    cdef double[:, ::1] dst = out
    cdef Py_ssize_t r, k, km
    cdef double a, d, a1, d1
    with nogil:
        for r in range(rows):
            for k in range(half):
                km = k - 1 if k > 0 else half - 1
                a = src[r, k]
                d = src[r, half + k]
                a1 = src[r, km]
                d1 = src[r, half + km]
                dst[r, 2 * k] = H0 * a + G0 * d + H2 * a1 + G2 * d1
                dst[r, 2 * k + 1] = H1 * a + G1 * d + H3 * a1 + G3 * d1
    return out
