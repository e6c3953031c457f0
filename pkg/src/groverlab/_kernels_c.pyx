# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same contract as ``_kernels_py``.

In-place, cache-friendly loops over (N,) vectors or C-contiguous (N, K)
column batches of complex128.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

BACKEND = "compiled"


cdef void _hadamard(double complex[:, ::1] a) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t k = a.shape[1]
    cdef Py_ssize_t h = 1
    cdef Py_ssize_t base, i, c
    cdef double complex x, y
    cdef double s
    while h < n:
        base = 0
        while base < n:
            for i in range(base, base + h):
                for c in range(k):
                    x = a[i, c]
                    y = a[i + h, c]
                    a[i, c] = x + y
                    a[i + h, c] = x - y
            base += 2 * h
        h *= 2
    s = 1.0 / sqrt(<double> n)
    for i in range(n):
        for c in range(k):
            a[i, c] = a[i, c] * s


cdef void _phase_rows(double complex[:, ::1] a, const cnp.int64_t[::1] rows,
                      double complex phase) noexcept nogil:
    cdef Py_ssize_t j, c, r
    for j in range(rows.shape[0]):
        r = rows[j]
        for c in range(a.shape[1]):
            a[r, c] = a[r, c] * phase


cdef void _reflect(double complex[:, ::1] a, const double complex[::1] axis,
                   double complex factor, double complex[::1] coef) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t k = a.shape[1]
    cdef Py_ssize_t i, c
    for c in range(k):
        coef[c] = 0
    for i in range(n):
        for c in range(k):
            coef[c] = coef[c] + axis[i].conjugate() * a[i, c]
    for c in range(k):
        coef[c] = coef[c] * factor
    for i in range(n):
        for c in range(k):
            a[i, c] = a[i, c] + axis[i] * coef[c]


cdef void _scale(double complex[:, ::1] a, double complex s) noexcept nogil:
    cdef Py_ssize_t i, c
    for i in range(a.shape[0]):
        for c in range(a.shape[1]):
            a[i, c] = a[i, c] * s


cdef void _marked_prob(double complex[:, ::1] a, const cnp.int64_t[::1] rows,
                       double[::1] out) noexcept nogil:
    cdef Py_ssize_t j, c, r
    cdef double complex z
    for c in range(a.shape[1]):
        out[c] = 0.0
    for j in range(rows.shape[0]):
        r = rows[j]
        for c in range(a.shape[1]):
            z = a[r, c]
            out[c] = out[c] + z.real * z.real + z.imag * z.imag


def hadamard_all(a):
    _hadamard(a.reshape(a.shape[0], -1))
    return a


def phase_rows(a, rows, phase):
    _phase_rows(a.reshape(a.shape[0], -1), rows, phase)
    return a


def reflect(a, axis, factor):
    a2 = a.reshape(a.shape[0], -1)
    coef = np.empty(a2.shape[1], dtype=np.complex128)
    _reflect(a2, axis, factor, coef)
    return a


def scale(a, c):
    _scale(a.reshape(a.shape[0], -1), c)
    return a


def marked_prob(a, rows):
    a2 = a.reshape(a.shape[0], -1)
    out = np.empty(a2.shape[1], dtype=np.float64)
    _marked_prob(a2, rows, out)
    return out
