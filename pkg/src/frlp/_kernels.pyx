# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled dyadic kernels; same contracts as ``_fallback``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, pow

cnp.import_array()

ctypedef double complex cplx


def block_means(v, Py_ssize_t b):
    cdef cnp.ndarray arr = np.ascontiguousarray(v, dtype=complex)
    if arr.ndim == 1:
        return _means1(arr, b)
    return _means2(arr, b)


cdef _means1(const cplx[::1] v, Py_ssize_t b):
    cdef Py_ssize_t n = v.shape[0] // b, i, k
    cdef cplx acc
    out = np.empty(n, dtype=complex)
    cdef cplx[::1] o = out
    for i in range(n):
        acc = 0
        for k in range(i * b, i * b + b):
            acc = acc + v[k]
        o[i] = acc / b
    return out


cdef _means2(const cplx[:, ::1] v, Py_ssize_t b):
    cdef Py_ssize_t n = v.shape[0] // b, i, j, p, q
    cdef cplx acc
    out = np.empty((n, n), dtype=complex)
    cdef cplx[:, ::1] o = out
    for i in range(n):
        for j in range(n):
            acc = 0
            for p in range(i * b, i * b + b):
                for q in range(j * b, j * b + b):
                    acc = acc + v[p, q]
            o[i, j] = acc / (b * b)
    return out


def block_oscillation(v, Py_ssize_t b, double r):
    cdef cnp.ndarray arr = np.ascontiguousarray(v, dtype=complex)
    means = block_means(arr, b)
    if arr.ndim == 1:
        return _osc1(arr, means, b, r)
    return _osc2(arr, means, b, r)


cdef inline double _powr(cplx z, double r) nogil:
    cdef double sq = z.real * z.real + z.imag * z.imag
    if r == 2.0:
        return sq
    if r == 1.0:
        return sqrt(sq)
    return pow(sq, 0.5 * r)


cdef inline double _root(double s, double r) nogil:
    if r == 1.0:
        return s
    if r == 2.0:
        return sqrt(s)
    return pow(s, 1.0 / r)


cdef _osc1(const cplx[::1] v, const cplx[::1] m, Py_ssize_t b, double r):
    cdef Py_ssize_t n = v.shape[0] // b, i, k
    cdef double acc
    out = np.empty(n)
    cdef double[::1] o = out
    for i in range(n):
        acc = 0
        for k in range(i * b, i * b + b):
            acc += _powr(v[k] - m[i], r)
        o[i] = _root(acc / b, r)
    return out


cdef _osc2(const cplx[:, ::1] v, const cplx[:, ::1] m, Py_ssize_t b, double r):
    cdef Py_ssize_t n = v.shape[0] // b, i, j, p, q
    cdef double acc
    out = np.empty((n, n))
    cdef double[:, ::1] o = out
    for i in range(n):
        for j in range(n):
            acc = 0
            for p in range(i * b, i * b + b):
                for q in range(j * b, j * b + b):
                    acc += _powr(v[p, q] - m[i, j], r)
            o[i, j] = _root(acc / (b * b), r)
    return out


cdef double _S = sqrt(0.5)


def haar_analysis(v):
    cdef cplx[::1] a = np.array(v, dtype=complex)
    cdef Py_ssize_t n = a.shape[0], k, h
    out = np.empty(n, dtype=complex)
    cdef cplx[::1] o = out
    cdef cplx e, d
    tmp = np.empty(n, dtype=complex)
    cdef cplx[::1] t = tmp
    while n > 1:
        h = n // 2
        for k in range(h):
            e = a[2 * k]
            d = a[2 * k + 1]
            o[h + k] = (e - d) * _S
            t[k] = (e + d) * _S
        for k in range(h):
            a[k] = t[k]
        n = h
    o[0] = a[0]
    return out


def haar_synthesis(c):
    cdef const cplx[::1] cc = np.ascontiguousarray(c, dtype=complex)
    cdef Py_ssize_t total = cc.shape[0], n = 1, k
    out = np.empty(total, dtype=complex)
    cdef cplx[::1] a = out
    tmp = np.empty(total, dtype=complex)
    cdef cplx[::1] t = tmp
    cdef cplx s, d
    a[0] = cc[0]
    while n < total:
        for k in range(n):
            s = a[k]
            d = cc[n + k]
            t[2 * k] = (s + d) * _S
            t[2 * k + 1] = (s - d) * _S
        for k in range(2 * n):
            a[k] = t[k]
        n *= 2
    return out
