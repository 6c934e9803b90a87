# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Signatures mirror :mod:`crossprod._kernels_py`."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def twisted_conv(double complex[:, ::1] a, double complex[:, ::1] b,
                 cnp.int64_t[:, ::1] idx):
    cdef Py_ssize_t ka = a.shape[0], kb = b.shape[0], m = a.shape[1]
    cdef Py_ssize_t r, s, x
    cdef double complex ar
    out = np.zeros((ka + kb - 1, m), dtype=np.complex128)
    cdef double complex[:, ::1] c = out
    for r in range(ka):
        for x in range(m):
            ar = a[r, x]
            if ar == 0:
                continue
            for s in range(kb):
                c[r + s, x] += ar * b[s, idx[r, x]]
    return out


def laurent_conv(double complex[::1] u, double complex[::1] v):
    cdef Py_ssize_t nu = u.shape[0], nv = v.shape[0], i, j
    cdef double complex ui
    out = np.zeros(nu + nv - 1, dtype=np.complex128)
    cdef double complex[::1] c = out
    for i in range(nu):
        ui = u[i]
        if ui == 0:
            continue
        for j in range(nv):
            c[i + j] += ui * v[j]
    return out


def matrix_laurent_mul(double complex[:, :, ::1] a, double complex[:, :, ::1] b):
    cdef Py_ssize_t p = a.shape[0], q = a.shape[1], r = b.shape[1]
    cdef Py_ssize_t la = a.shape[2], lb = b.shape[2]
    cdef Py_ssize_t i, j, l, s, t
    cdef double complex ail
    out = np.zeros((p, r, la + lb - 1), dtype=np.complex128)
    cdef double complex[:, :, ::1] c = out
    for i in range(p):
        for l in range(q):
            for s in range(la):
                ail = a[i, l, s]
                if ail == 0:
                    continue
                for j in range(r):
                    for t in range(lb):
                        c[i, j, s + t] += ail * b[l, j, t]
    return out
