# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled forward pass and average MSE for the single-hidden-layer nets.

Parameter layout matches ``fdonet.network``: input->hidden weights (row per
hidden unit), hidden biases, hidden->output weights, output bias, then for
cascade nets the input->output weights and the auxiliary bias.
"""
import numpy as np
from libc.math cimport exp


cdef inline double _row(const double* x, const double* p, Py_ssize_t n_in,
                        Py_ssize_t n_hid, bint cascade) noexcept nogil:
    cdef const double* bh = p + n_in * n_hid
    cdef const double* v = bh + n_hid
    cdef double s = v[n_hid]
    cdef double z
    cdef Py_ssize_t i, j
    cdef const double* u
    for j in range(n_hid):
        z = bh[j]
        for i in range(n_in):
            z += p[j * n_in + i] * x[i]
        s += v[j] / (1.0 + exp(-z))
    if cascade:
        u = v + n_hid + 1
        for i in range(n_in):
            s += u[i] * x[i]
        s += u[n_in]
    return s


def batch_outputs(const double[:, ::1] X, const double[::1] params,
                  Py_ssize_t inputs, Py_ssize_t hidden, bint cascade):
    cdef Py_ssize_t n = X.shape[0], r
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    if n == 0:
        return out
    with nogil:
        for r in range(n):
            o[r] = _row(&X[r, 0], &params[0], inputs, hidden, cascade)
    return out


def average_mse(const double[:, ::1] X, const double[::1] y, const double[::1] params,
                Py_ssize_t inputs, Py_ssize_t hidden, bint cascade):
    cdef Py_ssize_t n = X.shape[0], r
    cdef double total = 0.0, e
    with nogil:
        for r in range(n):
            e = y[r] - _row(&X[r, 0], &params[0], inputs, hidden, cascade)
            total += e * e
    return total / n
