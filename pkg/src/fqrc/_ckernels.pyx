# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Semantics mirror ``_pykernels`` exactly."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline Py_ssize_t _locate(const double[::1] edges, double x) noexcept nogil:
    # rightmost i with edges[i] <= x, clamped to [0, nbins-1]
    cdef Py_ssize_t lo = 0, hi = edges.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if edges[mid] <= x:
            lo = mid + 1
        else:
            hi = mid
    lo -= 1
    if lo < 0:
        return 0
    if lo > edges.shape[0] - 2:
        return edges.shape[0] - 2
    return lo


def bin_counts(values, edges):
    cdef const double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef const double[::1] e = np.ascontiguousarray(edges, dtype=np.float64)
    cdef Py_ssize_t nbins = e.shape[0] - 1
    out = np.zeros(nbins, dtype=np.int64)
    cdef long long[::1] c = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(v.shape[0]):
            c[_locate(e, v[i])] += 1
    return out


cdef inline double _mu(double x, double lower, double a, double b, double upper,
                       double alpha, double beta) noexcept nogil:
    if x < lower:
        return 0.0
    if x < a:
        return (x - lower) / alpha
    if x <= b:
        return 1.0
    if x <= upper:
        return (upper - x) / beta
    return 0.0


def memberships(X, lower, a, b, upper, alpha, beta):
    cdef const double[:, ::1] x = np.ascontiguousarray(X, dtype=np.float64)
    cdef const double[:, ::1] lo = np.ascontiguousarray(lower, dtype=np.float64)
    cdef const double[:, ::1] pa = np.ascontiguousarray(a, dtype=np.float64)
    cdef const double[:, ::1] pb = np.ascontiguousarray(b, dtype=np.float64)
    cdef const double[:, ::1] up = np.ascontiguousarray(upper, dtype=np.float64)
    cdef const double[:, ::1] al = np.ascontiguousarray(alpha, dtype=np.float64)
    cdef const double[:, ::1] be = np.ascontiguousarray(beta, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], J = lo.shape[0], K = lo.shape[1], i, j, k
    out = np.empty((n, J, K), dtype=np.float64)
    cdef double[:, :, ::1] mu = out
    with nogil:
        for i in range(n):
            for j in range(J):
                for k in range(K):
                    mu[i, j, k] = _mu(x[i, j], lo[j, k], pa[j, k], pb[j, k],
                                      up[j, k], al[j, k], be[j, k])
    return out


def class_products(X, lower, a, b, upper, alpha, beta):
    cdef const double[:, ::1] x = np.ascontiguousarray(X, dtype=np.float64)
    cdef const double[:, ::1] lo = np.ascontiguousarray(lower, dtype=np.float64)
    cdef const double[:, ::1] pa = np.ascontiguousarray(a, dtype=np.float64)
    cdef const double[:, ::1] pb = np.ascontiguousarray(b, dtype=np.float64)
    cdef const double[:, ::1] up = np.ascontiguousarray(upper, dtype=np.float64)
    cdef const double[:, ::1] al = np.ascontiguousarray(alpha, dtype=np.float64)
    cdef const double[:, ::1] be = np.ascontiguousarray(beta, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], J = lo.shape[0], K = lo.shape[1], i, j, k
    out = np.ones((n, K), dtype=np.float64)
    cdef double[:, ::1] P = out
    with nogil:
        for i in range(n):
            for j in range(J):
                for k in range(K):
                    P[i, k] = P[i, k] * _mu(x[i, j], lo[j, k], pa[j, k], pb[j, k],
                                            up[j, k], al[j, k], be[j, k])
    return out
