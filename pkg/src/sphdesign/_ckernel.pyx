# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled pairwise Legendre-kernel sums.

Both entry points return ``A_{N,t}`` assembled from the pair sum
``sum_{i<j} K(<x_i, x_j>)`` with ``K(c) = sum_{n=1}^t (2n+1) P_n(c)``; the
diagonal contributes ``N ((t+1)^2 - 1)`` in closed form.  Summation is
Kahan-compensated and runs in a fixed order, so results are bit-reproducible.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline double _clamp(double c) nogil:
    if c > 1.0:
        return 1.0
    if c < -1.0:
        return -1.0
    return c


def _coefficients(int t):
    n = np.arange(1, max(t, 1), dtype=np.float64)
    return (2.0 * n + 1.0) / (n + 1.0), n / (n + 1.0)


def kernel_value(double[:, ::1] pts, int t):
    cdef Py_ssize_t npts = pts.shape[0]
    cdef Py_ssize_t i, j
    cdef int n
    cdef double c, p0, p1, p2, k, y, tmp
    cdef double total, comp
    a_np, b_np = _coefficients(t)
    cdef double[::1] a = a_np
    cdef double[::1] b = b_np
    cdef double diag = <double>((t + 1) * (t + 1) - 1)

    total = 0.5 * npts * diag
    comp = 0.0
    with nogil:
        for i in range(npts):
            for j in range(i + 1, npts):
                c = _clamp(pts[i, 0] * pts[j, 0] + pts[i, 1] * pts[j, 1] + pts[i, 2] * pts[j, 2])
                p0 = 1.0
                p1 = c
                k = 3.0 * c
                for n in range(1, t):
                    p2 = a[n - 1] * c * p1 - b[n - 1] * p0
                    k += (2.0 * n + 3.0) * p2
                    p0 = p1
                    p1 = p2
                y = k - comp
                tmp = total + y
                comp = (tmp - total) - y
                total = tmp
    return 2.0 * total / (<double>npts * <double>npts)


def kernel_value_grad(double[:, ::1] pts, int t):
    cdef Py_ssize_t npts = pts.shape[0]
    cdef Py_ssize_t i, j
    cdef int n
    cdef double c, p0, p1, p2, d0, d1, d2, k, kd, y, tmp
    cdef double total, comp, scale
    a_np, b_np = _coefficients(t)
    cdef double[::1] a = a_np
    cdef double[::1] b = b_np
    cdef double diag = <double>((t + 1) * (t + 1) - 1)
    grad_np = np.zeros((npts, 3), dtype=np.float64)
    cdef double[:, ::1] g = grad_np

    total = 0.5 * npts * diag
    comp = 0.0
    with nogil:
        for i in range(npts):
            for j in range(i + 1, npts):
                c = _clamp(pts[i, 0] * pts[j, 0] + pts[i, 1] * pts[j, 1] + pts[i, 2] * pts[j, 2])
                p0 = 1.0
                p1 = c
                d0 = 0.0
                d1 = 1.0
                k = 3.0 * c
                kd = 3.0
                for n in range(1, t):
                    p2 = a[n - 1] * c * p1 - b[n - 1] * p0
                    # P'_{n+1} = P'_{n-1} + (2n+1) P_n
                    d2 = d0 + (2.0 * n + 1.0) * p1
                    k += (2.0 * n + 3.0) * p2
                    kd += (2.0 * n + 3.0) * d2
                    p0 = p1
                    p1 = p2
                    d0 = d1
                    d1 = d2
                y = k - comp
                tmp = total + y
                comp = (tmp - total) - y
                total = tmp
                g[i, 0] += kd * pts[j, 0]
                g[i, 1] += kd * pts[j, 1]
                g[i, 2] += kd * pts[j, 2]
                g[j, 0] += kd * pts[i, 0]
                g[j, 1] += kd * pts[i, 1]
                g[j, 2] += kd * pts[i, 2]
        scale = 2.0 / (<double>npts * <double>npts)
        for i in range(npts):
            g[i, 0] *= scale
            g[i, 1] *= scale
            g[i, 2] *= scale
    return 2.0 * total / (<double>npts * <double>npts), grad_np
