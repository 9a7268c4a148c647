"""Numpy fallback for the pairwise Legendre-kernel sums.

Same contract as the compiled module.  Pair sums are accumulated with
:func:`math.fsum`, which is exactly rounded and therefore order-independent.
"""
import math

import numpy as np

BLOCK = 256


def _kernel_block(c, t, with_deriv):
    p0 = np.ones_like(c)
    p1 = c.copy()
    k = 3.0 * c
    if with_deriv:
        d0 = np.zeros_like(c)
        d1 = np.ones_like(c)
        kd = np.full_like(c, 3.0)
    for n in range(1, t):
        p2 = ((2 * n + 1) / (n + 1)) * c * p1 - (n / (n + 1)) * p0
        k += (2.0 * n + 3.0) * p2
        if with_deriv:
            d2 = d0 + (2.0 * n + 1.0) * p1
            kd += (2.0 * n + 3.0) * d2
            d0, d1 = d1, d2
        p0, p1 = p1, p2
    return (k, kd) if with_deriv else (k, None)


def _run(pts, t, with_deriv):
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    npts = pts.shape[0]
    parts = [0.5 * npts * ((t + 1) ** 2 - 1)]
    grad = np.zeros_like(pts) if with_deriv else None
    for start in range(0, npts, BLOCK):
        stop = min(start + BLOCK, npts)
        c = np.clip(pts[start:stop] @ pts.T, -1.0, 1.0)
        k, kd = _kernel_block(c, t, with_deriv)
        rows, cols = np.nonzero(np.arange(npts)[None, :] > np.arange(start, stop)[:, None])
        parts.extend(k[rows, cols].tolist())
        if with_deriv:
            kd[np.arange(stop - start), np.arange(start, stop)] = 0.0
            grad[start:stop] = kd @ pts
    scale = 2.0 / (npts * npts)
    value = scale * math.fsum(parts)
    if with_deriv:
        return value, scale * grad
    return value


def kernel_value(pts, t):
    return _run(pts, t, False)


def kernel_value_grad(pts, t):
    return _run(pts, t, True)
