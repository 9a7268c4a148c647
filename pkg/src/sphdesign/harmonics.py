"""Real orthonormal spherical harmonics and the basis matrix ``Y_t(X_N)``.

Rows are ordered by degree ``n = 0..t`` and, within a degree, by
``k = m + n + 1`` for ``m = -n..n``: sine terms (``m < 0``), the zonal term,
then cosine terms (``m > 0``).  No Condon-Shortley phase is applied.
"""
from __future__ import annotations

import numpy as np

from .errors import NormError
from .geometry import as_points

INV_SQRT_4PI = 1.0 / np.sqrt(4.0 * np.pi)


def n_harmonics(t: int) -> int:
    return (t + 1) ** 2


def row_index(n: int, m: int) -> int:
    """Row of ``Y_n^m`` in the basis matrix (0-based)."""
    return n * n + m + n


def _normalized_plm(t, x, s):
    """Fully normalized associated Legendre functions ``Pbar_n^m(x)``, ``0 <= m <= n <= t``.

    ``Pbar`` carries the ``1/sqrt(4 pi)`` so that ``Pbar_n^0 = sqrt((2n+1)/(4pi)) P_n``.
    Diagonal terms are built by ``Pbar_m^m = sqrt((2m+1)/(2m)) s Pbar_{m-1}^{m-1}``
    and columns are completed by the standard upward recurrence in ``n``.
    Returns an array of shape ``(t + 1, t + 1, npts)`` indexed ``[n, m]``.
    """
    npts = x.shape[0]
    p = np.zeros((t + 1, t + 1, npts))
    p[0, 0] = INV_SQRT_4PI
    for m in range(1, t + 1):
        p[m, m] = np.sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * p[m - 1, m - 1]
    for m in range(0, t):
        p[m + 1, m] = np.sqrt(2.0 * m + 3.0) * x * p[m, m]
        for n in range(m + 2, t + 1):
            a = np.sqrt((4.0 * n * n - 1.0) / (n * n - m * m))
            b = np.sqrt((2.0 * n + 1.0) * ((n - 1.0) ** 2 - m * m) / ((2.0 * n - 3.0) * (n * n - m * m)))
            p[n, m] = a * x * p[n - 1, m] - b * p[n - 2, m]
    return p


def basis_matrix(t: int, pts) -> np.ndarray:
    """``(t+1)^2 x N`` matrix whose row ``r`` is harmonic ``r`` at every point.

    Points are taken in Cartesian form (``cos(theta) = z``, azimuth from
    ``atan2``), so pole conventions of the angle chart never enter.
    """
    if t < 0:
        raise ValueError("degree must be nonnegative")
    pts = as_points(pts, tol=1e-6)
    x = pts[:, 2]
    s = np.hypot(pts[:, 0], pts[:, 1])
    az = np.arctan2(pts[:, 1], pts[:, 0])
    plm = _normalized_plm(t, x, s)
    out = np.empty((n_harmonics(t), pts.shape[0]))
    root2 = np.sqrt(2.0)
    for n in range(t + 1):
        out[row_index(n, 0)] = plm[n, 0]
        for m in range(1, n + 1):
            out[row_index(n, m)] = root2 * plm[n, m] * np.cos(m * az)
            out[row_index(n, -m)] = root2 * plm[n, m] * np.sin(m * az)
    return out


def eval_harmonics(t: int, p) -> np.ndarray:
    """All ``(t+1)^2`` harmonics at one unit vector ``p``."""
    p = np.asarray(p, dtype=np.float64).reshape(-1)
    if p.size != 3:
        raise ValueError("p must be a 3-vector")
    dev = abs(np.linalg.norm(p) - 1.0)
    if not dev <= 1e-6:
        raise NormError(f"|p| deviates from 1 by {dev:.3g}")
    return basis_matrix(t, p.reshape(1, 3))[:, 0]


def degree_block(coeffs, n: int) -> np.ndarray:
    """The ``2n + 1`` entries of degree ``n`` from a harmonic vector or basis matrix."""
    return coeffs[n * n:(n + 1) * (n + 1)]
