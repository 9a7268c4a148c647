"""Point sets on the unit sphere and the angle chart used by the optimizers.

A point set is an ``(N, 3)`` float array of unit vectors.  The optimizers do
not work on it directly; they work on the ``2N - 3`` free spherical angles
left after pinning ``x_1`` to the north pole and ``x_2`` to the half-plane
``y = 0, x >= 0``.  :func:`to_angles` and :func:`from_angles` convert between
the two.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DegenerateGauge, NormError, PointFileError

UNIT_TOL = 1e-12
POLE_TOL = 1e-14


def as_points(pts, tol=1e-10) -> np.ndarray:
    """Validate and return ``pts`` as a contiguous ``(N, 3)`` float64 array."""
    arr = np.ascontiguousarray(pts, dtype=np.float64)
    if arr.ndim == 1 and arr.size == 3:
        arr = arr.reshape(1, 3)
    if arr.ndim != 2 or arr.shape[1] != 3 or arr.shape[0] < 1:
        raise ValueError(f"expected an (N, 3) array of points, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NormError("point set contains non-finite coordinates")
    dev = np.abs(np.linalg.norm(arr, axis=1) - 1.0)
    if dev.max() > tol:
        i = int(np.argmax(dev))
        raise NormError(f"point {i + 1} has norm deviating from 1 by {dev[i]:.3g}")
    return arr


@dataclass(frozen=True)
class AngleVector:
    """Free coordinates of a gauge-fixed configuration.

    ``theta`` holds the polar angles of points 2..N and ``phi`` the azimuths
    of points 3..N.
    """

    theta: np.ndarray
    phi: np.ndarray

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=np.float64).ravel()
        phi = np.asarray(self.phi, dtype=np.float64).ravel()
        if theta.size < 1 or phi.size != theta.size - 1:
            raise ValueError(
                f"need len(phi) == len(theta) - 1 >= 0, got {theta.size} and {phi.size}"
            )
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @property
    def n_points(self) -> int:
        return self.theta.size + 1

    @property
    def vector(self) -> np.ndarray:
        """Flat ``(theta_2..theta_N, phi_3..phi_N)`` vector of length ``2N - 3``."""
        return np.concatenate([self.theta, self.phi])

    @classmethod
    def from_vector(cls, v, n_points=None) -> "AngleVector":
        v = np.asarray(v, dtype=np.float64).ravel()
        if n_points is None:
            n_points = (v.size + 3) // 2
        if v.size != 2 * n_points - 3:
            raise ValueError(f"vector of length {v.size} does not fit N={n_points}")
        return cls(v[: n_points - 1], v[n_points - 1:])


def _rot_z(a):
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _rot_y(a):
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def gauge_rotation(pts) -> np.ndarray:
    """Rotation ``R`` in SO(3) taking ``x_1`` to the north pole and ``x_2`` to the
    prime meridian half-plane.

    Raises
    ------
    DegenerateGauge
        If ``x_2 = +-x_1``, so that no azimuth for ``x_2`` exists.
    """
    pts = as_points(pts)
    if pts.shape[0] < 2:
        raise ValueError("gauge fixing needs at least two points")
    x1, x2 = pts[0], pts[1]
    # x1 -> xz-plane -> pole
    r1 = _rot_y(-np.arctan2(np.hypot(x1[0], x1[1]), x1[2])) @ _rot_z(-np.arctan2(x1[1], x1[0]))
    y2 = r1 @ x2
    if np.hypot(y2[0], y2[1]) < UNIT_TOL:
        raise DegenerateGauge("x_2 is parallel to x_1; permute the points and retry")
    return _rot_z(-np.arctan2(y2[1], y2[0])) @ r1


def gauge_fix(pts) -> np.ndarray:
    """Rigidly rotate ``pts`` so that ``x_1 = (0, 0, 1)`` and ``x_2 = (s, 0, z)``, ``s >= 0``.

    All inner products are preserved; the configuration is never projected.
    """
    pts = as_points(pts)
    return pts @ gauge_rotation(pts).T


def to_angles(pts) -> AngleVector:
    """Map a gauge-fixed point set to its free angles.

    Polar angles are computed as ``atan2(hypot(x, y), z)``, which equals
    ``arccos(z)`` on the sphere but stays accurate near the poles.  The
    azimuth of a point with ``sin(theta) < 1e-14`` is defined as 0.
    """
    pts = as_points(pts)
    rho = np.hypot(pts[:, 0], pts[:, 1])
    theta = np.arctan2(rho, pts[:, 2])
    phi = np.where(rho < POLE_TOL, 0.0, np.mod(np.arctan2(pts[:, 1], pts[:, 0]), 2 * np.pi))
    # mod can round up to exactly 2*pi for tiny negative angles
    phi[phi >= 2 * np.pi] = 0.0
    return AngleVector(theta[1:], phi[2:])


def full_angles(v, n_points):
    """Expand a flat free-angle vector to per-point ``(theta, phi)`` arrays of length N."""
    v = np.asarray(v, dtype=np.float64)
    theta = np.empty(n_points)
    phi = np.zeros(n_points)
    theta[0] = 0.0
    theta[1:] = v[: n_points - 1]
    phi[2:] = v[n_points - 1:]
    return theta, phi


def points_from_vector(v, n_points) -> np.ndarray:
    """Cartesian coordinates for an unwrapped free-angle vector (no range checks)."""
    theta, phi = full_angles(v, n_points)
    st = np.sin(theta)
    return np.column_stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])


def from_angles(angles: AngleVector) -> np.ndarray:
    """Map free angles back to Cartesian points, with ``theta_1 = 0`` and ``phi_2 = 0``."""
    return points_from_vector(angles.vector, angles.n_points)


def spiral_points(n: int) -> np.ndarray:
    """Deterministic equal-area spiral of ``n`` points.

    Heights are ``z_k = 1 - (2k - 1)/n`` and the azimuth winds as
    ``phi_k = 1.8 * sqrt(n) * arccos(z_k)``, the closed form of the
    generalized-spiral increment ``3.6 / sqrt(n (1 - z^2))``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    z = 1.0 - (2.0 * np.arange(1, n + 1) - 1.0) / n
    theta = np.arccos(z)
    phi = 1.8 * np.sqrt(n) * theta
    rho = np.sin(theta)
    return np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])


def random_points(n: int, seed: int = 0) -> np.ndarray:
    """``n`` independent uniform points on the sphere (normalized Gaussians)."""
    if n < 1:
        raise ValueError("n must be positive")
    g = np.random.default_rng(seed).standard_normal((n, 3))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def random_rotation(seed: int = 0) -> np.ndarray:
    """Haar-random rotation matrix, used by the invariance tests."""
    q, r = np.linalg.qr(np.random.default_rng(seed).standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def write_points(path, pts) -> None:
    """Write one point per line, three ``%.17g`` numbers separated by single spaces."""
    pts = np.asarray(pts, dtype=np.float64)
    lines = "".join("%.17g %.17g %.17g\n" % (x, y, z) for x, y, z in pts)
    with open(path, "w", newline="\n") as fh:
        fh.write(lines)


def read_points(path, tol=1e-10) -> np.ndarray:
    """Read a point file; any whitespace separation and CRLF line ends are accepted.

    Blank lines are skipped.  Raises :class:`PointFileError` naming the first
    bad line: wrong field count, unparsable number or a non-unit row.
    """
    rows = []
    text = Path(path).read_text()
    for lineno, line in enumerate(text.splitlines(), start=1):
        fields = line.split()
        if not fields:
            continue
        if len(fields) != 3:
            raise PointFileError(f"line {lineno}: expected 3 numbers, got {len(fields)}", lineno)
        try:
            row = [float(f) for f in fields]
        except ValueError:
            raise PointFileError(f"line {lineno}: cannot parse {line.strip()!r}", lineno) from None
        dev = abs(np.sqrt(sum(c * c for c in row)) - 1.0)
        if not np.isfinite(dev) or dev > tol:
            raise PointFileError(f"line {lineno}: point is not a unit vector (|norm - 1| = {dev:.3g})", lineno)
        rows.append(row)
    if not rows:
        raise PointFileError("point file contains no points", None)
    return np.array(rows, dtype=np.float64)
