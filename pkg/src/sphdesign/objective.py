"""The variational quantity ``A_{N,t}`` and its gradient in the angle chart.

``A_{N,t}(X) = (1/N^2) sum_{i,j} sum_{n=1}^t (2n+1) P_n(<x_i, x_j>)``
vanishes exactly on spherical t-designs and is bounded by ``(t+1)^2 - 1``.
Two evaluators are provided: the pairwise Legendre kernel (the optimizer's
hot path, ``O(N^2 t)``) and the squared harmonic row sums (``O(N t^2)``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .geometry import POLE_TOL, AngleVector, as_points, full_angles, points_from_vector
from .harmonics import basis_matrix


def upper_bound(t: int) -> int:
    """Largest possible value of ``A_{N,t}``, attained by coincident points."""
    return (t + 1) ** 2 - 1


def lower_bound_points(t: int) -> int:
    """Minimum number of points a spherical t-design on S^2 can have."""
    if t < 1:
        raise ValueError("t must be at least 1")
    if t % 2:
        return (t + 1) * (t + 3) // 4
    return (t + 2) ** 2 // 4


def a_value_kernel(pts, t: int) -> float:
    if t < 1:
        raise ValueError("t must be at least 1")
    return kernels.kernel_value(as_points(pts), t)


def a_value_harmonic(pts, t: int) -> float:
    if t < 1:
        raise ValueError("t must be at least 1")
    pts = as_points(pts)
    npts = pts.shape[0]
    y = basis_matrix(t, pts)
    sums = [math.fsum(row) for row in y[1:]]
    return 4.0 * math.pi / (npts * npts) * math.fsum(s * s for s in sums)


def a_value(pts, t: int, method: str = "kernel") -> float:
    """``A_{N,t}`` by the chosen evaluator (``"kernel"`` or ``"harmonic"``)."""
    if method == "kernel":
        return a_value_kernel(pts, t)
    if method == "harmonic":
        return a_value_harmonic(pts, t)
    raise ValueError(f"unknown evaluator {method!r}")


@dataclass(frozen=True)
class GradientVector:
    """Chart gradient ordered ``(d/dtheta_2..d/dtheta_N, d/dphi_3..d/dphi_N)``."""

    entries: np.ndarray
    inf_norm: float
    two_norm: float

    @classmethod
    def from_array(cls, g) -> "GradientVector":
        g = np.asarray(g, dtype=np.float64)
        return cls(g, float(np.max(np.abs(g))) if g.size else 0.0, float(np.linalg.norm(g)))


def chart_gradient(euclid_grad, v, n_points) -> np.ndarray:
    """Chain rule from per-point Cartesian gradients to the free angles."""
    theta, phi = full_angles(v, n_points)
    ct, st = np.cos(theta), np.sin(theta)
    cp, sp = np.cos(phi), np.sin(phi)
    gx, gy, gz = euclid_grad[:, 0], euclid_grad[:, 1], euclid_grad[:, 2]
    d_theta = gx * ct * cp + gy * ct * sp - gz * st
    d_phi = np.where(np.abs(st) < POLE_TOL, 0.0, st * (gy * cp - gx * sp))
    return np.concatenate([d_theta[1:], d_phi[2:]])


def value_and_gradient(v, n_points: int, t: int):
    """``A`` and its chart gradient at the flat angle vector ``v``.

    ``v`` may lie outside the canonical angle ranges; the optimizers pass
    unwrapped iterates here.
    """
    pts = points_from_vector(v, n_points)
    f, g = kernels.kernel_value_grad(pts, t)
    return f, chart_gradient(g, v, n_points)


def value_at(v, n_points: int, t: int) -> float:
    return kernels.kernel_value(points_from_vector(v, n_points), t)


def gradient(angles: AngleVector, t: int) -> GradientVector:
    """Exact gradient of ``A_{N,t}`` composed with the angle-to-point map."""
    if t < 1:
        raise ValueError("t must be at least 1")
    _, g = value_and_gradient(angles.vector, angles.n_points, t)
    return GradientVector.from_array(g)
