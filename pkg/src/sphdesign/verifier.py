"""Singular-value certificates for candidate spherical t-designs.

A stationary point set of ``A_{N,t}`` whose degree-``(t+1)`` basis matrix has
full row rank is a spherical t-design when ``N >= (t+2)^2``.  Numerically both
conditions become tolerances, so the certificate carries the raw numbers
alongside the verdict.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ConvergenceError
from .geometry import as_points, gauge_fix, to_angles
from .harmonics import basis_matrix, n_harmonics
from .objective import a_value_kernel, a_value_harmonic, gradient

STAT_TOL = 1e-7
RANK_RTOL = 1e-8
A_TOL = 1e-10
POLE_WARN = 1e-6

VERDICTS = ("certified_design", "stationary_but_rank_deficient", "not_stationary")


def singular_values(m) -> np.ndarray:
    try:
        return np.linalg.svd(np.asarray(m, dtype=np.float64), compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"SVD did not converge: {exc}") from exc


def min_singular_value(m) -> float:
    """Smallest of the ``r`` singular values of an ``r x c`` matrix.

    When ``r > c`` the rows cannot be independent, so 0 is returned
    without decomposing.
    """
    m = np.asarray(m, dtype=np.float64)
    r, c = m.shape
    if r > c:
        return 0.0
    return float(singular_values(m)[-1])


def _rank_threshold(m, rank_tol):
    if rank_tol is not None:
        return rank_tol
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return RANK_RTOL * float(singular_values(m)[0])


def is_fundamental_system(pts, t: int, rank_tol: float | None = None) -> bool:
    """Whether only the zero polynomial of degree <= t vanishes on ``pts``.

    Tested as ``sigma_min(Y_t) > rank_tol``; ``rank_tol=None`` uses
    ``1e-8 * sigma_max``.
    """
    pts = as_points(pts)
    if pts.shape[0] < n_harmonics(t):
        return False
    y = basis_matrix(t, pts)
    return min_singular_value(y) > _rank_threshold(y, rank_tol)


@dataclass(frozen=True)
class DesignCertificate:
    t: int
    n_points: int
    a_value: float
    grad_inf_norm: float
    sigma_min: float
    is_fundamental: bool
    is_stationary: bool
    verdict: str
    pole_warning: bool
    n_meets_bound: bool
    certified_by: str | None = None
    a_value_harmonic: float = math.nan
    rank_tol: float = math.nan

    def to_json(self) -> str:
        """JSON object with every field; floats at 17 significant digits."""
        parts = []
        for key, val in asdict(self).items():
            if isinstance(val, bool) or val is None or isinstance(val, str):
                text = json.dumps(val)
            elif isinstance(val, int):
                text = str(val)
            else:
                text = "%.17g" % val if math.isfinite(val) else "null"
            parts.append(f"  {json.dumps(key)}: {text}")
        return "{\n" + ",\n".join(parts) + "\n}\n"


def verify_design(
    pts,
    t: int,
    stat_tol: float = STAT_TOL,
    rank_tol: float | None = None,
    a_tol: float = A_TOL,
) -> DesignCertificate:
    """Certify ``pts`` as a spherical t-design.

    Stationarity is ``||grad||_inf <= stat_tol`` for the chart gradient at the
    gauge-fixed configuration; the rank test is ``sigma_min(Y_{t+1}) > rank_tol``.
    A stationary set passing the rank test is ``certified_design`` (route
    ``"sigma_min"``).  A stationary set failing it can still be certified by
    ``A_{N,t} <= a_tol`` directly (route ``"a_value"``), which is how sets
    below the ``(t+2)^2`` point count, like the tetrahedron, are confirmed.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    if stat_tol <= 0 or (rank_tol is not None and rank_tol <= 0):
        raise ValueError("tolerances must be positive")
    pts = as_points(pts)
    npts = pts.shape[0]
    a_val = max(a_value_kernel(pts, t), 0.0)
    a_harm = a_value_harmonic(pts, t)

    if npts >= 2:
        fixed = gauge_fix(pts)
        angles = to_angles(fixed)
        g_inf = gradient(angles, t).inf_norm
        pole_warning = bool(np.any(np.sin(angles.theta[1:]) < POLE_WARN))
    else:
        g_inf = 0.0
        pole_warning = False

    y = basis_matrix(t + 1, pts)
    sigma = min_singular_value(y)
    tol = _rank_threshold(y, rank_tol)
    is_fundamental = sigma > tol
    is_stationary = g_inf <= stat_tol

    certified_by = None
    if not is_stationary:
        verdict = "not_stationary"
    elif is_fundamental:
        verdict, certified_by = "certified_design", "sigma_min"
    elif a_harm <= a_tol:
        verdict, certified_by = "certified_design", "a_value"
    else:
        verdict = "stationary_but_rank_deficient"

    return DesignCertificate(
        t=t,
        n_points=npts,
        a_value=a_val,
        grad_inf_norm=g_inf,
        sigma_min=sigma,
        is_fundamental=bool(is_fundamental),
        is_stationary=bool(is_stationary),
        verdict=verdict,
        pole_warning=pole_warning,
        n_meets_bound=npts >= (t + 2) ** 2,
        certified_by=certified_by,
        a_value_harmonic=a_harm,
        rank_tol=tol,
    )
