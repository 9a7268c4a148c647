"""Legendre polynomials ``P_0..P_t`` and their derivatives on [-1, 1]."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

CLAMP_TOL = 1e-12
DOMAIN_TOL = 1e-9
ENDPOINT_TOL = 1e-10


@dataclass(frozen=True)
class LegendreTable:
    argument: float
    degree: int
    values: np.ndarray
    derivs: np.ndarray | None = None


def _check_arg(x):
    x = float(x)
    if not abs(x) <= 1.0 + DOMAIN_TOL:
        raise DomainError(f"Legendre argument {x!r} outside [-1, 1]")
    if abs(x) > 1.0:
        # |x| in (1, 1 + 1e-9]: rounding drift of an inner product
        x = float(np.clip(x, -1.0, 1.0))
    return x


def _values(t, x):
    p = np.empty(t + 1)
    p[0] = 1.0
    if t >= 1:
        p[1] = x
    for n in range(1, t):
        p[n + 1] = ((2 * n + 1) * x * p[n] - n * p[n - 1]) / (n + 1)
    return p


def legendre_all(t: int, x: float) -> LegendreTable:
    """``P_0(x)..P_t(x)`` by the three-term recurrence."""
    if t < 0:
        raise ValueError("degree must be nonnegative")
    x = _check_arg(x)
    return LegendreTable(x, t, _values(t, x))


def legendre_with_derivatives(t: int, x: float) -> LegendreTable:
    """Values and first derivatives.

    Interior points use ``P_n' = n (x P_n - P_{n-1}) / (x^2 - 1)``; within
    1e-10 of an endpoint the exact limit ``(+-1)^(n+1) n (n + 1) / 2`` is used.
    """
    if t < 0:
        raise ValueError("degree must be nonnegative")
    x = _check_arg(x)
    p = _values(t, x)
    n = np.arange(t + 1, dtype=np.float64)
    if abs(x) < 1.0 - ENDPOINT_TOL:
        d = np.zeros(t + 1)
        d[1:] = n[1:] * (x * p[1:] - p[:-1]) / (x * x - 1.0)
    else:
        sign = 1.0 if x > 0 else -1.0
        d = sign ** (n + 1) * n * (n + 1) / 2.0
    return LegendreTable(x, t, p, d)


def legendre_matrix(t: int, x) -> np.ndarray:
    """Vectorized values: array of shape ``(t + 1,) + x.shape``.  No domain checks."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty((t + 1,) + x.shape)
    out[0] = 1.0
    if t >= 1:
        out[1] = x
    for n in range(1, t):
        out[n + 1] = ((2 * n + 1) * x * out[n] - n * out[n - 1]) / (n + 1)
    return out
