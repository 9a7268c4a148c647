"""Numerical spherical t-designs on S^2.

Minimizes the variational quantity ``A_{N,t}`` over point sets with
Barzilai-Borwein descent in a gauge-fixed angle chart and certifies the
result through stationarity and the smallest singular value of the
degree-``(t+1)`` spherical-harmonic basis matrix.
"""
from .errors import (
    ConvergenceError,
    DegenerateGauge,
    DomainError,
    LineSearchStall,
    NormError,
    PointFileError,
)
from .geometry import (
    AngleVector,
    from_angles,
    gauge_fix,
    random_points,
    read_points,
    spiral_points,
    to_angles,
    write_points,
)
from .harmonics import basis_matrix, eval_harmonics
from .kernels import BACKEND
from .legendre import legendre_all, legendre_with_derivatives
from .objective import a_value, a_value_harmonic, a_value_kernel, gradient, lower_bound_points
from .optimizer import BBConfig, OptimizeResult, bb_minimize, qn_minimize
from .verifier import DesignCertificate, is_fundamental_system, min_singular_value, verify_design

__version__ = "0.1.0"
