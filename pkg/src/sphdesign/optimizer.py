"""Barzilai-Borwein descent for ``A_{N,t}`` in the angle chart, plus an L-BFGS
comparison method sharing the same line search and stopping rules.

Iterates live in angle space, so every trial configuration is exactly on the
sphere.  Angles are left unwrapped during the run and normalized once at the end.
"""
from __future__ import annotations

import json
import math
import time
from collections import deque
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DegenerateGauge, LineSearchStall
from .geometry import AngleVector, gauge_fix, points_from_vector, to_angles
from .objective import a_value_harmonic, value_and_gradient

TERMINATIONS = ("grad_tol_reached", "grad_change_small", "progress_small", "max_iterations")


@dataclass(frozen=True)
class BBConfig:
    k_max: int = 20000
    eps1: float = 1e-16
    eps2: float = 1e-16
    rho: float = 0.1
    tau: float = 0.5
    alpha_clamp_low: float = 1e-10
    alpha_clamp_high: float = 1e10
    grad_tol: float = 1e-8
    max_backtracks: int = 50
    qn_memory: int = 10
    precise_below: float = 1e-10

    def __post_init__(self):
        if not 0.0 < self.rho < 0.5:
            raise ValueError("rho must lie in (0, 1/2)")
        if not 0.0 < self.tau < 1.0:
            raise ValueError("tau must lie in (0, 1)")
        if not 0.0 < self.alpha_clamp_low < self.alpha_clamp_high:
            raise ValueError("need 0 < alpha_clamp_low < alpha_clamp_high")
        if self.k_max < 1 or self.max_backtracks < 1 or self.qn_memory < 1:
            raise ValueError("k_max, max_backtracks and qn_memory must be positive")
        if min(self.eps1, self.eps2, self.grad_tol, self.precise_below) < 0:
            raise ValueError("tolerances must be nonnegative")


@dataclass(frozen=True)
class IterationRecord:
    """State after iteration ``k``: objective, gradient norms and the step taken.

    ``slope`` is the directional decrease rate ``-g_k^T p_k`` that the
    sufficient-decrease test used (``||g_k||^2`` for BB); it is not exported.
    """

    k: int
    f: float
    grad_inf: float
    grad_2: float
    alpha: float
    backtracks: int
    accepted_by: str
    slope: float = field(default=math.nan, repr=False)

    def to_json(self) -> dict:
        d = asdict(self)
        del d["slope"]
        return d


@dataclass(frozen=True)
class OptimizeResult:
    method: str
    t: int
    final_angles: AngleVector
    final_points: np.ndarray
    trace: tuple
    termination: str
    iterations: int
    wall_time: float
    initial_f: float
    initial_grad_inf: float
    initial_grad_2: float
    config: BBConfig

    @property
    def final_f(self) -> float:
        return self.trace[-1].f if self.trace else self.initial_f

    @property
    def final_grad_inf(self) -> float:
        return self.trace[-1].grad_inf if self.trace else self.initial_grad_inf


def _bb_step(s, y, low, high):
    sty = float(s @ y)
    if sty == 0.0 or not math.isfinite(sty):
        return 1.0, True
    alpha = float(s @ s) / sty
    if not (math.isfinite(alpha) and low < alpha < high):
        return 1.0, True
    return alpha, False


def bb_step_size(s, y, alpha_clamp_low=1e-10, alpha_clamp_high=1e10) -> float:
    """``s^T s / s^T y``, or 1 when that quotient is undefined or outside the clamp."""
    s = np.asarray(s, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    return _bb_step(s, y, alpha_clamp_low, alpha_clamp_high)[0]


def armijo_goldstein_accept(f_curr, f_trial, g_dot_g, alpha, rho) -> bool:
    """True iff the decrease lies between the ``rho`` and ``1 - rho`` fractions
    of the linear model ``alpha * g^T g``."""
    return bool(f_curr - alpha * (1.0 - rho) * g_dot_g <= f_trial <= f_curr - alpha * rho * g_dot_g)


def _line_search(evaluate, x, f, p, slope, alpha, cfg):
    """Try ``x + alpha p`` under the two-sided rule, then backtrack on Armijo alone.

    Returns ``(x, f, g, alpha, backtracks, two_sided_ok)`` or ``None`` if no
    backtracked step decreased ``f``.
    """
    x_new = x + alpha * p
    f_new, g_new = evaluate(x_new)
    if math.isfinite(f_new) and armijo_goldstein_accept(f, f_new, slope, alpha, cfg.rho):
        return x_new, f_new, g_new, alpha, 0, True
    seen_finite = math.isfinite(f_new)
    for b in range(1, cfg.max_backtracks + 1):
        alpha *= cfg.tau
        x_new = x + alpha * p
        f_new, g_new = evaluate(x_new)
        if not math.isfinite(f_new):
            continue
        seen_finite = True
        if f_new <= f - alpha * cfg.rho * slope:
            return x_new, f_new, g_new, alpha, b, False
    if not seen_finite:
        raise LineSearchStall(f"{cfg.max_backtracks} backtracks produced no finite objective value")
    return None


def _finish(method, t, n, x, trace, termination, t0, f0, g0, cfg):
    pts = points_from_vector(x, n)
    try:
        pts = gauge_fix(pts)
    except DegenerateGauge:
        pass
    return OptimizeResult(
        method=method,
        t=t,
        final_angles=to_angles(pts),
        final_points=pts,
        trace=tuple(trace),
        termination=termination,
        iterations=len(trace),
        wall_time=time.perf_counter() - t0,
        initial_f=f0,
        initial_grad_inf=float(np.max(np.abs(g0))) if g0.size else 0.0,
        initial_grad_2=float(np.linalg.norm(g0)),
        config=cfg,
    )


def _evaluator(n, t, precise_below):
    """Kernel value and chart gradient; below ``precise_below`` the value is
    recomputed in harmonic form, which does not cancel near zero."""

    def evaluate(v):
        f, g = value_and_gradient(v, n, t)
        if f < precise_below:
            f = a_value_harmonic(points_from_vector(v, n), t)
        return f, g

    return evaluate


def _check_stop(cfg, k, f, g, x, f_prev, g_prev, x_prev, g2):
    if g2 <= cfg.grad_tol:
        return "grad_tol_reached"
    if np.linalg.norm(g - g_prev) <= cfg.eps1:
        return "grad_change_small"
    if abs(f - f_prev) <= cfg.eps2 and np.linalg.norm(x - x_prev) <= cfg.eps2:
        return "progress_small"
    if k >= cfg.k_max:
        return "max_iterations"
    return None


def _minimize(method, initial, t, cfg, callback):
    if t < 1:
        raise ValueError("t must be at least 1")
    cfg = cfg or BBConfig()
    t0 = time.perf_counter()
    n = initial.n_points
    evaluate = _evaluator(n, t, cfg.precise_below)

    x = initial.vector.copy()
    f, g = evaluate(x)
    if not math.isfinite(f):
        raise LineSearchStall("objective is not finite at the initial point")
    f0, g0 = f, g.copy()
    trace = []
    g2 = float(np.linalg.norm(g))
    if g2 <= cfg.grad_tol:
        # already stationary: one iteration, no displacement
        ginf = float(np.max(np.abs(g))) if g.size else 0.0
        trace.append(IterationRecord(1, f, ginf, g2, 1.0, 0, "armijo_goldstein", 0.0))
        return _finish(method, t, n, x, trace, "grad_tol_reached", t0, f0, g0, cfg)
    x_prev = g_prev = None
    mem = deque(maxlen=cfg.qn_memory)
    k = 1
    while True:
        reset = False
        if method == "bb":
            p = -g
            if x_prev is None:
                alpha = 1.0
            else:
                alpha, reset = _bb_step(x - x_prev, g - g_prev, cfg.alpha_clamp_low, cfg.alpha_clamp_high)
        else:
            p = -_two_loop(g, mem) if mem else -g
            if not float(g @ p) < 0.0:
                mem.clear()
                p = -g
                reset = True
            alpha = 1.0
        slope = float(-(g @ p))

        step = _line_search(evaluate, x, f, p, slope, alpha, cfg)
        if step is None:
            # no decrease attainable at working precision
            return _finish(method, t, n, x, trace, "progress_small", t0, f0, g0, cfg)
        x_new, f_new, g_new, alpha, backtracks, two_sided = step
        if not two_sided:
            how = "backtracking"
        else:
            how = "reset" if reset else "armijo_goldstein"

        if method == "qn":
            s, yv = x_new - x, g_new - g
            sy = float(s @ yv)
            if sy > 1e-12 * np.linalg.norm(s) * np.linalg.norm(yv):
                mem.append((s, yv, 1.0 / sy))

        x_prev, f_prev, g_prev = x, f, g
        x, f, g = x_new, f_new, g_new
        ginf = float(np.max(np.abs(g))) if g.size else 0.0
        g2 = float(np.linalg.norm(g))
        rec = IterationRecord(k, f, ginf, g2, alpha, backtracks, how, slope)
        trace.append(rec)
        if callback is not None:
            callback(rec)

        stop = _check_stop(cfg, k, f, g, x, f_prev, g_prev, x_prev, g2)
        if stop is not None:
            return _finish(method, t, n, x, trace, stop, t0, f0, g0, cfg)
        k += 1


def _two_loop(g, mem):
    q = g.copy()
    coef = []
    for s, y, r in reversed(mem):
        a = r * float(s @ q)
        q -= a * y
        coef.append(a)
    s, y, _ = mem[-1]
    q *= float(s @ y) / float(y @ y)
    for (s, y, r), a in zip(mem, reversed(coef)):
        b = r * float(y @ q)
        q += (a - b) * s
    return q


def bb_minimize(initial: AngleVector, t: int, cfg: BBConfig | None = None, callback=None) -> OptimizeResult:
    """Minimize ``A_{N,t}`` from ``initial`` with Barzilai-Borwein steps.

    Each iteration proposes the BB step (1 on the first iteration and
    whenever the quotient is undefined or outside the clamp), accepts it
    under the two-sided Armijo-Goldstein rule, and otherwise shrinks it by
    ``tau`` until the Armijo sufficient-decrease inequality holds.  Stops on
    the first of: ``||g||_2 <= grad_tol``, ``||g_{k+1} - g_k|| <= eps1``,
    ``|f_{k+1} - f_k| <= eps2`` together with ``||x_{k+1} - x_k|| <= eps2``,
    ``k = k_max``.  Also stops (as ``progress_small``) when backtracking finds
    no decrease, which happens once ``f`` reaches rounding level.
    """
    return _minimize("bb", initial, t, cfg, callback)


def qn_minimize(initial: AngleVector, t: int, cfg: BBConfig | None = None, callback=None) -> OptimizeResult:
    """L-BFGS variant of :func:`bb_minimize` with a unit initial trial step.

    Falls back to steepest descent (recorded as ``reset``) whenever the
    two-loop direction is not a descent direction.
    """
    return _minimize("qn", initial, t, cfg, callback)


def trace_to_json(trace) -> str:
    """JSON array of iteration records, floats at 17 significant digits."""
    items = []
    for rec in trace:
        d = rec.to_json() if isinstance(rec, IterationRecord) else dict(rec)
        parts = []
        for key in ("k", "f", "grad_inf", "grad_2", "alpha", "backtracks", "accepted_by"):
            val = d[key]
            if isinstance(val, str):
                parts.append(f"{json.dumps(key)}: {json.dumps(val)}")
            elif isinstance(val, (int, np.integer)) and not isinstance(val, bool):
                parts.append(f"{json.dumps(key)}: {int(val)}")
            else:
                parts.append(f"{json.dumps(key)}: {format_float(val)}")
        items.append("{" + ", ".join(parts) + "}")
    return "[\n" + ",\n".join(items) + "\n]\n" if items else "[]\n"


def format_float(x) -> str:
    x = float(x)
    if not math.isfinite(x):
        # JSON has no literal for these
        return "null"
    return "%.17g" % x
