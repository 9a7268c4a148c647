import itertools
import json

import numpy as np
import pytest

from sphdesign.errors import LineSearchStall
from sphdesign.geometry import AngleVector, gauge_fix, random_points, spiral_points, to_angles
from sphdesign.objective import a_value_harmonic
from sphdesign.optimizer import (
    TERMINATIONS,
    BBConfig,
    armijo_goldstein_accept,
    bb_minimize,
    bb_step_size,
    qn_minimize,
    trace_to_json,
)

MINIMIZERS = [bb_minimize, qn_minimize]


def start(n, seed=None):
    pts = spiral_points(n) if seed is None else random_points(n, seed)
    return to_angles(gauge_fix(pts))


def test_bb_step_size():
    assert bb_step_size([1.0, 0.0], [2.0, 0.0]) == 0.5
    assert bb_step_size([1.0, 0.0], [0.0, 1.0]) == 1.0
    assert bb_step_size([1e-6, 0.0], [1e6, 0.0]) == 1.0
    assert bb_step_size([1.0, 0.0], [-2.0, 0.0]) == 1.0
    assert bb_step_size([1e6, 0.0], [1e-6, 0.0]) == 1.0
    assert bb_step_size([np.inf, 0.0], [1.0, 0.0]) == 1.0


def test_armijo_goldstein_accept():
    assert armijo_goldstein_accept(1.0, 0.8, 1.0, 0.5, 0.25)
    assert not armijo_goldstein_accept(1.0, 0.9, 1.0, 0.5, 0.25)
    assert not armijo_goldstein_accept(1.0, 0.5, 1.0, 0.5, 0.25)
    assert armijo_goldstein_accept(1.0, 0.875, 1.0, 0.5, 0.25)
    assert armijo_goldstein_accept(1.0, 0.625, 1.0, 0.5, 0.25)


@pytest.mark.parametrize(
    "kwargs", [dict(rho=0.5), dict(rho=0.0), dict(tau=1.0), dict(alpha_clamp_low=2.0, alpha_clamp_high=1.0), dict(k_max=0)]
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        BBConfig(**kwargs)


@pytest.mark.parametrize("minimize", MINIMIZERS)
def test_tetrahedron_from_spiral(minimize):
    res = minimize(start(4), 2)
    assert res.termination == "grad_tol_reached"
    assert res.iterations <= 200
    assert res.final_f < 1e-12
    g = res.final_points @ res.final_points.T
    off = g[~np.eye(4, dtype=bool)]
    np.testing.assert_allclose(off, -1.0 / 3.0, atol=1e-5)


@pytest.mark.parametrize("minimize", MINIMIZERS)
def test_stationary_start(minimize, tetrahedron):
    a0 = to_angles(tetrahedron)
    res = minimize(a0, 2)
    assert res.iterations == 1
    assert res.termination == "grad_tol_reached"
    np.testing.assert_allclose(res.final_points, tetrahedron, atol=1e-15)


@pytest.mark.parametrize("minimize", MINIMIZERS)
@pytest.mark.parametrize("n, t, seed", [(16, 3, None), (36, 4, 2), (49, 5, 5)])
def test_trace_contract(minimize, n, t, seed):
    res = minimize(start(n, seed), t)
    cfg = res.config
    fs = [res.initial_f] + [r.f for r in res.trace]
    assert all(b <= a for a, b in zip(fs, fs[1:]))
    for prev_f, rec in zip(fs, res.trace):
        assert prev_f - rec.f >= rec.alpha * cfg.rho * rec.slope
        assert cfg.alpha_clamp_low * cfg.tau**cfg.max_backtracks <= rec.alpha <= cfg.alpha_clamp_high
        assert rec.accepted_by in {"armijo_goldstein", "backtracking", "reset"}
        assert rec.f >= 0
    assert res.termination in TERMINATIONS
    assert min(r.grad_2 for r in res.trace) <= cfg.grad_tol
    assert a_value_harmonic(res.final_points, t) < 1e-12
    np.testing.assert_allclose(np.linalg.norm(res.final_points, axis=1), 1.0, atol=1e-12)
    assert res.final_points[0].tolist() == pytest.approx([0, 0, 1], abs=1e-12)


def test_bb_records_sufficient_decrease_with_gradient_norms():
    res = bb_minimize(start(25, 3), 4)
    prev = res.initial_grad_2
    f_prev = res.initial_f
    for rec in res.trace:
        assert rec.slope == pytest.approx(prev**2, rel=1e-12)
        assert rec.f <= f_prev - rec.alpha * res.config.rho * prev**2
        prev, f_prev = rec.grad_2, rec.f


def test_determinism():
    a = bb_minimize(start(30, 1), 4)
    b = bb_minimize(start(30, 1), 4)
    assert trace_to_json(a.trace) == trace_to_json(b.trace)
    np.testing.assert_array_equal(a.final_points, b.final_points)


def test_max_iterations():
    res = bb_minimize(start(30, 1), 4, BBConfig(k_max=3))
    assert res.termination == "max_iterations"
    assert res.iterations == 3


def test_progress_termination():
    res = bb_minimize(start(30, 1), 4, BBConfig(grad_tol=0.0, eps2=1.0))
    assert res.termination == "progress_small"


def test_callback_sees_every_iteration():
    seen = []
    res = qn_minimize(start(16), 3, callback=seen.append)
    assert tuple(seen) == res.trace


def test_output_angles_in_range():
    res = bb_minimize(start(36, 9), 4)
    a = res.final_angles
    assert np.all((a.theta >= 0) & (a.theta <= np.pi))
    assert np.all((a.phi >= 0) & (a.phi < 2 * np.pi))


def test_line_search_stall(monkeypatch):
    import sphdesign.optimizer as opt

    real = opt.value_and_gradient
    calls = itertools.count()

    def broken(v, n, t):
        f, g = real(v, n, t)
        return (f, g) if next(calls) == 0 else (np.nan, g)

    monkeypatch.setattr(opt, "value_and_gradient", broken)
    with pytest.raises(LineSearchStall):
        bb_minimize(start(9), 2, BBConfig(max_backtracks=5))


def test_trace_json_schema():
    res = bb_minimize(start(9), 2)
    data = json.loads(trace_to_json(res.trace))
    assert len(data) == res.iterations
    assert list(data[0]) == ["k", "f", "grad_inf", "grad_2", "alpha", "backtracks", "accepted_by"]
    assert data[-1]["f"] == res.trace[-1].f
    assert data[0]["k"] == 1
    assert trace_to_json(()) == "[]\n"
