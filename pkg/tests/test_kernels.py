"""The compiled and numpy kernels must agree; each must match a naive oracle."""
import numpy as np
import pytest

from sphdesign import kernels
from sphdesign.geometry import random_points
from sphdesign.legendre import legendre_all

BACKENDS = kernels.available_backends()


def naive_value(pts, t):
    w = 2 * np.arange(t + 1) + 1.0
    w[0] = 0.0
    total = 0.0
    for x in pts:
        for y in pts:
            total += w @ legendre_all(t, float(np.clip(x @ y, -1, 1))).values
    return total / len(pts) ** 2


def test_compiled_backend_built():
    # the package is expected to ship with its extension built
    assert "cython" in BACKENDS
    assert kernels.BACKEND == "cython"


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("n, t", [(1, 1), (2, 1), (5, 3), (20, 7)])
def test_value_matches_naive(backend, n, t):
    mod = kernels.get_backend(backend)
    pts = random_points(n, n + t)
    assert mod.kernel_value(pts, t) == pytest.approx(naive_value(pts, t), abs=1e-12)
    v, _ = mod.kernel_value_grad(pts, t)
    assert v == mod.kernel_value(pts, t)


@pytest.mark.parametrize("n, t", [(3, 1), (37, 5), (300, 12)])
def test_backends_agree(n, t):
    pts = random_points(n, 3 * n)
    ref_v, ref_g = kernels.get_backend("python").kernel_value_grad(pts, t)
    for b in BACKENDS:
        v, g = kernels.get_backend(b).kernel_value_grad(pts, t)
        assert v == pytest.approx(ref_v, abs=1e-13)
        np.testing.assert_allclose(g, ref_g, atol=1e-12)


@pytest.mark.parametrize("backend", BACKENDS)
def test_euclidean_gradient_finite_differences(backend):
    mod = kernels.get_backend(backend)
    pts = random_points(6, 1)
    t = 5
    _, g = mod.kernel_value_grad(pts, t)
    h = 1e-6
    for i in range(6):
        for c in range(3):
            e = np.zeros_like(pts)
            e[i, c] = h
            # the kernel form extends A off the sphere, so raw coordinates can be perturbed
            fd = (mod.kernel_value(pts + e, t) - mod.kernel_value(pts - e, t)) / (2 * h)
            assert g[i, c] == pytest.approx(fd, abs=1e-7)


@pytest.mark.parametrize("backend", BACKENDS)
def test_deterministic(backend):
    mod = kernels.get_backend(backend)
    pts = random_points(200, 4)
    a = mod.kernel_value_grad(pts, 9)
    b = mod.kernel_value_grad(pts, 9)
    assert a[0] == b[0]
    np.testing.assert_array_equal(a[1], b[1])


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")
