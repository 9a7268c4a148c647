import numpy as np
import pytest

from sphdesign.errors import NormError
from sphdesign.geometry import random_points
from sphdesign.harmonics import basis_matrix, degree_block, eval_harmonics, row_index
from sphdesign.legendre import legendre_all
from sphdesign.verifier import singular_values

INV = 1.0 / np.sqrt(4 * np.pi)


def test_constant_term():
    y = eval_harmonics(0, random_points(1, 3)[0])
    assert y.shape == (1,)
    assert y[0] == pytest.approx(0.2820947918, abs=1e-10)
    assert y[0] == pytest.approx(INV, abs=1e-14)


def test_pole_degree_one():
    block = degree_block(eval_harmonics(1, [0, 0, 1.0]), 1)
    nz = np.flatnonzero(np.abs(block) > 1e-15)
    assert nz.tolist() == [row_index(1, 0) - 1]
    assert abs(block[nz[0]]) == pytest.approx(np.sqrt(3 / (4 * np.pi)), abs=1e-14)


def test_real_harmonics_low_degree_closed_forms():
    # Y_1^{-1,0,1} = sqrt(3/4pi) (y, z, x); Y_2^0 = sqrt(5/16pi)(3z^2 - 1)
    p = random_points(1, 11)[0]
    y = eval_harmonics(2, p)
    c1 = np.sqrt(3 / (4 * np.pi))
    np.testing.assert_allclose(y[1:4], c1 * p[[1, 2, 0]], atol=1e-14)
    assert y[row_index(2, 0)] == pytest.approx(np.sqrt(5 / (16 * np.pi)) * (3 * p[2] ** 2 - 1), abs=1e-14)
    assert y[row_index(2, -2)] == pytest.approx(np.sqrt(15 / (4 * np.pi)) * p[0] * p[1], abs=1e-14)


def test_addition_theorem_degree_8(rng):
    p, q = random_points(2, 99)
    lhs = degree_block(eval_harmonics(8, p), 8) @ degree_block(eval_harmonics(8, q), 8)
    rhs = 17 / (4 * np.pi) * legendre_all(8, p @ q).values[8]
    assert lhs == pytest.approx(rhs, abs=1e-11)


def test_addition_theorem_all_degrees():
    pts = random_points(100, 5)
    t = 20
    y = basis_matrix(t, pts)
    for a in range(0, 100, 2):
        p_leg = legendre_all(t, pts[a] @ pts[a + 1]).values
        for n in range(t + 1):
            lhs = degree_block(y[:, a], n) @ degree_block(y[:, a + 1], n)
            assert abs(lhs - (2 * n + 1) / (4 * np.pi) * p_leg[n]) < 1e-11


@pytest.mark.parametrize("t", [5, 40, 120])
def test_degree_norms_constant(t):
    y = basis_matrix(t, random_points(30, t))
    for n in range(t + 1):
        np.testing.assert_allclose((degree_block(y, n) ** 2).sum(axis=0), (2 * n + 1) / (4 * np.pi), atol=1e-11)


def test_high_degree_stable_near_pole():
    p = np.array([[np.sin(1e-3), 0.0, np.cos(1e-3)], [0.0, 0.0, -1.0]])
    y = basis_matrix(200, p)
    assert np.all(np.isfinite(y))
    np.testing.assert_allclose((y**2).sum(axis=0), 201**2 / (4 * np.pi), rtol=1e-10)


def test_basis_matrix_shapes_and_first_row():
    m = basis_matrix(0, random_points(3, 1))
    np.testing.assert_allclose(m, np.full((1, 3), INV), atol=1e-15)
    y = basis_matrix(4, random_points(9, 1))
    assert y.shape == (25, 9)
    np.testing.assert_allclose(y[0], INV, atol=1e-15)


def test_gram_identity():
    pts = random_points(16, 8)
    t = 3
    y = basis_matrix(t, pts)
    c = np.clip(pts @ pts.T, -1, 1)
    leg = np.array([[legendre_all(t, v).values for v in row] for row in c])
    kernel = leg @ ((2 * np.arange(t + 1) + 1) / (4 * np.pi))
    np.testing.assert_allclose(y.T @ y, kernel, atol=1e-10)


def test_prefix_property():
    pts = random_points(10, 4)
    np.testing.assert_array_equal(basis_matrix(9, pts)[:16], basis_matrix(3, pts))


def test_tetrahedron_degree_one_full_rank(tetrahedron):
    s = singular_values(basis_matrix(1, tetrahedron))
    assert s.shape == (4,) and s[-1] > 0.1


def test_column_determinism():
    pts = random_points(40, 6)
    full = basis_matrix(10, pts)
    for j in (0, 17, 39):
        np.testing.assert_array_equal(basis_matrix(10, pts[j:j + 1])[:, 0], full[:, j])


def test_norm_error():
    with pytest.raises(NormError):
        eval_harmonics(2, [1.0, 0.1, 0.0])
