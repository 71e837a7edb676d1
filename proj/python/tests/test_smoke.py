"""Smoke tests for the Python bindings: construction, numpy interop, a tiny
convergence run, and the operator identities the solver is built on."""

import math

import numpy as np
import pytest

import llproj


def test_grid_construction():
    g = llproj.make_grid(1, 4)
    assert g.dim == 1 and g.nx == 4 and g.ny == 1 and g.nz == 1
    assert g.hx == 0.25
    assert g.xc(0) == 0.125
    assert g.n_cells() == 4

    g3 = llproj.make_grid(3, 8, 8, 8)
    assert g3.dim == 3 and g3.n_cells() == 512
    assert g3.cell_volume() == pytest.approx((1.0 / 8.0) ** 3)

    with pytest.raises(ValueError):
        llproj.make_grid(2, 4)


def test_field_numpy_roundtrip():
    g = llproj.make_grid(3, 4, 4, 4)
    f = llproj.VectorField(g)
    rng = np.random.default_rng(7)
    values = rng.uniform(-1.0, 1.0, size=(4, 4, 4, 3))
    f.values = values
    np.testing.assert_array_equal(f.values, values)
    assert f.at(1, 2, 3) == pytest.approx(tuple(values[3, 2, 1]))


def test_laplacian_of_constant_vanishes():
    g = llproj.make_grid(1, 16)
    f = llproj.VectorField(g)
    f.values = np.tile([0.3, -0.4, 0.5], (16, 1))
    f.fill_ghosts()
    lap = llproj.laplacian(f)
    np.testing.assert_allclose(lap.values, 0.0, atol=1e-13)

    stale = llproj.VectorField(g)
    stale.values = np.ones((16, 3))
    with pytest.raises(RuntimeError):
        llproj.laplacian(stale)


def test_projection_normalizes():
    g = llproj.make_grid(1, 8)
    f = llproj.VectorField(g)
    f.values = np.tile([3.0, 4.0, 0.0], (8, 1))
    p = llproj.project(f)
    np.testing.assert_allclose(np.linalg.norm(p.values, axis=-1), 1.0, atol=1e-15)
    np.testing.assert_allclose(p.values[:, 0], 0.6)


def test_summation_by_parts():
    g = llproj.make_grid(3, 6, 6, 6)
    f = llproj.VectorField(g)
    rng = np.random.default_rng(11)
    f.values = rng.uniform(-1.0, 1.0, size=(6, 6, 6, 3))
    f.fill_ghosts()
    lap = llproj.laplacian(f)
    lhs = llproj.inner(lap, f)
    grad_sq = llproj.norm_h1(f) ** 2 - llproj.norm_l2(f) ** 2
    assert lhs == pytest.approx(-grad_sq, rel=1e-12)


def test_exact_solution_and_forcing():
    m = llproj.exact_solution(1, x=0.3, t=0.7)
    assert math.hypot(*m) == pytest.approx(1.0, abs=1e-14)
    assert llproj.exact_solution(3, 0.2, 0.4, 0.6, t=0.0) == pytest.approx((0.0, 0.0, 1.0))
    f = llproj.forcing_term(1, 0.3, 0.5, 0.5, 0.7, alpha=0.01)
    assert all(math.isfinite(c) for c in f)


def test_restriction_shapes():
    fine_grid = llproj.make_grid(1, 27)
    coarse_grid = llproj.make_grid(1, 9)
    f = llproj.VectorField(fine_grid)
    f.values = np.arange(27 * 3, dtype=float).reshape(27, 3)
    c = llproj.restrict_factor3(f, coarse_grid)
    assert c.values.shape == (9, 3)
    np.testing.assert_array_equal(c.values[0], f.values[1])  # coincident centers


def test_fit_order_synthetic():
    points = [(k, 3.0 * k**2) for k in (0.1, 0.05, 0.025)]
    assert llproj.fit_order(points) == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(ValueError):
        llproj.fit_order([(0.1, 1.0)])


def test_run_mms_converges():
    coarse = llproj.run_mms(1, n=20, dt=0.05, t_final=0.2)
    fine = llproj.run_mms(1, n=40, dt=0.025, t_final=0.2)
    assert coarse["steps"] == 4 and fine["steps"] == 8
    assert coarse["eq_residual"] <= 1e-9
    for key in ("err_inf", "err_l2", "err_h1"):
        assert 0.0 < fine[key] < coarse[key]
    # Joint k = h refinement should show roughly second-order decay.
    assert coarse["err_l2"] / fine["err_l2"] > 3.0
