import numpy as np
import pytest

from hypershape import surfaces
from hypershape._accel import USE_NUMBA
from hypershape.batch import DOMAIN_ERROR, OK, SINGULAR, analyze_points, grid_points
from hypershape.geometry import ParametricSurface, evaluate_derivatives, frame_at
from hypershape.kernels import analyze_loop, analyze_numpy, get_backend
from hypershape.weingarten import principal_curvatures, shape_operator_general, shape_operator_orthonormal

FIELDS = ("G", "delta", "T", "N", "B", "regular", "A_cramer", "A_solve", "S_ortho", "basis", "k", "converged")


def _inputs(name, n=200, seed=20):
    s = surfaces.get(name)
    lo, hi = np.array(s.domain).T
    pts = np.random.default_rng(seed).uniform(lo, hi, size=(n, 3))
    _, first, second = evaluate_derivatives(s, pts)
    return first, second


@pytest.mark.parametrize("name", ["hypersphere", "ellipsoid", "nonorthogonal", "bumpy_graph", "flat_slab"])
def test_loop_kernel_matches_vectorised(name):
    first, second = _inputs(name)
    a = analyze_numpy(first, second, 1e-12)
    b = analyze_loop(first, second, 1e-12)
    for field, x, y in zip(FIELDS, a, b):
        assert np.allclose(x, y, rtol=1e-12, atol=1e-13, equal_nan=True), field


@pytest.mark.skipif(not USE_NUMBA, reason="numba disabled or not installed")
def test_pure_python_loop_matches_compiled():
    first, second = _inputs("bumpy_graph", n=5)
    a = analyze_loop(first, second, 1e-12)
    b = analyze_loop.py_func(first, second, 1e-12)
    for field, x, y in zip(FIELDS, a, b):
        assert np.allclose(x, y, rtol=1e-13, atol=1e-14, equal_nan=True), field


def test_unknown_backend():
    with pytest.raises(ValueError):
        get_backend("fortran")


@pytest.mark.parametrize("backend", ["numpy", "numba"])
def test_batch_matches_single_point_pipeline(backend):
    s = surfaces.get("ellipsoid")
    pts = np.random.default_rng(21).uniform(0.3, 2.8, size=(20, 3))
    batch = analyze_points(s, pts, backend=backend)
    assert batch.status == [OK] * 20
    for i, p in enumerate(pts):
        f = frame_at(s, p)
        assert np.allclose(batch.A_cramer[i], shape_operator_general(f), atol=1e-12)
        S, basis = shape_operator_orthonormal(f)
        assert np.allclose(batch.S_ortho[i], S.packed, atol=1e-12)
        assert np.allclose(batch.basis[i], basis, atol=1e-12)
        assert np.allclose(batch.k[i], principal_curvatures(S), atol=1e-12)


@pytest.mark.parametrize("backend", ["numpy", "numba"])
def test_singular_and_domain_error_rows(backend):
    sphere = ParametricSurface(surfaces.get("hypersphere").coords, ((0, 3.2),) * 3)
    batch = analyze_points(sphere, [(0, 0, 0), (1, 1, 1), (0.5, 0.5, 0.0)], backend=backend)
    assert batch.status == [SINGULAR, OK, SINGULAR]
    logs = ParametricSurface(("log(u)", "v", "w", "0"))
    batch = analyze_points(logs, [(-1, 0, 0), (1, 0, 0)], backend=backend)
    assert batch.status == [DOMAIN_ERROR, OK]


def test_grid_order_w_fastest():
    pts = grid_points(((0, 1), (0, 1), (0, 1)), (2, 2, 3))
    assert pts.shape == (12, 3)
    assert pts[:4].tolist() == [[0, 0, 0], [0, 0, 0.5], [0, 0, 1], [0, 1, 0]]
    assert grid_points(((2, 5), (0, 1), (0, 1)), (1, 1, 1)).tolist() == [[2, 0, 0]]
    with pytest.raises(ValueError):
        grid_points(((0, 1),) * 3, (0, 1, 1))
