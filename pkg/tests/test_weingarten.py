import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypershape import surfaces
from hypershape.errors import DependentTriple, FrameNotOrthogonal, NoConvergence, ZeroPrincipalCurvature
from hypershape.geometry import ParametricSurface, frame_at, is_orthogonal_frame
from hypershape.vec4 import Sym3, det3
from hypershape.weingarten import (
    cayley_hamilton_residual,
    cholesky_upper,
    cramer_matrix,
    curvatures,
    fundamental_form,
    jacobi_eigenvalues,
    principal_curvatures,
    shape_at,
    shape_operator_general,
    shape_operator_orthogonal,
    shape_operator_orthonormal,
    solve_matrix,
    theorem1_curvatures,
    verify_ternary_identities,
)

SQ2 = math.sqrt(2.0)
HALF_PI = math.pi / 2
SPHERE = ParametricSurface(surfaces.get("hypersphere").coords, ((0, math.pi), (0, 2 * math.pi), (0, math.pi)))
I3 = np.eye(3)


def ex1(u, v=0.0, w=0.0):
    return frame_at(surfaces.get("example1"), (u, v, w))


def example1_k1(u):
    return 2 * u**3 / (1 + u**4) ** 1.5


# ---------------------------------------------------------------- examples


def test_example1_general_matrix_at_one():
    S = shape_operator_general(ex1(1.0))
    assert np.allclose(S, np.diag([1 / SQ2, 0, 0]), atol=1e-15)


@pytest.mark.parametrize("u", [0.5, 0.8, 1.0, 1.3, 2.0])
def test_example1_matrix_closed_form(u):
    f = ex1(u)
    expected = np.diag([example1_k1(u), 0, 0])
    assert np.allclose(shape_operator_orthogonal(f).matrix, expected, atol=1e-14)
    S, _ = shape_operator_orthonormal(f)
    assert np.allclose(S.matrix, expected, atol=1e-14)


def test_hypersphere_gives_minus_identity():
    # With N = -phi (the normal this chart produces) and S(X) = D_X N,
    # B = -<phi_ij, N> = -G, hence S = -I.  See README "Sign convention".
    f = frame_at(SPHERE, (HALF_PI, 0.0, HALF_PI))
    assert np.allclose(shape_operator_general(f), -I3, atol=1e-15)
    assert np.allclose(shape_operator_orthogonal(f).matrix, -I3, atol=1e-15)
    K, H = curvatures(shape_operator_general(f))
    assert (K, H) == pytest.approx((-1.0, -1.0), abs=1e-15)


def test_hypersphere_minus_identity_everywhere():
    s = surfaces.get("hypersphere")
    for p in np.random.default_rng(10).uniform(0.3, 2.8, size=(40, 3)):
        S, basis = shape_operator_orthonormal(frame_at(s, p))
        assert np.allclose(S.matrix, -I3, atol=1e-12)
        assert np.allclose(basis @ basis.T, I3, atol=1e-12)


def test_flat_and_sheared_slabs_are_zero():
    f = frame_at(surfaces.get("flat_slab"), (0.1, 0.2, 0.3))
    assert not np.any(shape_operator_orthogonal(f).matrix)
    g = frame_at(surfaces.get("sheared_slab"), (0.1, 0.2, 0.3))
    S, _ = shape_operator_orthonormal(g)
    assert not np.any(S.matrix)
    with pytest.raises(FrameNotOrthogonal):
        shape_operator_orthogonal(g)


@pytest.mark.parametrize(
    "S, K, H",
    [(I3, 1.0, 1.0), (np.diag([1 / SQ2, 0, 0]), 0.0, 1 / (3 * SQ2)), (np.zeros((3, 3)), 0.0, 0.0)],
)
def test_curvature_examples(S, K, H):
    assert curvatures(S) == pytest.approx((K, H), abs=1e-15)


@pytest.mark.parametrize(
    "S, k",
    [
        (I3, (1, 1, 1)),
        (np.diag([1 / SQ2, 0, 0]), (1 / SQ2, 0, 0)),
        ([[0, 1, 0], [1, 0, 0], [0, 0, 0]], (1, 0, -1)),
        (np.diag([1.0, 3.0, 2.0]), (3, 2, 1)),
    ],
)
def test_principal_curvature_examples(S, k):
    assert principal_curvatures(Sym3.from_matrix(np.asarray(S, dtype=float))) == pytest.approx(k, abs=1e-15)


def test_fundamental_form_examples():
    f = ex1(1.0)
    assert fundamental_form(1, f, shape_operator_general(f), (1, 0, 0), (1, 0, 0)) == 2.0
    g = frame_at(SPHERE, (HALF_PI, 0.0, HALF_PI))
    # II = -I on this chart of the sphere
    assert fundamental_form(2, g, shape_operator_general(g), (1, 0, 0), (1, 0, 0)) == pytest.approx(-1.0, abs=1e-15)
    h = frame_at(surfaces.get("flat_slab"), (0.0, 0.0, 0.0))
    assert fundamental_form(3, h, shape_operator_general(h), (1, 2, 3), (0.5, -1, 2)) == 0.0
    with pytest.raises(ValueError):
        fundamental_form(5, h, np.zeros((3, 3)), (1, 0, 0), (1, 0, 0))


def test_second_form_is_b_in_frame_coordinates():
    f = frame_at(surfaces.get("nonorthogonal"), (0.3, 0.5, 0.1))
    A = shape_operator_general(f)
    rng = np.random.default_rng(11)
    for X, Y in rng.normal(size=(10, 2, 3)):
        assert fundamental_form(2, f, A, X, Y) == pytest.approx(Y @ f.B.matrix @ X, abs=1e-12)
        assert fundamental_form(2, f, A, X, Y) == pytest.approx(fundamental_form(2, f, A, Y, X), abs=1e-12)


def test_ternary_identities_on_examples():
    g = frame_at(SPHERE, (HALF_PI, 0.0, HALF_PI))
    res = verify_ternary_identities(g, shape_operator_general(g), *I3)
    assert res == pytest.approx((0.0, 0.0), abs=1e-14)
    h = frame_at(surfaces.get("flat_slab"), (0.2, 0.0, 0.0))
    assert verify_ternary_identities(h, shape_operator_general(h), *I3) == (0.0, 0.0)
    with pytest.raises(DependentTriple):
        verify_ternary_identities(h, np.zeros((3, 3)), (1, 0, 0), (2, 0, 0), (0, 0, 1))


def test_cayley_hamilton_examples():
    assert cayley_hamilton_residual(I3, 1.0, 1.0, (1, 1, 1)) == 0.0
    S = np.diag([1.0, 2.0, 3.0])
    assert cayley_hamilton_residual(S, 6.0, 2.0, (3, 2, 1)) <= 1e-13
    with pytest.raises(ZeroPrincipalCurvature):
        cayley_hamilton_residual(np.diag([1 / SQ2, 0, 0]), 0.0, 1 / (3 * SQ2), (1 / SQ2, 0, 0))


# ------------------------------------------------- frozen CAS oracle values


def test_nonorthogonal_frame_matrix_is_not_symmetric():
    f = frame_at(surfaces.get("nonorthogonal"), (0.3, 0.5, 0.1))
    A = shape_operator_general(f)
    expected = [[0, -0.38490017946, 0], [0, 0.76980035892, 0], [0, 0, 0]]
    assert np.allclose(A, expected, atol=1e-10)
    assert np.linalg.norm(A - A.T) > 1e-3
    assert principal_curvatures(shape_operator_orthonormal(f)[0]) == pytest.approx((0.769800358919501, 0, 0), abs=1e-12)


def test_saddle_quartic_curvatures():
    f = frame_at(surfaces.get("saddle_quartic"), (0.5, -0.3, 0.7))
    r = shape_at(f)
    assert r.k == pytest.approx((1.0017402829015263, 0.6417341949491342, -0.499364607776835), abs=1e-12)
    assert r.point_class.name == "hyperboloidal"
    o = frame_at(surfaces.get("saddle_quartic"), (0.0, 0.0, 0.0))
    assert np.allclose(shape_operator_general(o), np.diag([1, 1, -1]), atol=1e-15)


def test_product_saddle_curvatures():
    r = shape_at(frame_at(surfaces.get("product_saddle"), (0.4, 0.2, -0.5)))
    assert r.k == pytest.approx((0.7746945385225692, 0.0, -0.8964106624126061), abs=1e-12)
    assert r.point_class.name == "hyperbolic_cylinder"
    o = shape_at(frame_at(surfaces.get("product_saddle"), (0.0, 0.0, 0.0)))
    assert o.k == pytest.approx((1, 0, -1), abs=1e-15)


def test_cylinder_curvatures():
    r = shape_at(frame_at(surfaces.get("cylinder"), (1.0, 0.5, 0.2)))
    assert r.k == pytest.approx((1, 1, 0), abs=1e-12)
    assert r.point_class.name == "elliptic_cylinder"


# ---------------------------------------------------------- path agreement

RANDOM_SURFACES = ["example1", "hypersphere", "cylinder", "saddle_quartic", "nonorthogonal", "ellipsoid", "bumpy_graph"]


def _frames(name, n, seed):
    s = surfaces.get(name)
    lo, hi = np.array(s.domain).T
    return [frame_at(s, p) for p in np.random.default_rng(seed).uniform(lo, hi, size=(n, 3))]


@pytest.mark.parametrize("name", RANDOM_SURFACES)
def test_cramer_solve_and_theorem1_agree(name):
    for f in _frames(name, 25, 12):
        A = shape_operator_general(f, "cramer")
        A2 = shape_operator_general(f, "solve")
        assert np.max(np.abs(A - A2)) <= 1e-10 * max(1.0, np.max(np.abs(A2)))
        K, H = curvatures(A)
        assert det3(f.B.matrix) / f.delta == pytest.approx(K, abs=1e-10)
        if is_orthogonal_frame(f):
            K1, H1 = theorem1_curvatures(f.G.matrix, f.B.matrix)
            assert K1 == pytest.approx(K, abs=1e-10)
            assert H1 == pytest.approx(H, abs=1e-10)


@pytest.mark.parametrize("name", RANDOM_SURFACES)
def test_orthonormal_form_is_similar_to_frame_matrix(name):
    for f in _frames(name, 25, 13):
        A = shape_operator_general(f)
        S, basis = shape_operator_orthonormal(f)
        K, H = curvatures(A)
        assert det3(S.matrix) == pytest.approx(K, abs=1e-10)
        assert np.trace(S.matrix) / 3 == pytest.approx(H, abs=1e-10)
        # S(E_i) expressed in the orthonormal basis
        k = principal_curvatures(S)
        ev = np.sort(np.linalg.eigvals(A).real)[::-1]
        assert np.allclose(k, ev, atol=1e-9)
        assert np.allclose(basis @ basis.T, I3, atol=1e-12)
        assert np.allclose(basis @ f.N, 0, atol=1e-12)


def test_shape_operator_is_derivative_of_normal():
    # column j of A satisfies sum_i a_ij phi_i = dN/dx_j, checked by finite differences
    s = surfaces.get("bumpy_graph")
    p = np.array([0.2, -0.3, 0.4])
    f = frame_at(s, p)
    A = shape_operator_general(f)
    h = 1e-6
    for j in range(3):
        e = np.zeros(3)
        e[j] = h
        dN = (frame_at(s, p + e).N - frame_at(s, p - e).N) / (2 * h)
        assert np.allclose(A[:, j] @ f.first, dN, atol=1e-8)


def test_theorem2_on_random_triples():
    for name in RANDOM_SURFACES:
        for f in _frames(name, 5, 14):
            A = shape_operator_general(f)
            for X, Y, Z in np.random.default_rng(15).normal(size=(5, 3, 3)):
                ri, rii = verify_ternary_identities(f, A, X, Y, Z)
                vol = np.prod([np.linalg.norm(c @ f.first) for c in (X, Y, Z)])
                s = max(1.0, np.max(np.abs(principal_curvatures(shape_operator_orthonormal(f)[0]))))
                assert ri <= 1e-8 * vol * s**3
                assert rii <= 1e-8 * vol * s


def test_example1_has_zero_principal_curvature():
    r = shape_at(ex1(1.0))
    with pytest.raises(ZeroPrincipalCurvature):
        cayley_hamilton_residual(r.S_ortho, r.K, r.H, r.k)


# ----------------------------------------------------------- linear algebra

spd_entries = st.lists(st.floats(min_value=-3, max_value=3), min_size=9, max_size=9)


@settings(max_examples=200)
@given(spd_entries, spd_entries)
def test_cramer_matches_solve_on_spd(a, b):
    M = np.array(a).reshape(3, 3)
    G = M @ M.T + 0.5 * I3
    Bm = np.array(b).reshape(3, 3)
    Bm = Bm + Bm.T
    assert np.allclose(cramer_matrix(G, Bm), solve_matrix(G, Bm), atol=1e-9)
    R, Ri = cholesky_upper(G)
    assert np.allclose(R.T @ R, G, atol=1e-12)
    assert np.allclose(R @ Ri, I3, atol=1e-10)
    assert np.allclose(np.triu(R), R)


@settings(max_examples=200)
@given(spd_entries)
def test_jacobi_matches_numpy(a):
    M = np.array(a).reshape(3, 3)
    S = M + M.T
    k = jacobi_eigenvalues(S)
    assert np.allclose(k, np.sort(np.linalg.eigvalsh(S))[::-1], atol=1e-12 * max(1.0, np.abs(S).max()))


def test_jacobi_stacked_and_non_convergence():
    S = np.stack([np.diag([1.0, 2.0, 3.0]), [[0, 1, 0], [1, 0, 0], [0, 0, 0]]])
    assert np.allclose(jacobi_eigenvalues(S), [[3, 2, 1], [1, 0, -1]], atol=1e-15)
    with pytest.raises(NoConvergence):
        jacobi_eigenvalues(np.array([[1.0, 0.3, 0.2], [0.3, 2.0, 0.1], [0.2, 0.1, 3.0]]), tol=0.0, max_sweeps=1)
