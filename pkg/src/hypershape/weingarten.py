"""The Weingarten map of a hypersurface and its invariants.

Sign convention: S(X) = D_X N with N the normalised ternary product
phi_u (x) phi_v (x) phi_w, and the second-form coefficients are
b_ij = -<phi_ij, N>.  No minus sign is put in front of S.  Textbooks that
use S = -dN get the opposite sign for S, K and H (the tangent space is
odd-dimensional, so det flips too).

Matrices come in two bases:

* ``S_frame`` -- coordinates of S(phi_j) in the (generally non-orthonormal)
  frame {phi_u, phi_v, phi_w}; column j holds S(phi_j).  It solves
  ``G @ S_frame = B`` and need not be symmetric.
* ``S_ortho`` -- the same operator in the Gram-Schmidt orthonormalisation
  of the frame.  Symmetric.

The ``*_matrix`` helpers are vectorised over leading axes; the public
single-point operations wrap them.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DependentTriple, FrameNotOrthogonal, NoConvergence, NotRegular, ZeroPrincipalCurvature
from .geometry import is_orthogonal_frame
from .vec4 import Sym3, det3, norm, sym3_pack, sym3_unpack, ternary

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 30
_PAIRS = ((0, 1), (0, 2), (1, 2))


# ------------------------------------------------------------ vectorised core


def cramer_matrix(G, B):
    """Solve G A = B column by column with Cramer's rule (nine determinant ratios)."""
    G = np.asarray(G, dtype=float)
    B = np.asarray(B, dtype=float)
    delta = det3(G)
    A = np.empty(np.broadcast_shapes(G.shape, B.shape))
    for j in range(3):
        rhs = B[..., :, j]
        for i in range(3):
            Gi = G.copy()
            Gi[..., :, i] = rhs
            A[..., i, j] = det3(Gi) / delta
    return A


def solve_matrix(G, B):
    """Solve G A = B by LU with partial pivoting."""
    return np.linalg.solve(np.asarray(G, dtype=float), np.asarray(B, dtype=float))


def cholesky_upper(G):
    """Upper-triangular R with G = R^T R, explicit 3x3 formulas.

    Returns ``(R, R_inv)``.  Entries are NaN where G is not positive definite.
    """
    G = np.asarray(G, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        r11 = np.sqrt(G[..., 0, 0])
        r12 = G[..., 0, 1] / r11
        r13 = G[..., 0, 2] / r11
        r22 = np.sqrt(G[..., 1, 1] - r12 * r12)
        r23 = (G[..., 1, 2] - r12 * r13) / r22
        r33 = np.sqrt(G[..., 2, 2] - r13 * r13 - r23 * r23)
        i11, i22, i33 = 1.0 / r11, 1.0 / r22, 1.0 / r33
        i12 = -r12 * i11 * i22
        i23 = -r23 * i22 * i33
        i13 = -(r12 * i23 + r13 * i33) * i11
    zero = np.zeros_like(r11)
    R = np.stack(
        [np.stack([r11, r12, r13], -1), np.stack([zero, r22, r23], -1), np.stack([zero, zero, r33], -1)], -2
    )
    R_inv = np.stack(
        [np.stack([i11, i12, i13], -1), np.stack([zero, i22, i23], -1), np.stack([zero, zero, i33], -1)], -2
    )
    return R, R_inv


def orthonormal_matrix(G, B, first=None):
    """S in the Gram-Schmidt basis: R^-T B R^-1 with G = R^T R.

    If ``first`` (rows phi_u, phi_v, phi_w) is given, also returns the
    orthonormal tangent basis E (rows E1, E2, E3) = R^-T @ first.
    """
    _, R_inv = cholesky_upper(G)
    S = np.swapaxes(R_inv, -1, -2) @ np.asarray(B, dtype=float) @ R_inv
    S = 0.5 * (S + np.swapaxes(S, -1, -2))
    if first is None:
        return S
    return S, np.swapaxes(R_inv, -1, -2) @ np.asarray(first, dtype=float)


def jacobi_eigenvalues(S, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Eigenvalues of symmetric 3x3 matrices by cyclic Jacobi rotations.

    Sweeps until the off-diagonal Frobenius norm drops below
    ``tol * ||S||_F``.  Returns values sorted in descending order.
    """
    A = np.array(S, dtype=float)
    batch = A.shape[:-2]
    A = A.reshape(-1, 3, 3)
    scale = np.sqrt(np.sum(A * A, axis=(-1, -2)))
    for _ in range(max_sweeps + 1):
        off = np.sqrt(2.0 * (A[:, 0, 1] ** 2 + A[:, 0, 2] ** 2 + A[:, 1, 2] ** 2))
        active = ~(off <= tol * scale) & np.isfinite(off)
        if not active.any():
            break
        if _ == max_sweeps:
            raise NoConvergence(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
        for p, q in _PAIRS:
            apq = A[:, p, q]
            rotate = active & (apq != 0.0)
            if not rotate.any():
                continue
            with np.errstate(divide="ignore", invalid="ignore"):
                theta = (A[:, q, q] - A[:, p, p]) / (2.0 * apq)
                t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t = np.where(theta == 0.0, 1.0, t)
            t = np.where(rotate, t, 0.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            J = np.broadcast_to(np.eye(3), A.shape).copy()
            J[:, p, p] = c
            J[:, q, q] = c
            J[:, p, q] = s
            J[:, q, p] = -s
            A = np.swapaxes(J, 1, 2) @ A @ J
            A[:, p, q] = np.where(rotate, 0.0, A[:, p, q])
            A[:, q, p] = A[:, p, q]
    k = np.sort(np.diagonal(A, axis1=1, axis2=2), axis=-1)[:, ::-1]
    return k.reshape(batch + (3,))


def theorem1_curvatures(G, B):
    """Closed-form K and H for an orthogonal frame, from the diagonal of G."""
    G = np.asarray(G, dtype=float)
    B = np.asarray(B, dtype=float)
    b11, b12, b13 = B[..., 0, 0], B[..., 0, 1], B[..., 0, 2]
    b22, b23, b33 = B[..., 1, 1], B[..., 1, 2], B[..., 2, 2]
    g11, g22, g33 = G[..., 0, 0], G[..., 1, 1], G[..., 2, 2]
    K = (
        b11 * b22 * b33 + 2.0 * b12 * b13 * b23 - b12 * b12 * b33 - b13 * b13 * b22 - b23 * b23 * b11
    ) / (g11 * g22 * g33)
    H = (b11 / g11 + b22 / g22 + b33 / g33) / 3.0
    return K, H


# ------------------------------------------------------------ single point


@dataclass(frozen=True)
class ShapeResult:
    S_frame: np.ndarray
    S_ortho: Sym3
    K: float
    H: float
    k: tuple
    basis: np.ndarray  # rows E1, E2, E3
    point_class: object = None


def _require_regular(f):
    if not f.delta > 0.0 or not np.all(np.isfinite(f.N)):
        raise NotRegular(f"frame is degenerate at {f.point}")


def shape_operator_general(f, method="cramer"):
    """Matrix (a_ij) of S w.r.t. {phi_u, phi_v, phi_w}: column j is S(phi_j).

    ``method`` is ``"cramer"`` (determinant ratios) or ``"solve"``
    (pivoted LU).  Both are kept so they can be checked against each other.
    """
    _require_regular(f)
    if method == "cramer":
        return cramer_matrix(f.G.matrix, f.B.matrix)
    if method == "solve":
        return solve_matrix(f.G.matrix, f.B.matrix)
    raise ValueError(f"unknown method {method!r}")


def shape_operator_orthogonal(f, tol=1e-12):
    """Symmetric matrix b_ij / sqrt(g_ii g_jj) for an orthogonal frame."""
    if not is_orthogonal_frame(f, tol):
        raise FrameNotOrthogonal(f"frame at {f.point} is not orthogonal")
    g = np.sqrt(np.diag(f.G.matrix))
    return Sym3(f.B.matrix / np.outer(g, g))


def shape_operator_orthonormal(f):
    """S in the Gram-Schmidt orthonormalisation of the frame.

    Returns ``(Sym3, basis)`` where ``basis`` rows are E1, E2, E3 in E^4.
    """
    _require_regular(f)
    S, basis = orthonormal_matrix(f.G.matrix, f.B.matrix, f.first)
    if not np.all(np.isfinite(S)):
        raise NotRegular(f"Gram matrix at {f.point} is not positive definite")
    return Sym3(sym3_pack(S)), basis


def curvatures(S_frame):
    """(K, H) = (det S, tr S / 3).  Basis independent."""
    S = np.asarray(S_frame, dtype=float)
    return float(det3(S)), float(np.trace(S) / 3.0)


def principal_curvatures(S_ortho):
    S = S_ortho.matrix if isinstance(S_ortho, Sym3) else np.asarray(S_ortho, dtype=float)
    return tuple(float(x) for x in jacobi_eigenvalues(S))


def fundamental_form(q, f, S_frame, X, Y):
    """I^q(X, Y) = <S^(q-1) X, Y> with X, Y in frame coordinates."""
    if q not in (1, 2, 3, 4):
        raise ValueError(f"q must be 1, 2, 3 or 4, got {q!r}")
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    SX = np.linalg.matrix_power(np.asarray(S_frame, dtype=float), q - 1) @ X
    return float(Y @ f.G.matrix @ SX)


def tangent_vector(f, coeffs):
    """Vec4 of the tangent vector with frame coordinates ``coeffs``."""
    return np.asarray(coeffs, dtype=float) @ f.first


def verify_ternary_identities(f, S_frame, X, Y, Z, K=None, H=None):
    """Residuals of the two ternary-product identities of the shape operator.

    ``res_i  = |SX (x) SY (x) SZ - K X (x) Y (x) Z|``
    ``res_ii = |SX (x) Y (x) Z + X (x) SY (x) Z + X (x) Y (x) SZ - 3H X (x) Y (x) Z|``

    X, Y, Z are frame coordinates.  K and H default to det/trace of S_frame.
    """
    S = np.asarray(S_frame, dtype=float)
    coeffs = np.array([X, Y, Z], dtype=float)
    if abs(det3(coeffs)) <= 1e-12 * np.prod(np.linalg.norm(coeffs, axis=1)):
        raise DependentTriple("X, Y, Z are linearly dependent")
    if K is None or H is None:
        K, H = curvatures(S)
    x, y, z = (tangent_vector(f, c) for c in coeffs)
    sx, sy, sz = (tangent_vector(f, S @ c) for c in coeffs)
    xyz = ternary(x, y, z)
    res_i = float(norm(ternary(sx, sy, sz) - K * xyz))
    res_ii = float(norm(ternary(sx, y, z) + ternary(x, sy, z) + ternary(x, y, sz) - 3.0 * H * xyz))
    return res_i, res_ii


def harmonic_mean(k):
    return 3.0 / sum(1.0 / x for x in k)


def default_eps_k(k, eps_k=1e-8):
    return eps_k * max(1.0, max(abs(x) for x in k))


def cayley_hamilton_residual(S_ortho, K, H, k, eps_k=None):
    """||S^3 - 3H S^2 + (3K/h) S - K I||_F with h the harmonic mean of k.

    Requires every principal curvature to be non-zero (|k_i| > eps_k).
    """
    if eps_k is None:
        eps_k = default_eps_k(k)
    if min(abs(x) for x in k) <= eps_k:
        raise ZeroPrincipalCurvature(f"principal curvatures {tuple(k)} include a zero")
    S = S_ortho.matrix if isinstance(S_ortho, Sym3) else np.asarray(S_ortho, dtype=float)
    h = harmonic_mean(k)
    S2 = S @ S
    R = S2 @ S - 3.0 * H * S2 + (3.0 * K / h) * S - K * np.eye(3)
    return float(np.linalg.norm(R))


def shape_at(f, eps_k=1e-8):
    """Full single-point pipeline on a regular frame."""
    from .classify import classify_point

    S_frame = shape_operator_general(f)
    S_ortho, basis = shape_operator_orthonormal(f)
    K, H = curvatures(S_frame)
    k = principal_curvatures(S_ortho)
    return ShapeResult(S_frame, S_ortho, K, H, k, basis, classify_point(k, default_eps_k(k, eps_k)))


__all__ = [
    "ShapeResult",
    "cayley_hamilton_residual",
    "cholesky_upper",
    "cramer_matrix",
    "curvatures",
    "fundamental_form",
    "harmonic_mean",
    "jacobi_eigenvalues",
    "orthonormal_matrix",
    "principal_curvatures",
    "shape_at",
    "shape_operator_general",
    "shape_operator_orthogonal",
    "shape_operator_orthonormal",
    "solve_matrix",
    "sym3_unpack",
    "theorem1_curvatures",
    "verify_ternary_identities",
]
