"""Numerical checks of the structural identities at a regular point.

Every check returns a *normalised* residual (residual divided by its
natural scale) so one threshold per identity works across surfaces.
"""
import math

import numpy as np

from .errors import ZeroPrincipalCurvature
from .geometry import is_orthogonal_frame
from .vec4 import dot, norm, sym3_unpack
from .weingarten import (
    cayley_hamilton_residual,
    curvatures,
    default_eps_k,
    shape_operator_orthogonal,
    verify_ternary_identities,
)

THRESHOLDS = {
    "eq2_norm_identity": 1e-9,
    "eq5_orthogonality": 1e-10,
    "cramer_vs_solve": 1e-10,
    "general_vs_orthogonal": 1e-9,
    "theorem2_i": 1e-8,
    "theorem2_ii": 1e-8,
    "eq16_cayley_hamilton": 1e-9,
}

# fixed mixed triple (frame coordinates) exercised besides the frame itself
MIXED_TRIPLE = ((1.0, 0.5, -0.25), (-0.5, 1.0, 0.75), (0.25, -0.75, 1.0))


def eq2_residual(f):
    return abs(f.delta - float(dot(f.T, f.T))) / f.delta


def eq5_residual(f):
    scale = max(float(norm(v)) for v in f.first)
    return max(abs(float(dot(f.N, v))) for v in f.first) / scale


def cramer_vs_solve(A_cramer, A_solve):
    return float(np.max(np.abs(A_cramer - A_solve)) / max(1.0, np.max(np.abs(A_solve))))


def general_vs_orthogonal(f, A, tol=1e-12):
    """Conjugate the frame matrix into the normalised orthogonal frame and
    compare with the closed form.  None when the frame is not orthogonal."""
    if not is_orthogonal_frame(f, tol):
        return None
    lengths = np.sqrt(np.diag(f.G.matrix))
    conj = A * lengths[:, None] / lengths[None, :]
    closed = shape_operator_orthogonal(f, tol).matrix
    return float(np.max(np.abs(conj - closed)) / max(1.0, np.max(np.abs(closed))))


def theorem2_residuals(f, A, k, triples=None):
    """Largest normalised residuals of both ternary identities over triples."""
    K, H = curvatures(A)
    s_norm = max(1.0, max(abs(x) for x in k))
    if triples is None:
        triples = (np.eye(3), MIXED_TRIPLE)
    worst_i = worst_ii = 0.0
    for X, Y, Z in triples:
        res_i, res_ii = verify_ternary_identities(f, A, X, Y, Z, K, H)
        vol = math.prod(float(norm(c @ f.first)) for c in np.asarray((X, Y, Z), dtype=float))
        worst_i = max(worst_i, res_i / (vol * s_norm**3))
        worst_ii = max(worst_ii, res_ii / (vol * s_norm))
    return worst_i, worst_ii


def eq16_residual(S_ortho, A, k, eps_k=1e-8):
    """Normalised Cayley-Hamilton residual, or None when some k_i is zero."""
    K, H = curvatures(A)
    try:
        r = cayley_hamilton_residual(S_ortho, K, H, k, default_eps_k(k, eps_k))
    except ZeroPrincipalCurvature:
        return None
    return r / max(abs(x) for x in k) ** 3


def point_checks(batch, i, eps_k=1e-8):
    """All normalised residuals at regular row ``i`` of a BatchAnalysis."""
    f = batch.frame(i)
    A = batch.A_cramer[i]
    k = tuple(float(x) for x in batch.k[i])
    S = batch.S_ortho[i]
    t2i, t2ii = theorem2_residuals(f, A, k)
    return {
        "eq2_norm_identity": eq2_residual(f),
        "eq5_orthogonality": eq5_residual(f),
        "cramer_vs_solve": cramer_vs_solve(A, batch.A_solve[i]),
        "general_vs_orthogonal": general_vs_orthogonal(f, A),
        "theorem2_i": t2i,
        "theorem2_ii": t2ii,
        "eq16_cayley_hamilton": eq16_residual(sym3_unpack(S), A, k, eps_k),
    }
