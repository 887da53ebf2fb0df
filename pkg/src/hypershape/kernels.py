"""Batch kernels: frame algebra and Weingarten matrices for many points.

Two interchangeable implementations share one signature::

    analyze(first (n,3,4), second (n,6,4), eps_reg) ->
        (G (n,6), delta (n,), T (n,4), N (n,4), B (n,6), regular (n,),
         A_cramer (n,3,3), A_solve (n,3,3), S_ortho (n,6), basis (n,3,4),
         k (n,3), converged (n,))

``analyze_numba`` is a scalar loop compiled with numba when available;
``analyze_numpy`` is built from the vectorised helpers in
:mod:`hypershape.weingarten`.  Rows that are not regular hold NaN.
"""
import math

import numpy as np

from ._accel import USE_NUMBA, njit
from .geometry import frame_quantities, regularity_threshold
from .weingarten import (
    JACOBI_MAX_SWEEPS,
    JACOBI_TOL,
    cramer_matrix,
    jacobi_eigenvalues,
    orthonormal_matrix,
    solve_matrix,
)
from .vec4 import sym3_pack, sym3_unpack


def analyze_numpy(first, second, eps_reg):
    n = len(first)
    G, delta, T, N, B = frame_quantities(first, second)
    regular = delta > regularity_threshold(first, eps_reg)
    A_cramer = np.full((n, 3, 3), np.nan)
    A_solve = np.full((n, 3, 3), np.nan)
    S_ortho = np.full((n, 6), np.nan)
    basis = np.full((n, 3, 4), np.nan)
    k = np.full((n, 3), np.nan)
    converged = np.zeros(n, dtype=np.bool_)
    idx = np.flatnonzero(regular)
    if len(idx):
        Gm = sym3_unpack(G[idx])
        Bm = sym3_unpack(B[idx])
        A_cramer[idx] = cramer_matrix(Gm, Bm)
        A_solve[idx] = solve_matrix(Gm, Bm)
        S, E = orthonormal_matrix(Gm, Bm, first[idx])
        S_ortho[idx] = sym3_pack(S)
        basis[idx] = E
        k[idx] = jacobi_eigenvalues(S)
        converged[idx] = True
    N = np.where(regular[:, None], N, np.nan)
    B = np.where(regular[:, None], B, np.nan)
    return G, delta, T, N, B, regular, A_cramer, A_solve, S_ortho, basis, k, converged


# ------------------------------------------------------------ scalar kernels


@njit(cache=True)
def _ternary(x, y, z, out):
    m01 = y[0] * z[1] - y[1] * z[0]
    m02 = y[0] * z[2] - y[2] * z[0]
    m03 = y[0] * z[3] - y[3] * z[0]
    m12 = y[1] * z[2] - y[2] * z[1]
    m13 = y[1] * z[3] - y[3] * z[1]
    m23 = y[2] * z[3] - y[3] * z[2]
    out[0] = x[1] * m23 - x[2] * m13 + x[3] * m12
    out[1] = -(x[0] * m23 - x[2] * m03 + x[3] * m02)
    out[2] = x[0] * m13 - x[1] * m03 + x[3] * m01
    out[3] = -(x[0] * m12 - x[1] * m02 + x[2] * m01)


@njit(cache=True)
def _det3(m):
    return (
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


@njit(cache=True)
def _cramer(G, B, A):
    delta = _det3(G)
    Gi = np.empty((3, 3))
    for j in range(3):
        for i in range(3):
            for r in range(3):
                for c in range(3):
                    Gi[r, c] = B[r, j] if c == i else G[r, c]
            A[i, j] = _det3(Gi) / delta


@njit(cache=True)
def _pivoted_solve(G, B, A):
    M = G.copy()
    R = B.copy()
    for col in range(3):
        piv = col
        for r in range(col + 1, 3):
            if abs(M[r, col]) > abs(M[piv, col]):
                piv = r
        if piv != col:
            for c in range(3):
                M[col, c], M[piv, c] = M[piv, c], M[col, c]
                R[col, c], R[piv, c] = R[piv, c], R[col, c]
        for r in range(col + 1, 3):
            f = M[r, col] / M[col, col]
            for c in range(col, 3):
                M[r, c] -= f * M[col, c]
            for c in range(3):
                R[r, c] -= f * R[col, c]
    for j in range(3):
        for i in range(2, -1, -1):
            acc = R[i, j]
            for c in range(i + 1, 3):
                acc -= M[i, c] * A[c, j]
            A[i, j] = acc / M[i, i]


@njit(cache=True)
def _cholesky_inv(G, Ri):
    r11 = math.sqrt(G[0, 0])
    r12 = G[0, 1] / r11
    r13 = G[0, 2] / r11
    r22 = math.sqrt(G[1, 1] - r12 * r12)
    r23 = (G[1, 2] - r12 * r13) / r22
    r33 = math.sqrt(G[2, 2] - r13 * r13 - r23 * r23)
    i11 = 1.0 / r11
    i22 = 1.0 / r22
    i33 = 1.0 / r33
    i23 = -r23 * i22 * i33
    Ri[0, 0] = i11
    Ri[0, 1] = -r12 * i11 * i22
    Ri[0, 2] = -(r12 * i23 + r13 * i33) * i11
    Ri[1, 0] = 0.0
    Ri[1, 1] = i22
    Ri[1, 2] = i23
    Ri[2, 0] = 0.0
    Ri[2, 1] = 0.0
    Ri[2, 2] = i33


@njit(cache=True)
def _jacobi(S, k, tol, max_sweeps):
    A = S.copy()
    scale = 0.0
    for i in range(3):
        for j in range(3):
            scale += A[i, j] * A[i, j]
    scale = math.sqrt(scale)
    converged = False
    for sweep in range(max_sweeps + 1):
        off = math.sqrt(2.0 * (A[0, 1] ** 2 + A[0, 2] ** 2 + A[1, 2] ** 2))
        if off <= tol * scale:
            converged = True
            break
        if sweep == max_sweeps:
            break
        for pq in range(3):
            p = 0 if pq < 2 else 1
            q = 1 if pq == 0 else 2
            apq = A[p, q]
            if apq == 0.0:
                continue
            theta = (A[q, q] - A[p, p]) / (2.0 * apq)
            if theta == 0.0:
                t = 1.0
            else:
                t = (1.0 if theta > 0 else -1.0) / (abs(theta) + math.hypot(theta, 1.0))
            c = 1.0 / math.sqrt(t * t + 1.0)
            s = t * c
            # A <- J^T A J, J = identity except J[p,p]=J[q,q]=c, J[p,q]=s, J[q,p]=-s
            for r in range(3):
                arp = A[r, p]
                arq = A[r, q]
                A[r, p] = c * arp - s * arq
                A[r, q] = s * arp + c * arq
            for r in range(3):
                apr = A[p, r]
                aqr = A[q, r]
                A[p, r] = c * apr - s * aqr
                A[q, r] = s * apr + c * aqr
            A[p, q] = 0.0
            A[q, p] = 0.0
    a, b, d = A[0, 0], A[1, 1], A[2, 2]
    if a < b:
        a, b = b, a
    if b < d:
        b, d = d, b
    if a < b:
        a, b = b, a
    k[0] = a
    k[1] = b
    k[2] = d
    return converged


@njit(cache=True)
def analyze_loop(first, second, eps_reg):
    n = first.shape[0]
    G = np.empty((n, 6))
    delta = np.empty(n)
    T = np.empty((n, 4))
    N = np.full((n, 4), np.nan)
    B = np.full((n, 6), np.nan)
    regular = np.zeros(n, dtype=np.bool_)
    A_cramer = np.full((n, 3, 3), np.nan)
    A_solve = np.full((n, 3, 3), np.nan)
    S_ortho = np.full((n, 6), np.nan)
    basis = np.full((n, 3, 4), np.nan)
    k = np.full((n, 3), np.nan)
    converged = np.zeros(n, dtype=np.bool_)
    Gm = np.empty((3, 3))
    Bm = np.empty((3, 3))
    Ri = np.empty((3, 3))
    S = np.empty((3, 3))
    tmp = np.empty((3, 3))
    ii = (0, 0, 0, 1, 1, 2)
    jj = (0, 1, 2, 1, 2, 2)
    for p in range(n):
        fr = first[p]
        _ternary(fr[0], fr[1], fr[2], T[p])
        for a in range(3):
            for b in range(3):
                acc = 0.0
                for c in range(4):
                    acc += fr[a, c] * fr[b, c]
                Gm[a, b] = acc
        for e in range(6):
            G[p, e] = Gm[ii[e], jj[e]]
        delta[p] = _det3(Gm)
        scale = 1.0
        for a in range(3):
            sq = 0.0
            for c in range(4):
                sq += fr[a, c] * fr[a, c]
            scale *= math.sqrt(sq)
        if not delta[p] > eps_reg * scale * scale:
            continue
        regular[p] = True
        tn = 0.0
        for c in range(4):
            tn += T[p, c] * T[p, c]
        tn = math.sqrt(tn)
        for c in range(4):
            N[p, c] = T[p, c] / tn
        for e in range(6):
            acc = 0.0
            for c in range(4):
                acc += second[p, e, c] * N[p, c]
            B[p, e] = -acc
            Bm[ii[e], jj[e]] = -acc
            Bm[jj[e], ii[e]] = -acc
        _cramer(Gm, Bm, A_cramer[p])
        _pivoted_solve(Gm, Bm, A_solve[p])
        _cholesky_inv(Gm, Ri)
        # S = Ri^T Bm Ri
        for a in range(3):
            for b in range(3):
                acc = 0.0
                for c in range(3):
                    acc += Bm[a, c] * Ri[c, b]
                tmp[a, b] = acc
        for a in range(3):
            for b in range(3):
                acc = 0.0
                for c in range(3):
                    acc += Ri[c, a] * tmp[c, b]
                S[a, b] = acc
        for a in range(3):
            for b in range(a + 1, 3):
                m = 0.5 * (S[a, b] + S[b, a])
                S[a, b] = m
                S[b, a] = m
        for e in range(6):
            S_ortho[p, e] = S[ii[e], jj[e]]
        for a in range(3):
            for c in range(4):
                acc = 0.0
                for b in range(3):
                    acc += Ri[b, a] * fr[b, c]
                basis[p, a, c] = acc
        converged[p] = _jacobi(S, k[p], JACOBI_TOL, JACOBI_MAX_SWEEPS)
    return G, delta, T, N, B, regular, A_cramer, A_solve, S_ortho, basis, k, converged


def analyze_numba(first, second, eps_reg):
    return analyze_loop(np.ascontiguousarray(first, dtype=np.float64),
                        np.ascontiguousarray(second, dtype=np.float64), float(eps_reg))


BACKENDS = {"numpy": analyze_numpy, "numba": analyze_numba}


def get_backend(name=None):
    if name is None:
        name = "numba" if USE_NUMBA else "numpy"
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; choose from {sorted(BACKENDS)}") from None
