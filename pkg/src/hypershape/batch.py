"""Evaluate a surface on many parameter points at once."""
from dataclasses import dataclass

import numpy as np

from .classify import classify_point
from .errors import HypershapeError
from .geometry import EPS_REG, FrameData, evaluate_derivatives
from .kernels import get_backend
from .vec4 import Sym3, det3

OK = "ok"
SINGULAR = "singular"
DOMAIN_ERROR = "domain_error"


@dataclass
class BatchAnalysis:
    points: np.ndarray
    position: np.ndarray
    first: np.ndarray
    second: np.ndarray
    G: np.ndarray
    delta: np.ndarray
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    regular: np.ndarray
    A_cramer: np.ndarray
    A_solve: np.ndarray
    S_ortho: np.ndarray
    basis: np.ndarray
    k: np.ndarray
    converged: np.ndarray
    status: list

    def __len__(self):
        return len(self.points)

    @property
    def K(self):
        return det3(self.A_cramer)

    @property
    def H(self):
        return np.trace(self.A_cramer, axis1=-2, axis2=-1) / 3.0

    def frame(self, i):
        """FrameData for row ``i`` (which must be regular)."""
        return FrameData(
            point=tuple(float(x) for x in self.points[i]),
            position=self.position[i],
            first=self.first[i],
            second=self.second[i],
            G=Sym3(self.G[i]),
            delta=float(self.delta[i]),
            T=self.T[i],
            N=self.N[i],
            B=Sym3(self.B[i]),
        )

    def point_class(self, i, eps_k=1e-8):
        k = self.k[i]
        return classify_point(k, eps_k * max(1.0, float(np.max(np.abs(k)))))


def _derivatives_pointwise(surface, points):
    n = len(points)
    position = np.full((n, 4), np.nan)
    first = np.full((n, 3, 4), np.nan)
    second = np.full((n, 6, 4), np.nan)
    ok = np.ones(n, dtype=bool)
    for i, p in enumerate(points):
        try:
            x, d1, d2 = evaluate_derivatives(surface, [p])
        except HypershapeError:
            ok[i] = False
            continue
        position[i], first[i], second[i] = x[0], d1[0], d2[0]
    return position, first, second, ok


def analyze_points(surface, points, eps_reg=EPS_REG, backend=None):
    """Run frame and Weingarten computations on an (n, 3) array of points.

    Points where a coordinate function leaves its domain get status
    ``domain_error``; degenerate frames get ``singular``.
    """
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    try:
        position, first, second = evaluate_derivatives(surface, points)
        evaluated = np.ones(len(points), dtype=bool)
    except HypershapeError:
        position, first, second, evaluated = _derivatives_pointwise(surface, points)
    safe_first = np.where(evaluated[:, None, None], first, 0.0)
    safe_second = np.where(evaluated[:, None, None], second, 0.0)
    out = get_backend(backend)(safe_first, safe_second, eps_reg)
    regular = out[5] & evaluated
    status = [OK if r else (SINGULAR if e else DOMAIN_ERROR) for r, e in zip(regular, evaluated)]
    fields = list(out)
    fields[5] = regular
    return BatchAnalysis(points, position, first, second, *fields, status=status)


def grid_points(domain, samples):
    """Inclusive uniform lattice, w varying fastest, then v, then u."""
    axes = []
    for (lo, hi), n in zip(domain, samples):
        n = int(n)
        if n < 1:
            raise ValueError("samples must be positive")
        axes.append(np.array([lo]) if n == 1 else np.linspace(lo, hi, n))
    U, V, W = np.meshgrid(*axes, indexing="ij")
    return np.stack([U.ravel(), V.ravel(), W.ravel()], axis=-1)
