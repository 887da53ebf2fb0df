"""Parametric hypersurfaces: frames, normals and coefficient matrices."""
import math
from dataclasses import dataclass

import numpy as np

from . import jet as J
from .errors import NotRegular, OutsideDomainBox, ZeroGradient
from .expr import IMPLICIT, PARAMETRIC, eval_jet, parse
from .vec4 import Sym3, det3, dot, gram, norm, sym3_pack, ternary

PARAMS = ("u", "v", "w")
COORDS = ("x", "y", "z", "t")
# order of the second partials, matching the packed Sym3 layout
SECOND_PARTIALS = ("uu", "uv", "uw", "vv", "vw", "ww")

EPS_REG = 1e-12
UNBOUNDED = ((-math.inf, math.inf),) * 3


@dataclass(frozen=True)
class ParametricSurface:
    """phi(u, v, w) = (x, y, z, t) over an inclusive box of parameters."""

    coords: tuple
    domain: tuple = UNBOUNDED
    name: str = ""

    def __post_init__(self):
        if len(self.coords) != 4:
            raise ValueError("a hypersurface in E^4 needs exactly four coordinate functions")
        coords = tuple(parse(c, PARAMETRIC) if isinstance(c, str) else c for c in self.coords)
        object.__setattr__(self, "coords", coords)
        domain = tuple((float(lo), float(hi)) for lo, hi in self.domain)
        if len(domain) != 3 or any(lo > hi for lo, hi in domain):
            raise ValueError(f"domain must be three [lo, hi] pairs with lo <= hi, got {self.domain!r}")
        object.__setattr__(self, "domain", domain)

    def contains(self, p):
        return all(lo <= x <= hi for x, (lo, hi) in zip(p, self.domain))


@dataclass(frozen=True)
class FrameData:
    point: tuple
    position: np.ndarray
    first: np.ndarray  # rows phi_u, phi_v, phi_w
    second: np.ndarray  # rows in SECOND_PARTIALS order
    G: Sym3
    delta: float
    T: np.ndarray  # phi_u (x) phi_v (x) phi_w, unnormalised
    N: np.ndarray
    B: Sym3

    phi_u = property(lambda self: self.first[0])
    phi_v = property(lambda self: self.first[1])
    phi_w = property(lambda self: self.first[2])

    def partial2(self, name):
        return self.second[SECOND_PARTIALS.index(name)]


def evaluate_derivatives(surface, points):
    """Position, first and second partials at a batch of parameter points.

    ``points`` has shape (n, 3).  Returns ``(position (n, 4), first (n, 3, 4),
    second (n, 6, 4))``; one jet evaluation per coordinate function.
    """
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    n = len(points)
    env = {name: J.jet_var(i, points[:, i]) for i, name in enumerate(PARAMS)}
    position = np.empty((n, 4))
    first = np.empty((n, 3, 4))
    second = np.empty((n, 6, 4))
    for c, e in enumerate(surface.coords):
        jt = eval_jet(e, env, nvars=3)
        position[:, c] = jt.val
        for i in range(3):
            first[:, i, c] = jt.grad[i]
        for k in range(6):
            second[:, k, c] = jt.hess[k]
    return position, first, second


def frame_quantities(first, second):
    """Vectorised frame algebra on stacks of partials.

    Returns ``(G packed (n, 6), delta, T, N, B packed (n, 6))``.  N is NaN
    where T vanishes.
    """
    fu, fv, fw = first[..., 0, :], first[..., 1, :], first[..., 2, :]
    T = ternary(fu, fv, fw)
    g = gram(fu, fv, fw)
    delta = det3(g)
    tn = norm(T)
    with np.errstate(invalid="ignore", divide="ignore"):
        N = T / tn[..., None]
    B = -dot(second, N[..., None, :])
    return sym3_pack(g), delta, T, N, B


def regularity_threshold(first, eps_reg=EPS_REG):
    scale = norm(first[..., 0, :]) * norm(first[..., 1, :]) * norm(first[..., 2, :])
    return eps_reg * scale * scale


def frame_at(surface, p, eps_reg=EPS_REG):
    """Evaluate everything needed for the Weingarten map at one point.

    Raises :class:`NotRegular` when the Gram determinant is at or below
    ``eps_reg * (|phi_u| |phi_v| |phi_w|)^2``.
    """
    p = tuple(float(x) for x in p)
    if not surface.contains(p):
        raise OutsideDomainBox(f"point {p} lies outside the domain box {surface.domain}")
    position, first, second = evaluate_derivatives(surface, [p])
    g, delta, T, N, B = frame_quantities(first, second)
    delta = float(delta[0])
    if not delta > regularity_threshold(first[0], eps_reg):
        raise NotRegular(f"frame is degenerate at {p}: Gram determinant {delta:.3e}")
    return FrameData(
        point=p,
        position=position[0],
        first=first[0],
        second=second[0],
        G=Sym3(g[0]),
        delta=delta,
        T=T[0],
        N=N[0],
        B=Sym3(B[0]),
    )


def is_orthogonal_frame(f, tol=1e-12):
    g = f.G
    return all(
        abs(g[i, j]) <= tol * math.sqrt(g[i, i] * g[j, j])
        for i, j in ((0, 1), (0, 2), (1, 2))
    )


def implicit_normal(f, point):
    """Unit normal grad(f)/|grad(f)| of the level set of ``f`` through ``point``."""
    if isinstance(f, str):
        f = parse(f, IMPLICIT)
    point = np.asarray(point, dtype=float)
    env = {name: J.jet_var(i, float(point[i]), nvars=4) for i, name in enumerate(COORDS)}
    jt = eval_jet(f, env, nvars=4)
    grad = np.array([float(g) for g in jt.grad])
    length = float(norm(grad))
    if length <= 1e-12:
        raise ZeroGradient(f"gradient vanishes at {tuple(point)}")
    return grad / length
