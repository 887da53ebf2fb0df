"""Named test hypersurfaces used by the test-suite, benchmarks and docs."""
import math

from .geometry import ParametricSurface

_CATALOG = {
    # xy = 1, curved in one direction only
    "example1": (("u", "1/u", "v", "w"), ((0.5, 2.0), (-1.0, 1.0), (-1.0, 1.0)), "x*y"),
    # unit hypersphere; the frame degenerates where sin(u) sin(w) = 0
    "hypersphere": (
        ("sin(u)*cos(v)*sin(w)", "sin(u)*sin(v)*sin(w)", "cos(u)*sin(w)", "cos(w)"),
        ((0.3, 2.8), (0.3, 2.8), (0.3, 2.8)),
        "x^2 + y^2 + z^2 + t^2",
    ),
    "flat_slab": (("u", "v", "w", "0"), ((-1.0, 1.0),) * 3, None),
    "sheared_slab": (("u", "u + v", "w", "0"), ((-1.0, 1.0),) * 3, None),
    # S^2 x R
    "cylinder": (
        ("cos(u)", "sin(u)*cos(v)", "sin(u)*sin(v)", "w"),
        ((0.3, 2.8), (0.0, 2 * math.pi), (-1.0, 1.0)),
        None,
    ),
    # graph with Hessian of signature (+, +, -) everywhere
    "saddle_quartic": (
        ("u", "v", "w", "(u^2 + v^2 - w^2)/2 + u^4/4"),
        ((-1.0, 1.0),) * 3,
        None,
    ),
    # graph t = uv: Hessian signature (+, -, 0)
    "product_saddle": (("u", "v", "w", "u*v"), ((-1.0, 1.0),) * 3, None),
    # non-orthogonal frame wherever v != 0
    "nonorthogonal": (("u", "u + v^2", "v", "w"), ((-1.0, 1.0),) * 3, None),
    # triaxial ellipsoid: all principal curvatures non-zero, frame not orthogonal
    "ellipsoid": (
        ("2*sin(u)*cos(v)*sin(w)", "1.5*sin(u)*sin(v)*sin(w)", "cos(u)*sin(w)", "0.75*cos(w)"),
        ((0.3, 2.8), (0.3, 2.8), (0.3, 2.8)),
        "x^2/4 + y^2/2.25 + z^2 + t^2/0.5625",
    ),
    "bumpy_graph": (
        ("u", "v", "w", "sin(u)*cos(v) + w^2/2 + u*w/3 + exp(v)/5"),
        ((-1.0, 1.0),) * 3,
        None,
    ),
}

NAMES = tuple(_CATALOG)


def get(name):
    coords, domain, _ = _CATALOG[name]
    return ParametricSurface(coords, domain, name)


def implicit_equation(name):
    """Implicit equation f(x, y, z, t) whose level set contains the surface, if known."""
    return _CATALOG[name][2]


def spec_dict(name, samples=(5, 5, 5)):
    """JSON-ready surface specification for the CLI."""
    coords, domain, implicit = _CATALOG[name]
    spec = {
        "surface": dict(zip("xyzt", coords)),
        "domain": {p: list(d) for p, d in zip("uvw", domain)},
        "samples": list(samples),
    }
    if implicit:
        spec["implicit"] = implicit
    return spec
