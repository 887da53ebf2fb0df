"""Second-order forward-mode differentiation.

A :class:`Jet` carries a value together with its gradient and Hessian with
respect to ``n`` independent variables (3 for parametric hypersurfaces,
4 for implicit equations).  The Hessian is stored as its upper triangle in
row-major order, so for three variables ``hess`` is
``(uu, uv, uw, vv, vw, ww)`` and each mixed partial exists exactly once.

Components may be Python floats or numpy arrays of a common shape; the
latter evaluates a whole batch of points in one pass.
"""
import numpy as np

from .errors import DomainError

# smallest |x| accepted as a divisor
DIV_GUARD = 1e-300


def hess_index(nvars):
    """List of (i, j), i <= j, in storage order."""
    return [(i, j) for i in range(nvars) for j in range(i, nvars)]


def _any(mask):
    return bool(np.any(mask))


class Jet:
    __slots__ = ("val", "grad", "hess")

    def __init__(self, val, grad, hess):
        self.val = val
        self.grad = tuple(grad)
        self.hess = tuple(hess)
        n = len(self.grad)
        if len(self.hess) != n * (n + 1) // 2:
            raise ValueError(f"hess must have {n * (n + 1) // 2} entries for {n} variables")

    @property
    def nvars(self):
        return len(self.grad)

    def hessian(self):
        """Full symmetric Hessian as a nested list (or stacked array)."""
        n = self.nvars
        idx = {ij: k for k, ij in enumerate(hess_index(n))}
        return [[self.hess[idx[min(i, j), max(i, j)]] for j in range(n)] for i in range(n)]

    def __repr__(self):
        return f"Jet(val={self.val!r}, grad={self.grad!r}, hess={self.hess!r})"

    # operator sugar; the named functions below are the reference
    def __add__(self, other):
        return jet_add(self, _lift(other, self.nvars))

    __radd__ = __add__

    def __sub__(self, other):
        return jet_sub(self, _lift(other, self.nvars))

    def __rsub__(self, other):
        return jet_sub(_lift(other, self.nvars), self)

    def __mul__(self, other):
        return jet_mul(self, _lift(other, self.nvars))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return jet_div(self, _lift(other, self.nvars))

    def __rtruediv__(self, other):
        return jet_div(_lift(other, self.nvars), self)

    def __neg__(self):
        return jet_neg(self)


def _lift(x, nvars):
    return x if isinstance(x, Jet) else jet_const(x, nvars)


def jet_const(value, nvars=3):
    zeros = (0.0,) * nvars
    return Jet(value, zeros, (0.0,) * (nvars * (nvars + 1) // 2))


def jet_var(index, value, nvars=3):
    """Seed the ``index``-th independent variable at ``value``."""
    if not (isinstance(index, (int, np.integer)) and 0 <= index < nvars):
        raise ValueError(f"variable index must be in 0..{nvars - 1}, got {index!r}")
    grad = [0.0] * nvars
    grad[index] = 1.0
    return Jet(value, grad, (0.0,) * (nvars * (nvars + 1) // 2))


def jet_add(a, b):
    return Jet(
        a.val + b.val,
        [x + y for x, y in zip(a.grad, b.grad)],
        [x + y for x, y in zip(a.hess, b.hess)],
    )


def jet_sub(a, b):
    return Jet(
        a.val - b.val,
        [x - y for x, y in zip(a.grad, b.grad)],
        [x - y for x, y in zip(a.hess, b.hess)],
    )


def jet_neg(a):
    return Jet(-a.val, [-x for x in a.grad], [-x for x in a.hess])


def jet_mul(a, b):
    """Leibniz rule to second order."""
    ga, gb = a.grad, b.grad
    hess = [
        a.val * hb + b.val * ha + ga[i] * gb[j] + ga[j] * gb[i]
        for (i, j), ha, hb in zip(hess_index(a.nvars), a.hess, b.hess)
    ]
    return Jet(a.val * b.val, [a.val * y + b.val * x for x, y in zip(ga, gb)], hess)


def jet_chain(f_val, f_d1, f_d2, a):
    """Compose an outer scalar function with ``a``.

    ``f_val``, ``f_d1``, ``f_d2`` are the outer function's value, first and
    second derivative evaluated at ``a.val``.
    """
    g = a.grad
    hess = [f_d1 * h + f_d2 * g[i] * g[j] for (i, j), h in zip(hess_index(a.nvars), a.hess)]
    return Jet(f_val, [f_d1 * x for x in g], hess)


def reciprocal(x):
    """1/x with the division guard shared by scalar and jet evaluation."""
    if _any(np.abs(x) < DIV_GUARD):
        raise DomainError("division by (near) zero")
    return 1.0 / x


def jet_reciprocal(a):
    r = reciprocal(a.val)
    r2 = r * r
    return jet_chain(r, -r2, 2.0 * r2 * r, a)


def jet_div(a, b):
    return jet_mul(a, jet_reciprocal(b))


def jet_sin(a):
    s, c = np.sin(a.val), np.cos(a.val)
    return jet_chain(s, c, -s, a)


def jet_cos(a):
    s, c = np.sin(a.val), np.cos(a.val)
    return jet_chain(c, -s, -c, a)


def jet_tan(a):
    c = np.cos(a.val)
    sec2 = reciprocal(c * c)
    t = np.tan(a.val)
    return jet_chain(t, sec2, 2.0 * sec2 * t, a)


def jet_exp(a):
    e = np.exp(a.val)
    return jet_chain(e, e, e, a)


def jet_log(a):
    if _any(a.val <= 0):
        raise DomainError("log of a non-positive number")
    r = 1.0 / a.val
    return jet_chain(np.log(a.val), r, -r * r, a)


def jet_sqrt(a):
    if _any(a.val < 0):
        raise DomainError("sqrt of a negative number")
    if _any(a.val == 0):
        raise DomainError("sqrt is not differentiable at 0")
    s = np.sqrt(a.val)
    d1 = 0.5 / s
    return jet_chain(s, d1, -0.5 * d1 / a.val, a)
