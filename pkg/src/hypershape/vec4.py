"""Linear algebra in E^4: inner product, ternary (cross) product, determinants.

Vectors are numpy arrays whose last axis has length 4, so every function
also works on stacks of vectors of shape ``(..., 4)``.  Only ``+``, ``-`` and
``*`` are used, so integer-valued inputs give exact integer results.
"""
import numpy as np

E1, E2, E3, E4 = (np.eye(4)[i] for i in range(4))
BASIS = (E1, E2, E3, E4)


def vec4(*components):
    """Build a Vec4 from four numbers (or one length-4 sequence)."""
    if len(components) == 1:
        components = components[0]
    out = np.asarray(components, dtype=float)
    if out.shape[-1:] != (4,):
        raise ValueError(f"expected 4 components, got shape {out.shape}")
    return out


def dot(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return x[..., 0] * y[..., 0] + x[..., 1] * y[..., 1] + x[..., 2] * y[..., 2] + x[..., 3] * y[..., 3]


def norm(x):
    return np.sqrt(dot(x, x))


def _pair_minors(y, z):
    # m[i, j] = y_i z_j - y_j z_i for i < j
    return {
        (i, j): y[..., i] * z[..., j] - y[..., j] * z[..., i]
        for i in range(4)
        for j in range(i + 1, 4)
    }


def ternary(x, y, z):
    """Ternary product x (x) y (x) z.

    Cofactor expansion of the formal determinant whose first row is the
    basis (e1, e2, e3, e4) and whose remaining rows are x, y, z.  The six
    2x2 minors of (y, z) are computed once and shared by all components.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    m = _pair_minors(y, z)
    x1, x2, x3, x4 = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    c1 = x2 * m[2, 3] - x3 * m[1, 3] + x4 * m[1, 2]
    c2 = -(x1 * m[2, 3] - x3 * m[0, 3] + x4 * m[0, 2])
    c3 = x1 * m[1, 3] - x2 * m[0, 3] + x4 * m[0, 1]
    c4 = -(x1 * m[1, 2] - x2 * m[0, 2] + x3 * m[0, 1])
    return np.stack(np.broadcast_arrays(c1, c2, c3, c4), axis=-1)


def det4(x, y, z, t):
    """Determinant of the 4x4 matrix with rows x, y, z, t.

    Computed by Laplace expansion over the 2x2 minors of rows (x, y) and
    (z, t), which keeps it independent of :func:`ternary`.  With the
    orientation fixed by ``ternary(e1, e2, e3) = -e4`` the two are related by
    ``dot(ternary(x, y, z), t) == det4(t, x, y, z) == -det4(x, y, z, t)``.
    """
    x, y, z, t = (np.asarray(a, dtype=float) for a in (x, y, z, t))
    a = _pair_minors(x, y)
    b = _pair_minors(z, t)
    return (
        a[0, 1] * b[2, 3]
        - a[0, 2] * b[1, 3]
        + a[0, 3] * b[1, 2]
        + a[1, 2] * b[0, 3]
        - a[1, 3] * b[0, 2]
        + a[2, 3] * b[0, 1]
    )


def det3(m):
    """Determinant of a (..., 3, 3) array by the rule of Sarrus."""
    m = np.asarray(m, dtype=float)
    return (
        m[..., 0, 0] * (m[..., 1, 1] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 1])
        - m[..., 0, 1] * (m[..., 1, 0] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 0])
        + m[..., 0, 2] * (m[..., 1, 0] * m[..., 2, 1] - m[..., 1, 1] * m[..., 2, 0])
    )


def gram(x, y, z):
    """Gram matrix of pairwise inner products, shape (..., 3, 3)."""
    rows = (x, y, z)
    g = [[dot(a, b) for b in rows] for a in rows]
    return np.stack([np.stack(np.broadcast_arrays(*r), axis=-1) for r in g], axis=-2)


def gram_det(x, y, z):
    """det of the Gram matrix; equals ``norm(ternary(x, y, z)) ** 2``."""
    return det3(gram(x, y, z))


SYM3_INDEX = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))
# position in the packed 6-vector of entry (i, j); symmetric by construction
_PACK = np.array([[0, 1, 2], [1, 3, 4], [2, 4, 5]])


def sym3_unpack(packed):
    """(..., 6) packed upper triangle (11, 12, 13, 22, 23, 33) -> (..., 3, 3)."""
    packed = np.asarray(packed, dtype=float)
    return packed[..., _PACK]


def sym3_pack(m):
    """Upper triangle of a (..., 3, 3) array; the lower triangle is ignored."""
    m = np.asarray(m, dtype=float)
    return np.stack([m[..., i, j] for i, j in SYM3_INDEX], axis=-1)


class Sym3:
    """Symmetric 3x3 matrix stored as its six independent entries.

    ``s[i, j]`` and ``s[j, i]`` read the same storage cell, so symmetry is
    exact rather than up to a tolerance.
    """

    __slots__ = ("_data",)

    def __init__(self, entries):
        data = np.array(entries, dtype=float)
        if data.shape == (3, 3):
            data = sym3_pack(data)
        if data.shape != (6,):
            raise ValueError(f"Sym3 needs 6 packed entries or a 3x3 array, got shape {data.shape}")
        data.setflags(write=False)
        self._data = data

    @classmethod
    def from_matrix(cls, m):
        return cls(sym3_pack(m))

    @property
    def packed(self):
        return self._data

    @property
    def matrix(self):
        return sym3_unpack(self._data)

    def __getitem__(self, ij):
        i, j = ij
        return float(self._data[_PACK[i, j]])

    def __array__(self, dtype=None, copy=None):
        m = self.matrix
        return m if dtype is None else m.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, Sym3):
            return NotImplemented
        return bool(np.array_equal(self._data, other._data))

    def __hash__(self):
        return hash(self._data.tobytes())

    def __repr__(self):
        return "Sym3(" + ", ".join(repr(float(v)) for v in self._data) + ")"
