"""Dupin-indicatrix classification of a point from its principal curvatures.

The indicatrix k1 x^2 + k2 y^2 + k3 z^2 = +-1 is determined up to the
global sign by how many curvatures are positive, negative and zero, so
the class is a function of those three counts alone.

``PLANAR_PAIR`` (exactly two zero curvatures, indicatrix k z^2 = +-1, a pair
of parallel planes) is our own name; the other labels follow the usual
terminology for the ellipsoidal / hyperboloidal / cylindrical cases.
"""
import enum
from dataclasses import dataclass


class PointType(enum.Enum):
    ELLIPSOIDAL = "ellipsoidal"
    HYPERBOLOIDAL = "hyperboloidal"
    ELLIPTIC_CYLINDER = "elliptic_cylinder"
    HYPERBOLIC_CYLINDER = "hyperbolic_cylinder"
    PLANAR_PAIR = "planar_pair"
    FLAT = "flat"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class PointClass:
    kind: PointType
    n_pos: int
    n_neg: int
    n_zero: int

    @property
    def name(self):
        return self.kind.value

    @property
    def sheets(self):
        """Sheets of the hyperboloidal indicatrix k.x = +1 (None otherwise)."""
        if self.kind is not PointType.HYPERBOLOIDAL:
            return None
        return 1 if self.n_pos == 2 else 2

    def __str__(self):
        return self.kind.value


def sign_counts(k, eps_k):
    n_pos = sum(1 for x in k if x > eps_k)
    n_neg = sum(1 for x in k if x < -eps_k)
    return n_pos, n_neg, len(k) - n_pos - n_neg


def type_from_counts(n_pos, n_neg, n_zero):
    if n_zero == 3:
        return PointType.FLAT
    if n_zero == 2:
        return PointType.PLANAR_PAIR
    if n_zero == 1:
        return PointType.ELLIPTIC_CYLINDER if n_pos != 1 else PointType.HYPERBOLIC_CYLINDER
    if n_pos == 3 or n_neg == 3:
        return PointType.ELLIPSOIDAL
    return PointType.HYPERBOLOIDAL


def classify_point(k, eps_k=1e-8):
    """Classify a point from its three principal curvatures.

    A curvature counts as zero when ``|k_i| <= eps_k``.
    """
    if not eps_k > 0:
        raise ValueError(f"eps_k must be positive, got {eps_k!r}")
    if len(k) != 3:
        raise ValueError("expected three principal curvatures")
    counts = sign_counts(k, eps_k)
    return PointClass(type_from_counts(*counts), *counts)
