"""Weingarten map, curvatures and point classification of hypersurfaces in E^4."""

__version__ = "0.1.0"

from .classify import PointClass, PointType, classify_point
from .errors import (
    DependentTriple,
    DomainError,
    FrameNotOrthogonal,
    HypershapeError,
    NoConvergence,
    NotRegular,
    ParseError,
    ZeroGradient,
    ZeroPrincipalCurvature,
)
from .expr import eval_jet, eval_scalar, parse
from .geometry import FrameData, ParametricSurface, frame_at, implicit_normal, is_orthogonal_frame
from .vec4 import Sym3, det4, dot, gram_det, norm, ternary
from .weingarten import (
    ShapeResult,
    cayley_hamilton_residual,
    curvatures,
    fundamental_form,
    principal_curvatures,
    shape_at,
    shape_operator_general,
    shape_operator_orthogonal,
    shape_operator_orthonormal,
    verify_ternary_identities,
)
