"""Exact divisor, function-field and PGL(2) arithmetic on elliptic curves over
F_p, with symbolic ruled surfaces, conic bundles and a maximality classifier."""

from .classify import MaxClass, classify_max, validate_max_class
from .config import ChainConfig, KleinSearchConfig, SamplingConfig
from .divisor import Divisor, group_sum, is_linearly_equivalent, is_principal, translate_divisor
from .errors import DomainError
from .field_curve import INFINITY, CurvePoint, EllipticCurve, enumerate_points, find_torsion, point_add
from .funcfield import (
    FunctionElement,
    SquareClass,
    divisor_of,
    ff_arith,
    is_square_class,
    principality_witness,
    valuation_at,
)
from .pgl2 import (
    PGLMat,
    det_class,
    fixed_locus,
    involution_normal_form,
    involutions_conjugate,
    klein_four_extend,
    normalizer_decompose,
    pgl_mul,
    sigma,
)
from .surfaces import (
    AutCGroup,
    ConicBundleModel,
    NumClass,
    SurfaceModel,
    aut_c_conic,
    aut_c_ruled,
    elementary_transform_chain,
    is_exceptional,
    klein_four_certificate,
    num_intersect,
    segre_invariant,
    swap_involution,
)

__version__ = "0.1.0"

__all__ = [
    "AutCGroup",
    "ChainConfig",
    "ConicBundleModel",
    "CurvePoint",
    "Divisor",
    "DomainError",
    "EllipticCurve",
    "FunctionElement",
    "INFINITY",
    "KleinSearchConfig",
    "MaxClass",
    "NumClass",
    "PGLMat",
    "SamplingConfig",
    "SquareClass",
    "SurfaceModel",
    "aut_c_conic",
    "aut_c_ruled",
    "classify_max",
    "det_class",
    "divisor_of",
    "elementary_transform_chain",
    "enumerate_points",
    "ff_arith",
    "find_torsion",
    "fixed_locus",
    "group_sum",
    "involution_normal_form",
    "involutions_conjugate",
    "is_exceptional",
    "is_linearly_equivalent",
    "is_principal",
    "is_square_class",
    "klein_four_certificate",
    "klein_four_extend",
    "normalizer_decompose",
    "num_intersect",
    "pgl_mul",
    "point_add",
    "principality_witness",
    "segre_invariant",
    "sigma",
    "swap_involution",
    "translate_divisor",
    "validate_max_class",
    "valuation_at",
]
