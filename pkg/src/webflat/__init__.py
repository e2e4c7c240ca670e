"""Exact dual-web curvature toolkit for degree-3 plane foliations."""

from .errors import (
    BadEmbedding,
    DegenerateParameter,
    DegenerateWeb,
    DegreeExceeded,
    DegreeTooLow,
    DivisionByZero,
    DomainError,
    FieldMismatch,
    InvariantViolated,
    NonHomogeneous,
    NotQuadratic,
    NotSingular,
    NotSquare,
    ParseError,
    SingularPoint,
    ThetaWithoutField,
    UnknownVariable,
    UsageError,
    WebflatError,
    ZeroField,
    ZeroPolynomial,
    ZeroTangentCone,
)
from .field import RATIONALS, FieldScalar, FieldSpec, Rational, field_sqrt, quadratic_field
from .poly import (
    MPoly,
    PolyMatrix,
    RatFn,
    VARIABLES,
    cubic_resultant,
    determinant,
    divides,
    evaluate_float,
    exact_divide,
    poly_gcd,
    render_poly,
    squarefree_part,
)
from .singular import (
    HomogeneousAnalysis,
    SingularityReport,
    TAU_INFINITE,
    classification_field,
    classify_singularity,
    field_roots,
    homogeneous_analysis,
    multiplicity_nu,
    saturate,
    tau,
    verify_classification,
)
from .webs import (
    AffineVectorField,
    CubicWebEquation,
    CurvatureForm,
    EtaWebSpec,
    HomogeneousVectorField,
    ProjectivePoint,
    dual_curvature,
    dual_line,
    eta_criterion,
    gauss_map_point,
    holomorphic_along,
    homogenize,
    inflection_divisor,
    is_flat,
    legendre_transform,
    tangent_cone,
    web_curvature,
    web_discriminant,
)
from .cli import main, parse_field, parse_poly

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
