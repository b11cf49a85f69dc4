"""Gromov-Hausdorff distances and certified shallow-network approximation
on finite metric spaces."""

from .errors import (
    ActivationNotMultiplicative,
    Asymmetric,
    DomainMismatch,
    DuplicatePoints,
    FitFailed,
    GhdenseError,
    InputFormatError,
    MetricError,
    NegativeEntry,
    NetExhausted,
    NonzeroDiagonal,
    NotSquare,
    SingularSystem,
    SpaceMismatch,
    TooLarge,
    TriangleViolation,
)
from .gh0 import (
    Gh0Certificate,
    Gh0Result,
    gh0_certificate,
    gh0_distance,
    gh0_upper_bound,
    transfer_function,
)
from .isometry import (
    GhResult,
    IsometryQuality,
    PointMap,
    approximate_inverse,
    codefect,
    distortion,
    gh_distance,
    gh_upper_bound,
    quality,
)
from .measures import (
    FunctionFamily,
    GroupedMeasure,
    SignedMeasure,
    discriminatory_margin,
    pushforward,
    separates_check,
)
from .networks import (
    Activation,
    ShallowNetwork,
    Unit,
    check_multiplicative,
    check_sigmoidal,
    constant_network,
    evaluate,
    fit_least_squares,
    interpolate_exact,
    product_network,
)
from .pipeline import (
    BudgetRecord,
    DensityCertificate,
    PipelineOptions,
    PipelineResult,
    StudyRow,
    convergence_study,
    run_pipeline,
)
from .spaces import (
    FiniteMetricSpace,
    FunctionOnSpace,
    PointCloud,
    epsilon_net,
    from_point_cloud,
    oscillation,
    sup_norm_distance,
    validate_metric,
)

__version__ = "0.1.0"

__all__ = [
    "Activation",
    "ActivationNotMultiplicative",
    "Asymmetric",
    "BudgetRecord",
    "DensityCertificate",
    "DomainMismatch",
    "DuplicatePoints",
    "FiniteMetricSpace",
    "FitFailed",
    "FunctionFamily",
    "FunctionOnSpace",
    "Gh0Certificate",
    "Gh0Result",
    "GhResult",
    "GhdenseError",
    "GroupedMeasure",
    "InputFormatError",
    "IsometryQuality",
    "MetricError",
    "NegativeEntry",
    "NetExhausted",
    "NonzeroDiagonal",
    "NotSquare",
    "PipelineOptions",
    "PipelineResult",
    "PointCloud",
    "PointMap",
    "ShallowNetwork",
    "SignedMeasure",
    "SingularSystem",
    "SpaceMismatch",
    "StudyRow",
    "TooLarge",
    "TriangleViolation",
    "Unit",
    "approximate_inverse",
    "check_multiplicative",
    "check_sigmoidal",
    "codefect",
    "constant_network",
    "convergence_study",
    "discriminatory_margin",
    "distortion",
    "epsilon_net",
    "evaluate",
    "fit_least_squares",
    "from_point_cloud",
    "gh0_certificate",
    "gh0_distance",
    "gh0_upper_bound",
    "gh_distance",
    "gh_upper_bound",
    "interpolate_exact",
    "oscillation",
    "product_network",
    "pushforward",
    "quality",
    "run_pipeline",
    "separates_check",
    "sup_norm_distance",
    "transfer_function",
    "validate_metric",
]
