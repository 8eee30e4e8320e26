"""Canonical parameterizations of planar curves.

Arc-length, curvature-length, curvarc-length and the two-parameter
``(c, lambda)`` family of reparameterizations, with discrete curvature,
reconstruction from turning angles and canonical landmark placement.
"""

from .contour import (
    ArcLengthTable,
    InterpolationMode,
    PlanarContour,
    arc_length_table,
    evaluate,
    resample_uniform,
    validate_contour,
)
from .correspondence import (
    CorrespondenceReport,
    LandmarkSet,
    correspondence_error,
    place_landmarks,
    project_to_contour,
    transfer_landmarks,
)
from .errors import (
    CanoparamError,
    CountMismatch,
    DegenerateTangent,
    InconsistentCounts,
    NonFiniteCoordinate,
    ParameterOutOfRange,
    TooFewPoints,
    ZeroTotalWeight,
)
from .invariants import (
    CurvatureProfile,
    MovingFrame,
    TurningAngleSequence,
    closure_defect,
    curvarc_length,
    discrete_curvature,
    moving_frames,
    reconstruct_from_curvature,
    total_curvature_length,
    total_turning,
    turning_angles,
)
from .reparam import (
    ReparamMap,
    TieBreak,
    WeightSpec,
    build_map,
    invert,
    normalize_profile,
    resample_by_map,
    weight_samples,
)

__version__ = "0.1.0"
