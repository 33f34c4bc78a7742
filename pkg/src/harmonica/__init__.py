"""Exact projective geometry engine for harmonic pencil configurations.

The package provides a homogeneous-coordinate kernel over exact
rationals (with an optional tolerance-based float backend), harmonic
pencil theorem checks on triangles and quadrilaterals, pseudo-concurrency
and pseudo-collinearity reductions for n-gons, Euclidean angle-bisector
verifications, seeded configuration generators, a small scene language,
and a command line front end with SVG / TikZ rendering.
"""

from .core import (
    EXACT,
    CoincidentLines,
    CoincidentPoints,
    DegenerateInput,
    ExactBackend,
    FloatBackend,
    GeometryError,
    Line,
    NotCollinear,
    NotConcurrent,
    Point,
    PointAtInfinity,
    SegmentRatio,
    TooFewDistinct,
    UndefinedRatio,
    collinear,
    concurrent,
    cross_ratio_lines,
    cross_ratio_points,
    dualize,
    float_backend,
    fourth_harmonic_line,
    harmonic_conjugate,
    is_harmonic_pencil,
    is_harmonic_points,
    join,
    meet,
    signed_area,
    signed_ratio,
)

__all__ = [
    "EXACT",
    "CoincidentLines",
    "CoincidentPoints",
    "DegenerateInput",
    "ExactBackend",
    "FloatBackend",
    "GeometryError",
    "Line",
    "NotCollinear",
    "NotConcurrent",
    "Point",
    "PointAtInfinity",
    "SegmentRatio",
    "TooFewDistinct",
    "UndefinedRatio",
    "collinear",
    "concurrent",
    "cross_ratio_lines",
    "cross_ratio_points",
    "dualize",
    "float_backend",
    "fourth_harmonic_line",
    "harmonic_conjugate",
    "is_harmonic_pencil",
    "is_harmonic_points",
    "join",
    "meet",
    "signed_area",
    "signed_ratio",
]

__version__ = "0.1.0"
