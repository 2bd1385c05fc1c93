"""Interpolating uniform cubic B-spline curves and their maximum curvature."""

__version__ = "0.1.0"

from .curvature import (
    CurvatureReport,
    FrenetFrame,
    curvature_at,
    frenet_frame,
    max_curvature,
)
from .errors import CurvelabError, DegenerateCurve
from .spline import (
    ControlPolygon,
    CubicSegment,
    Kind,
    PointSet,
    SplineCurve,
    beta,
    build_spline,
    fit,
    solve_periodic,
    solve_relaxed,
)

__all__ = [
    "ControlPolygon",
    "CubicSegment",
    "CurvatureReport",
    "CurvelabError",
    "DegenerateCurve",
    "FrenetFrame",
    "Kind",
    "PointSet",
    "SplineCurve",
    "beta",
    "build_spline",
    "curvature_at",
    "fit",
    "frenet_frame",
    "max_curvature",
    "solve_periodic",
    "solve_relaxed",
]
