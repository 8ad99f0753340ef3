"""Pointed pseudo-triangulation complexes, wall-crossing, and stability tools."""

from .geom import (
    Config,
    PSSegment,
    config,
    enumerate_pseudo_straight,
    external_edges,
    is_crossing,
    is_pointed,
    orientation,
    segment_vector,
)
from .complexes import (
    MultiCurve,
    Ppt,
    PptStar,
    SimplicialComplex,
    SupportVector,
    build_complex,
    complex_stats,
    enumerate_ppt_stars,
    enumerate_ppts,
    make_support,
    multicurve_from_support,
)

__all__ = [
    "Config",
    "PSSegment",
    "config",
    "enumerate_pseudo_straight",
    "external_edges",
    "is_crossing",
    "is_pointed",
    "orientation",
    "segment_vector",
    "MultiCurve",
    "Ppt",
    "PptStar",
    "SimplicialComplex",
    "SupportVector",
    "build_complex",
    "complex_stats",
    "enumerate_ppt_stars",
    "enumerate_ppts",
    "make_support",
    "multicurve_from_support",
]
