"""Exact computations in the Farey graph, the curve complex of the torus."""

from .cover import (
    ConeSector,
    CoverReport,
    Direction,
    SafeCone,
    build_cover,
    cone_contains,
    find_safe_cone,
    verify_cover,
)
from .mapping import (
    Kind,
    MappingClass,
    act,
    classify,
    eigen_directions,
    orbit_growth,
)
from .metric import (
    BallReport,
    GeodesicWitness,
    Window,
    ball,
    distance,
    geodesic_witness,
    neighbor_family,
    oracle_distance_bfs,
)
from .slope import (
    INFINITY,
    ZERO,
    CFExpansion,
    Slope,
    are_adjacent,
    canonicalize,
    continued_fraction,
    intersection_number,
    mediant,
)

__all__ = [
    "INFINITY", "ZERO", "Slope", "CFExpansion", "canonicalize", "intersection_number",
    "are_adjacent", "mediant", "continued_fraction",
    "Window", "BallReport", "GeodesicWitness", "distance", "geodesic_witness",
    "neighbor_family", "ball", "oracle_distance_bfs",
    "Direction", "ConeSector", "CoverReport", "SafeCone", "cone_contains", "build_cover",
    "verify_cover", "find_safe_cone",
    "Kind", "MappingClass", "act", "classify", "orbit_growth", "eigen_directions",
]
