"""Planar locally finite Cayley graphs from labeling schemes and type vectors."""

__version__ = "0.1.0"

from .scheme import (  # noqa: E402
    INFINITY,
    Dart,
    FacePartition,
    LabelingScheme,
    Presentation,
    Side,
    TypeVector,
    canonical_presentation,
    is_valid_type_vector,
    orbits,
    primitive_vector,
)
from .enumeration import burnside_count, enumerate_schemes, schemes_validating  # noqa: E402
from .geometry import GeometryClass, classify, solve_edge_length  # noqa: E402
from .tiling import Ball, build_ball, euler_characteristic, wp_combinatorial  # noqa: E402
from .word_problem import are_equal, is_trivial, position  # noqa: E402
from .decider import FullPresentation, Verdict, decide_planar, default_oracle, extract_sigma  # noqa: E402
from .render import RenderOptions, render_svg  # noqa: E402

__all__ = [
    "INFINITY", "Dart", "FacePartition", "LabelingScheme", "Presentation", "Side", "TypeVector",
    "canonical_presentation", "is_valid_type_vector", "orbits", "primitive_vector",
    "burnside_count", "enumerate_schemes", "schemes_validating",
    "GeometryClass", "classify", "solve_edge_length",
    "Ball", "build_ball", "euler_characteristic", "wp_combinatorial",
    "are_equal", "is_trivial", "position",
    "FullPresentation", "Verdict", "decide_planar", "default_oracle", "extract_sigma",
    "RenderOptions", "render_svg",
]
