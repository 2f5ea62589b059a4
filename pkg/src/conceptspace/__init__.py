"""Geometric knowledge representation with fuzzy star-shaped concepts.

Concepts live in a space of quality dimensions grouped into domains. Each
concept is a union of axis-parallel cuboids with a common point, softened
into a fuzzy set by exponential distance decay under per-concept salience
weights. The package provides the point-level metric, concept combination
operations (intersection, union, projection, cut), relations (betweenness,
similarity, subsethood, implication), closed-form hypervolumes with a
Monte-Carlo cross-check, a JSON document format, and a query CLI.
"""

from .concept import Concept, find_crossing_point, intersect_fuzzy_cuboids
from .core import Core, make_core, repaired_core
from .cuboid import Cuboid, bounding_box, interval_midpoint, make_cuboid
from .errors import (
    ConceptSpaceError,
    DocumentError,
    DomainMismatchError,
    EmptyIntersectionError,
    NumericFailureError,
    ParameterError,
    SizeLimitError,
    UnboundedSizeError,
)
from .io_cli import (
    SpaceDocument,
    load_space,
    parse_space,
    run_cli,
    save_space,
    serialize_space,
)
from .measure import (
    MeasureContext,
    concept_size,
    fuzzy_cuboid_hypervolume,
    implies,
    monte_carlo_size,
    subsethood,
)
from .space import Space, between, combined_distance, similarity, validate_point, weighted_distance
from .weights import (
    Weights,
    blend_weights,
    interpolate,
    linearly_dependent,
    make_weights,
    project_weights,
    uniform_weights,
)

__version__ = "0.1.0"

__all__ = [
    "Concept",
    "ConceptSpaceError",
    "Core",
    "Cuboid",
    "DocumentError",
    "DomainMismatchError",
    "EmptyIntersectionError",
    "MeasureContext",
    "NumericFailureError",
    "ParameterError",
    "SizeLimitError",
    "Space",
    "SpaceDocument",
    "UnboundedSizeError",
    "Weights",
    "between",
    "blend_weights",
    "bounding_box",
    "combined_distance",
    "concept_size",
    "find_crossing_point",
    "fuzzy_cuboid_hypervolume",
    "implies",
    "interpolate",
    "intersect_fuzzy_cuboids",
    "interval_midpoint",
    "linearly_dependent",
    "load_space",
    "make_core",
    "make_cuboid",
    "make_weights",
    "monte_carlo_size",
    "parse_space",
    "project_weights",
    "repaired_core",
    "run_cli",
    "save_space",
    "serialize_space",
    "similarity",
    "subsethood",
    "uniform_weights",
    "validate_point",
    "weighted_distance",
]
