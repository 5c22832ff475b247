"""2-tree drawing toolkit.

Constructs planar straight-line drawings of 2-trees with provably bounded
local edge-length ratio, generates a family of 2-trees whose global
edge-length ratio is unbounded, and verifies or numerically optimizes
edge-length ratios of arbitrary drawings.
"""

from .drawing import DrawConfig, Drawing, draw_tree_component, draw_two_tree, place_initial
from .errors import (
    ChainBroken,
    DegenerateTriangle,
    EmptyRegion,
    InvalidInitial,
    MalformedGraph,
    NotATwoTree,
    NumericalCollapse,
    PreconditionViolated,
    ResourceLimit,
    StructureViolation,
    TooLarge,
    TTDrawError,
    ZeroLengthEdge,
)
from .graphs import (
    LabeledTwoTree,
    TwoTree,
    generate_lower_bound_family,
    lower_bound_family_sizes,
    random_two_tree,
    recognize_two_tree,
)
from .layering import Layering, TreeComponent, compute_layers, extract_tree_components
from .optimize import OptimizeResult, SearchConfig, brute_force_ratio, minimize_ratio, probe_growth
from .verify import (
    RatioReport,
    TriangleChain,
    audit_components,
    build_triangle_chain,
    check_planarity,
    find_separating_triangles,
    measure_ratios,
    thin_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "DrawConfig",
    "Drawing",
    "draw_tree_component",
    "draw_two_tree",
    "place_initial",
    "TwoTree",
    "LabeledTwoTree",
    "generate_lower_bound_family",
    "lower_bound_family_sizes",
    "random_two_tree",
    "recognize_two_tree",
    "Layering",
    "TreeComponent",
    "compute_layers",
    "extract_tree_components",
    "OptimizeResult",
    "SearchConfig",
    "brute_force_ratio",
    "minimize_ratio",
    "probe_growth",
    "RatioReport",
    "TriangleChain",
    "audit_components",
    "build_triangle_chain",
    "check_planarity",
    "find_separating_triangles",
    "measure_ratios",
    "thin_certificate",
    "TTDrawError",
    "MalformedGraph",
    "NotATwoTree",
    "ResourceLimit",
    "StructureViolation",
    "DegenerateTriangle",
    "EmptyRegion",
    "PreconditionViolated",
    "NumericalCollapse",
    "InvalidInitial",
    "TooLarge",
    "ZeroLengthEdge",
    "ChainBroken",
]
