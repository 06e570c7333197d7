"""Enumerate 3-edge colorings and Hamiltonian cycles of cubic multigraphs.

The pipeline has two runs: a deterministic first pass splits vertices into
rigid and soft and fixes an edge schedule, then a backtracking pass streams
every normalized Tait coloring, branching only at soft vertices.  Connected
2-factors of the streamed colorings are exactly the Hamiltonian cycles.
"""

from .coloring import (
    Color,
    SearchStats,
    TaitColoring,
    count_colorings,
    enumerate_colorings,
    enumerate_prefixed,
)
from .cycles import (
    CanonicalCycle,
    TwoFactor,
    coloring_from_cycle,
    enumerate_hamiltonian,
    hamiltonian_of,
    two_factors,
)
from .graphs import (
    CubicGraph,
    EdgeListSyntaxError,
    GenerationError,
    InvalidGraphError,
    ValidationReport,
    builtin,
    builtin_names,
    girth,
    parse_edge_list,
    random_cubic,
    random_cubic_with_girth,
    serialize_edge_list,
)
from .partition import (
    CoverSnapshot,
    InternalInvariantError,
    Role,
    ScheduleEntry,
    SchedulePlan,
    build_schedule,
    verify_schedule,
)

__all__ = [
    "Color",
    "SearchStats",
    "TaitColoring",
    "count_colorings",
    "enumerate_colorings",
    "enumerate_prefixed",
    "CanonicalCycle",
    "TwoFactor",
    "coloring_from_cycle",
    "enumerate_hamiltonian",
    "hamiltonian_of",
    "two_factors",
    "CubicGraph",
    "EdgeListSyntaxError",
    "GenerationError",
    "InvalidGraphError",
    "ValidationReport",
    "builtin",
    "builtin_names",
    "girth",
    "parse_edge_list",
    "random_cubic",
    "random_cubic_with_girth",
    "serialize_edge_list",
    "CoverSnapshot",
    "InternalInvariantError",
    "Role",
    "ScheduleEntry",
    "SchedulePlan",
    "build_schedule",
    "verify_schedule",
]

__version__ = "0.1.0"
