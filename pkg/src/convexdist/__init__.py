"""Narrow-phase convex collision detection and distance computation.

Distance queries between convex shapes (spheres, boxes, ellipsoids, convex
meshes) solved as minimum-norm-point problems over the Minkowski difference:
a plain Frank-Wolfe baseline, the fully-corrective GJK solver, and a
momentum-accelerated GJK variant, plus seeded benchmark-suite generation and
a CLI for reproducing iteration-count studies.

Hot kernels run from a compiled extension when available and from a
pure-Python twin otherwise; see :func:`backend_name`.
"""

from ._backend import backend_name
from .shapes import (
    Box,
    ConvexMesh,
    ConvexShape,
    Ellipsoid,
    Pose,
    Sphere,
    SupportResult,
    brute_force_support,
    hill_climb,
    posed_support,
    support,
)
from .minkowski import CollisionPair, SupportPair, duality_gap, support_difference
from .simplex import (
    Simplex,
    SimplexDegeneracyError,
    brute_force_min_norm,
    contains_origin,
    project_origin,
)
from .solvers import (
    Algorithm,
    Mode,
    QueryResult,
    SolverConfig,
    Status,
    TraceStep,
    solve,
    solve_fw,
    solve_gjk,
    solve_nesterov_gjk,
    trace_to_csv,
)

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "Pose",
    "Sphere",
    "Box",
    "Ellipsoid",
    "ConvexMesh",
    "ConvexShape",
    "SupportResult",
    "support",
    "posed_support",
    "hill_climb",
    "brute_force_support",
    "CollisionPair",
    "SupportPair",
    "support_difference",
    "duality_gap",
    "Simplex",
    "SimplexDegeneracyError",
    "project_origin",
    "contains_origin",
    "brute_force_min_norm",
    "Algorithm",
    "Mode",
    "Status",
    "SolverConfig",
    "TraceStep",
    "QueryResult",
    "solve",
    "solve_fw",
    "solve_gjk",
    "solve_nesterov_gjk",
    "trace_to_csv",
    "__version__",
]
