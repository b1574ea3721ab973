"""Distance and collision solvers over the Minkowski difference.

Three iteration schemes share one support oracle:

* ``fw`` - projection-free conditional-gradient descent on 0.5*||x||^2
  with exact line search. Simple, but slow on polytopes.
* ``gjk`` - the fully-corrective variant: every iteration projects the
  origin onto the hull of the active support points and discards vertices
  with zero weight.
* ``nesterov`` - GJK with the support direction produced by a momentum
  recursion instead of the iterate itself. When the momentum direction
  reaches a fixed point (detected through the optimality criterion or a
  repeated support point), it falls back to vanilla GJK once and runs to
  true convergence.

All solvers stop on a Frank-Wolfe duality gap below ``epsilon`` or when the
simplex projection lands on the origin (intersection). Boolean mode adds an
early exit as soon as a support plane separates the shapes.
"""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ._backend import impl
from . import _purecore as _pc
from .minkowski import CollisionPair

__all__ = [
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
    "TRACE_HEADER",
]

TRACE_HEADER = "iter,gap,norm_x,dx,dy,dz,momentum"

DEFAULT_EPSILON = 1e-8
DEFAULT_MAX_ITERATIONS_GJK = 1000
DEFAULT_MAX_ITERATIONS_FW = 50000


class Algorithm(enum.Enum):
    FW = "fw"
    GJK = "gjk"
    NESTEROV = "nesterov"


class Mode(enum.Enum):
    DISTANCE = "distance"
    BOOLEAN = "boolean"


class Status(enum.Enum):
    SEPARATED = "separated"
    INTERSECTING = "intersecting"
    MAX_ITERATIONS = "max_iterations"
    NUMERICAL_FAILURE = "numerical_failure"


@dataclass(frozen=True)
class SolverConfig:
    """Termination and variant knobs shared by all solvers.

    ``max_iterations=None`` resolves to 1000 for the GJK variants and
    50000 for plain Frank-Wolfe. ``normalize_support_directions`` only
    affects the momentum solver.
    """

    epsilon: float = DEFAULT_EPSILON
    max_iterations: Optional[int] = None
    normalize_support_directions: bool = True
    mode: Mode = Mode.DISTANCE
    collect_trace: bool = False

    def __post_init__(self):
        if not (self.epsilon > 0.0):
            raise ValueError("epsilon must be positive")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")

    def resolved_max_iterations(self, algorithm: Algorithm) -> int:
        if self.max_iterations is not None:
            return int(self.max_iterations)
        if algorithm is Algorithm.FW:
            return DEFAULT_MAX_ITERATIONS_FW
        return DEFAULT_MAX_ITERATIONS_GJK


@dataclass(frozen=True)
class TraceStep:
    """Per-iteration convergence record."""

    iteration: int
    duality_gap: float
    norm_x: float
    support_direction: np.ndarray
    momentum_active: bool


@dataclass(frozen=True)
class QueryResult:
    """Outcome of one proximity query.

    ``distance`` is the norm of the final iterate for separated pairs and
    0 for intersections; for ``MAX_ITERATIONS``/``NUMERICAL_FAILURE`` it is
    the best bound found. ``separation_vector`` is always
    ``witness1 - witness2``. Boolean-mode distances are valid bounds, not
    converged distances.
    """

    status: Status
    distance: float
    separation_vector: np.ndarray
    witness1: np.ndarray
    witness2: np.ndarray
    iterations: int
    hints: tuple
    trace: Optional[List[TraceStep]] = None

    @property
    def intersecting(self) -> bool:
        return self.status is Status.INTERSECTING


_ALGO_CODE = {
    Algorithm.FW: _pc.ALGO_FW,
    Algorithm.GJK: _pc.ALGO_GJK,
    Algorithm.NESTEROV: _pc.ALGO_NESTEROV,
}
_MODE_CODE = {Mode.DISTANCE: _pc.MODE_DISTANCE, Mode.BOOLEAN: _pc.MODE_BOOLEAN}
_STATUS_FROM_CODE = {
    _pc.STATUS_SEPARATED: Status.SEPARATED,
    _pc.STATUS_INTERSECTING: Status.INTERSECTING,
    _pc.STATUS_MAX_ITERATIONS: Status.MAX_ITERATIONS,
    _pc.STATUS_NUMERICAL_FAILURE: Status.NUMERICAL_FAILURE,
}


def solve(
    pair: CollisionPair, config: SolverConfig = SolverConfig(),
    algorithm: Algorithm = Algorithm.GJK,
) -> QueryResult:
    """Run one algorithm on one pair; the pair itself is never mutated."""
    if not isinstance(algorithm, Algorithm):
        algorithm = Algorithm(algorithm)
    h1, h2 = pair._start_hints()
    status, dist, w1, w2, iters, h1, h2, raw_trace = impl.solve_packed(
        pair._packed(),
        _ALGO_CODE[algorithm],
        _MODE_CODE[config.mode],
        float(config.epsilon),
        config.resolved_max_iterations(algorithm),
        bool(config.normalize_support_directions),
        h1,
        h2,
        bool(config.collect_trace),
    )
    trace = None
    if raw_trace is not None:
        trace = [
            TraceStep(int(it), float(gap), float(nx),
                      np.array([dx, dy, dz]), bool(mom))
            for it, gap, nx, dx, dy, dz, mom in raw_trace
        ]
    w1 = np.array(w1)
    w2 = np.array(w2)
    return QueryResult(
        status=_STATUS_FROM_CODE[status],
        distance=float(dist),
        separation_vector=w1 - w2,
        witness1=w1,
        witness2=w2,
        iterations=int(iters),
        hints=(h1, h2),
        trace=trace,
    )


def solve_fw(pair: CollisionPair, config: SolverConfig = SolverConfig()) -> QueryResult:
    """Frank-Wolfe with exact line search gamma = <x, x-s>/||x-s||^2."""
    return solve(pair, config, Algorithm.FW)


def solve_gjk(pair: CollisionPair, config: SolverConfig = SolverConfig()) -> QueryResult:
    """Fully-corrective solver (support, gap test, simplex projection)."""
    return solve(pair, config, Algorithm.GJK)


def solve_nesterov_gjk(
    pair: CollisionPair, config: SolverConfig = SolverConfig()
) -> QueryResult:
    """GJK with momentum-smoothed support directions and one-shot fallback."""
    return solve(pair, config, Algorithm.NESTEROV)


def trace_to_csv(trace: List[TraceStep], fp=None) -> str:
    """Serialize a trace as CSV rows ``iter,gap,norm_x,dx,dy,dz,momentum``."""
    buf = io.StringIO()
    buf.write(TRACE_HEADER + "\n")
    for step in trace:
        d = step.support_direction
        buf.write(
            f"{step.iteration},{step.duality_gap!r},{step.norm_x!r},"
            f"{d[0]!r},{d[1]!r},{d[2]!r},{int(step.momentum_active)}\n"
        )
    text = buf.getvalue()
    if fp is not None:
        fp.write(text)
    return text
