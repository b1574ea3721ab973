"""Support oracle of the Minkowski difference D = A1 - A2.

The collision problem is "is the origin in D, and how far is it from D";
every support call on D carries witness points on both posed shapes so
query results can report closest points directly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from ._backend import impl
from .shapes import ConvexMesh, ConvexShape, Pose, _check_direction, _packed_shape

__all__ = ["CollisionPair", "SupportPair", "support_difference", "duality_gap"]


class _PackedPair:
    """Flat, kernel-ready view of a collision pair (shapes + poses)."""

    __slots__ = (
        "kind1", "prm1", "vlist1", "nlist1", "verts1", "indptr1", "indices1",
        "R1", "t1",
        "kind2", "prm2", "vlist2", "nlist2", "verts2", "indptr2", "indices2",
        "R2", "t2",
    )

    def __init__(self, shape1, pose1, shape2, pose2):
        (self.kind1, self.prm1, self.vlist1, self.nlist1,
         self.verts1, self.indptr1, self.indices1) = _packed_shape(shape1)
        (self.kind2, self.prm2, self.vlist2, self.nlist2,
         self.verts2, self.indptr2, self.indices2) = _packed_shape(shape2)
        self.R1, self.t1 = pose1._flat()
        self.R2, self.t2 = pose2._flat()


@dataclass
class CollisionPair:
    """Two posed convex shapes plus mesh warm-start hints.

    Hints are the caller's: queries never mutate them, they only return
    updated values. Share shapes freely; clone the pair (cheap, hints only)
    to run concurrent queries.
    """

    shape1: ConvexShape
    pose1: Pose
    shape2: ConvexShape
    pose2: Pose
    hint1: Optional[int] = None
    hint2: Optional[int] = None

    def __post_init__(self):
        self._packed_cache = None

    def clone(self) -> "CollisionPair":
        return replace(self)

    def _packed(self) -> _PackedPair:
        if self._packed_cache is None:
            self._packed_cache = _PackedPair(
                self.shape1, self.pose1, self.shape2, self.pose2
            )
        return self._packed_cache

    def _start_hints(self) -> Tuple[int, int]:
        h1 = _hint_for(self.shape1, self.hint1)
        h2 = _hint_for(self.shape2, self.hint2)
        return h1, h2


def _hint_for(shape, hint) -> int:
    if not isinstance(shape, ConvexMesh):
        return -1
    if hint is None:
        return 0
    h = int(hint)
    if not (0 <= h < shape.n_vertices):
        raise ValueError(f"hint {h} out of range for mesh with {shape.n_vertices} vertices")
    return h


@dataclass(frozen=True)
class SupportPair:
    """Support point of D with its witnesses on the two posed shapes.

    ``point`` is always computed as ``witness1 - witness2``; ``hints`` are
    the vertex indices to warm-start the next support call with.
    """

    witness1: np.ndarray
    witness2: np.ndarray
    point: np.ndarray
    hints: Tuple[int, int]


def support_difference(pair: CollisionPair, d) -> SupportPair:
    """Support of D = A1 - A2 in direction ``d`` (argmin of <x, d>).

    Uses s_D(d) = s_1(d) - s_2(-d) on the posed shapes, starting any mesh
    hill climbs from the pair's hints.
    """
    v = _check_direction(d)
    h1, h2 = pair._start_hints()
    r = impl.support_pair(
        pair._packed(), float(v[0]), float(v[1]), float(v[2]), h1, h2
    )
    w1 = np.array(r[0:3])
    w2 = np.array(r[3:6])
    p = np.array(r[6:9])
    return SupportPair(w1, w2, p, (r[9], r[10]))


def duality_gap(x, s) -> float:
    """Frank-Wolfe gap g(x) = <x, x - s> for the objective 0.5*||x||^2.

    Nonnegative (up to rounding) whenever ``s`` supports D in direction
    ``x``; zero exactly at the optimum.
    """
    xv = np.asarray(x, dtype=float)
    sv = np.asarray(s, dtype=float)
    xx = float(xv[0]) * float(xv[0]) + float(xv[1]) * float(xv[1]) + float(xv[2]) * float(xv[2])
    xs = float(xv[0]) * float(sv[0]) + float(xv[1]) * float(sv[1]) + float(xv[2]) * float(sv[2])
    return xx - xs
