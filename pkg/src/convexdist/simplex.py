"""Projection of the origin onto simplices of Minkowski-difference points.

This is the fully-corrective sub-step of GJK: given 1-4 support pairs,
find the point of their convex hull closest to the origin, keep only the
minimal supporting face, and recompose witness points from the barycentric
coordinates. ``brute_force_min_norm`` is an independent oracle used by the
tests (closed-form least-norm solves over enumerated faces, nothing shared
with the Johnson-style kernel).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ._backend import impl
from .minkowski import SupportPair

__all__ = [
    "Simplex",
    "SimplexDegeneracyError",
    "project_origin",
    "contains_origin",
    "brute_force_min_norm",
]

ORIGIN_TOL = 1e-12


class SimplexDegeneracyError(RuntimeError):
    """True numerical breakdown of the projection (no usable face)."""


@dataclass(frozen=True)
class Simplex:
    """Active set of 1-4 support pairs with barycentric coordinates."""

    pairs: Tuple[SupportPair, ...]
    lam: np.ndarray

    def __init__(self, pairs: Sequence[SupportPair], lam=None):
        pairs = tuple(pairs)
        if not (1 <= len(pairs) <= 4):
            raise ValueError("simplex rank must be between 1 and 4")
        if lam is None:
            lam = np.full(len(pairs), 1.0 / len(pairs))
        lam = np.asarray(lam, dtype=float)
        if lam.shape != (len(pairs),):
            raise ValueError("need one barycentric coordinate per pair")
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "lam", lam)

    @property
    def k(self) -> int:
        return len(self.pairs)

    def points(self) -> np.ndarray:
        return np.array([p.point for p in self.pairs])


def project_origin(simplex: Simplex) -> Tuple[np.ndarray, Simplex]:
    """Closest point of conv{p_1..p_k} to the origin, plus the reduced simplex.

    The reduced simplex keeps exactly the vertices of the minimal face whose
    hull contains the projection (all retained coordinates positive), with
    witness points recomposed from the barycentric coordinates. Affinely
    degenerate input is handled by rank reduction; only non-finite
    arithmetic raises :class:`SimplexDegeneracyError`.
    """
    pts = [tuple(float(c) for c in p.point) for p in simplex.pairs]
    n = len(pts)
    x, y, z, lam, mask, ok = impl.johnson_project(pts, n)
    if not ok:
        raise SimplexDegeneracyError("simplex degeneracy")
    kept = [i for i in range(n) if mask & (1 << i)]
    lam_kept = np.array([lam[i] for i in kept])
    w1 = np.zeros(3)
    w2 = np.zeros(3)
    for li, i in zip(lam_kept, kept):
        w1 += li * simplex.pairs[i].witness1
        w2 += li * simplex.pairs[i].witness2
    reduced = Simplex([simplex.pairs[i] for i in kept], lam_kept)
    point = np.array([x, y, z])
    return point, reduced


def contains_origin(simplex: Simplex) -> bool:
    """True iff the projection of the origin has norm at most 1e-12."""
    point, _ = project_origin(simplex)
    return float(np.linalg.norm(point)) <= ORIGIN_TOL


def project_witnesses(simplex: Simplex) -> Tuple[np.ndarray, np.ndarray]:
    """Witness points recomposed from the simplex's own coordinates."""
    w1 = np.zeros(3)
    w2 = np.zeros(3)
    for li, p in zip(simplex.lam, simplex.pairs):
        w1 += li * p.witness1
        w2 += li * p.witness2
    return w1, w2


def brute_force_min_norm(points) -> Tuple[np.ndarray, np.ndarray]:
    """Min-norm point of the convex hull of at most 8 points, by enumeration.

    Every subset of size <= 4 that is affinely independent defines one
    equality-constrained least-norm problem, solved in closed form on the
    affine hull; candidates with nonnegative coordinates compete on norm,
    ties going to the smaller face. Exponential, exact, and independent of
    the production projection - this is the testing oracle.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3 or pts.shape[0] == 0:
        raise ValueError("points must be a nonempty (N, 3) array")
    n = pts.shape[0]
    if n > 8:
        raise ValueError("brute_force_min_norm is limited to 8 points")

    best_sq = math.inf
    best_point = None
    best_lam = None
    for size in range(1, min(4, n) + 1):
        for subset in itertools.combinations(range(n), size):
            sol = _least_norm_on_face(pts, subset)
            if sol is None:
                continue
            cand, lam_face = sol
            if np.any(lam_face < -1e-12):
                continue
            sq = float(cand @ cand)
            if sq < best_sq - 1e-15:
                best_sq = sq
                best_point = cand
                lam = np.zeros(n)
                for li, i in zip(lam_face, subset):
                    lam[i] = max(li, 0.0)
                best_lam = lam
    assert best_point is not None  # singletons always qualify
    return best_point, best_lam


def _least_norm_on_face(pts, subset):
    """Least-norm point on the affine hull of pts[subset], barycentric form.

    min ||p0 + B mu|| with B = [p_i - p_0]; normal equations solved by
    Cramer's rule. Returns None for affinely dependent subsets.
    """
    p0 = pts[subset[0]]
    m = len(subset)
    if m == 1:
        return p0.copy(), np.array([1.0])
    B = np.array([pts[i] - p0 for i in subset[1:]]).T  # 3 x (m-1)
    G = B.T @ B
    b = -(B.T @ p0)
    mu = _cramer_solve(G, b)
    if mu is None:
        return None
    lam = np.empty(m)
    lam[0] = 1.0 - float(np.sum(mu))
    lam[1:] = mu
    return p0 + B @ mu, lam


def _cramer_solve(G, b):
    m = G.shape[0]
    if m == 1:
        det = float(G[0, 0])
        if abs(det) < 1e-300:
            return None
        return np.array([float(b[0]) / det])
    if m == 2:
        det = float(G[0, 0] * G[1, 1] - G[0, 1] * G[1, 0])
        if abs(det) < 1e-300:
            return None
        return np.array(
            [
                (b[0] * G[1, 1] - G[0, 1] * b[1]) / det,
                (G[0, 0] * b[1] - b[0] * G[1, 0]) / det,
            ]
        )
    det = float(np.linalg.det(G))
    if abs(det) < 1e-300:
        return None
    sol = np.empty(3)
    for j in range(3):
        Gj = G.copy()
        Gj[:, j] = b
        sol[j] = np.linalg.det(Gj) / det
    return sol
