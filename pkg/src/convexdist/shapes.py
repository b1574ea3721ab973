"""Convex shape types and their support functions.

All shapes are immutable after construction and safe to share between
concurrent queries. The support convention throughout the library is
*minimization*: ``support(shape, d)`` returns a point attaining
``min_x <x, d>`` over the shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from ._backend import impl
from . import _purecore as _pc

__all__ = [
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
]

_MAX_ELLIPSOID_CONDITION = 1e8


def _as_vec3(x, name: str) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector, got shape {v.shape}")
    return v


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Pose:
    """Rigid placement: rotation (3x3, proper orthonormal) + translation (m)."""

    rotation: np.ndarray
    translation: np.ndarray

    def __init__(self, rotation=None, translation=None):
        R = np.eye(3) if rotation is None else np.asarray(rotation, dtype=float)
        t = np.zeros(3) if translation is None else _as_vec3(translation, "translation")
        if R.shape != (3, 3):
            raise ValueError(f"rotation must be 3x3, got shape {R.shape}")
        if np.max(np.abs(R.T @ R - np.eye(3))) > 1e-9:
            raise ValueError("rotation is not orthonormal")
        if abs(np.linalg.det(R) - 1.0) > 1e-9:
            raise ValueError("rotation must be proper (det = +1)")
        object.__setattr__(self, "rotation", _readonly(R))
        object.__setattr__(self, "translation", _readonly(t))

    @staticmethod
    def identity() -> "Pose":
        return Pose()

    @staticmethod
    def from_quaternion(q, translation=(0.0, 0.0, 0.0)) -> "Pose":
        """Pose from a (w, x, y, z) quaternion; normalized internally."""
        w, x, y, z = (float(v) for v in q)
        n = math.sqrt(w * w + x * x + y * y + z * z)
        if n == 0.0:
            raise ValueError("zero quaternion")
        w, x, y, z = w / n, x / n, y / n, z / n
        R = np.array(
            [
                [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
                [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
                [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
            ]
        )
        return Pose(R, translation)

    def _flat(self):
        R = self.rotation
        return (
            (
                R[0, 0], R[0, 1], R[0, 2],
                R[1, 0], R[1, 1], R[1, 2],
                R[2, 0], R[2, 1], R[2, 2],
            ),
            (self.translation[0], self.translation[1], self.translation[2]),
        )


@dataclass(frozen=True)
class Sphere:
    """Ball of given radius centred at the local origin."""

    radius: float

    def __post_init__(self):
        if not (self.radius > 0.0):
            raise ValueError("sphere radius must be positive")
        object.__setattr__(self, "radius", float(self.radius))


@dataclass(frozen=True)
class Box:
    """Axis-aligned box given by positive half extents."""

    half_extents: np.ndarray

    def __init__(self, half_extents):
        h = _as_vec3(half_extents, "half_extents")
        if not np.all(h > 0.0):
            raise ValueError("box half extents must be positive")
        object.__setattr__(self, "half_extents", _readonly(h))


class Ellipsoid:
    """Ellipsoid {x : x^T A x <= 1} for a symmetric positive-definite A.

    The support function uses a Cholesky factor of A cached at construction
    rather than an explicit inverse. Nearly flat ellipsoids (condition
    number above 1e8) are rejected.
    """

    __slots__ = ("A", "_chol")

    def __init__(self, A):
        A = np.asarray(A, dtype=float)
        if A.shape != (3, 3):
            raise ValueError(f"A must be 3x3, got shape {A.shape}")
        if np.max(np.abs(A - A.T)) > 1e-12:
            raise ValueError("A must be symmetric")
        self.A = _readonly(A)
        self._chol = _cholesky3(A)
        w = np.linalg.eigvalsh(A)
        if w[0] <= 0.0:
            raise ValueError("A must be positive definite")
        if w[-1] / w[0] > _MAX_ELLIPSOID_CONDITION:
            raise ValueError("ellipsoid too ill-conditioned (flat)")

    @staticmethod
    def from_semi_axes(axes) -> "Ellipsoid":
        a = _as_vec3(axes, "semi-axes")
        if not np.all(a > 0.0):
            raise ValueError("semi-axes must be positive")
        return Ellipsoid(np.diag(1.0 / a**2))

    def __repr__(self):
        return f"Ellipsoid(A={self.A.tolist()})"

    def __eq__(self, other):
        return isinstance(other, Ellipsoid) and np.array_equal(self.A, other.A)

    def __hash__(self):
        return hash(self.A.tobytes())


def _cholesky3(A) -> tuple:
    """Hand-rolled 3x3 Cholesky (lower factor, row-packed 6-tuple).

    Done in plain floats so both kernel backends consume identical values.
    Raises on non-positive-definite input.
    """
    a00 = float(A[0, 0])
    a10 = float(A[1, 0])
    a11 = float(A[1, 1])
    a20 = float(A[2, 0])
    a21 = float(A[2, 1])
    a22 = float(A[2, 2])
    if a00 <= 0.0:
        raise ValueError("A must be positive definite")
    l00 = math.sqrt(a00)
    l10 = a10 / l00
    l20 = a20 / l00
    t = a11 - l10 * l10
    if t <= 0.0:
        raise ValueError("A must be positive definite")
    l11 = math.sqrt(t)
    l21 = (a21 - l20 * l10) / l11
    t = a22 - l20 * l20 - l21 * l21
    if t <= 0.0:
        raise ValueError("A must be positive definite")
    l22 = math.sqrt(t)
    return (l00, l10, l11, l20, l21, l22)


class ConvexMesh:
    """Convex polytope given by its vertices and vertex-adjacency lists.

    The adjacency graph must be symmetric and connected and is expected to
    be the edge graph of the convex hull of the vertices (the hill-climbing
    support walk is exact only then). ``check_convex`` verifies that every
    vertex is extreme.
    """

    __slots__ = ("vertices", "neighbors", "_vlist", "_nlist", "_indptr", "_indices")

    def __init__(self, vertices, neighbors: Sequence[Sequence[int]]):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3 or v.shape[0] == 0:
            raise ValueError("vertices must be a nonempty (N, 3) array")
        n = v.shape[0]
        if len(neighbors) != n:
            raise ValueError("need one neighbor list per vertex")
        nbrs = []
        for i, lst in enumerate(neighbors):
            idx = sorted(int(j) for j in lst)
            for j in idx:
                if not (0 <= j < n):
                    raise ValueError(f"neighbor index {j} of vertex {i} out of range")
                if j == i:
                    raise ValueError(f"vertex {i} lists itself as neighbor")
            nbrs.append(tuple(idx))
        for i, lst in enumerate(nbrs):
            for j in lst:
                if i not in nbrs[j]:
                    raise ValueError(f"adjacency not symmetric: {i} -> {j}")
        _check_connected(nbrs)

        self.vertices = _readonly(v)
        self.neighbors = tuple(nbrs)
        self._vlist = tuple(tuple(float(c) for c in row) for row in v)
        self._nlist = self.neighbors
        indptr = np.zeros(n + 1, dtype=np.int32)
        for i, lst in enumerate(nbrs):
            indptr[i + 1] = indptr[i] + len(lst)
        indices = np.zeros(int(indptr[-1]), dtype=np.int32)
        for i, lst in enumerate(nbrs):
            indices[indptr[i] : indptr[i + 1]] = lst
        self._indptr = indptr
        self._indices = indices

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    def check_convex(self) -> None:
        """Raise if some vertex is not a vertex of the hull of the set."""
        from scipy.spatial import ConvexHull, QhullError

        n = self.n_vertices
        if n <= 3:
            return
        try:
            hull = ConvexHull(self.vertices)
        except QhullError as e:
            raise ValueError(f"degenerate vertex set: {e}") from e
        if len(hull.vertices) != n:
            missing = sorted(set(range(n)) - set(int(i) for i in hull.vertices))
            raise ValueError(f"vertices not on the convex hull: {missing}")

    def __repr__(self):
        return f"ConvexMesh(n_vertices={self.n_vertices})"


def _check_connected(nbrs) -> None:
    n = len(nbrs)
    if n == 1:
        return
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        i = stack.pop()
        for j in nbrs[i]:
            if not seen[j]:
                seen[j] = True
                count += 1
                stack.append(j)
    if count != n:
        raise ValueError("adjacency graph is not connected")


ConvexShape = Union[Sphere, Box, Ellipsoid, ConvexMesh]


@dataclass(frozen=True)
class SupportResult:
    """Support point plus, for meshes, the index of the attaining vertex."""

    point: np.ndarray
    vertex_index: Optional[int] = None


def _packed_shape(shape):
    """(kind, params, vlist, nlist, vertices, indptr, indices) for kernels."""
    if isinstance(shape, Sphere):
        return (_pc.KIND_SPHERE, (shape.radius, 0.0, 0.0, 0.0, 0.0, 0.0),
                None, None, None, None, None)
    if isinstance(shape, Box):
        h = shape.half_extents
        return (_pc.KIND_BOX, (float(h[0]), float(h[1]), float(h[2]), 0.0, 0.0, 0.0),
                None, None, None, None, None)
    if isinstance(shape, Ellipsoid):
        return (_pc.KIND_ELLIPSOID, shape._chol, None, None, None, None, None)
    if isinstance(shape, ConvexMesh):
        return (_pc.KIND_MESH, (0.0,) * 6, shape._vlist, shape._nlist,
                shape.vertices, shape._indptr, shape._indices)
    raise TypeError(f"not a convex shape: {type(shape).__name__}")


def _check_direction(d) -> np.ndarray:
    v = _as_vec3(d, "direction")
    if not np.all(np.isfinite(v)) or float(v @ v) == 0.0:
        raise ValueError("degenerate direction")
    return v


def _resolve_hint(shape, hint) -> int:
    if not isinstance(shape, ConvexMesh):
        return -1
    if hint is None:
        return 0
    h = int(hint)
    if not (0 <= h < shape.n_vertices):
        raise ValueError(f"hint {h} out of range for mesh with {shape.n_vertices} vertices")
    return h


def support(shape: ConvexShape, d, hint: Optional[int] = None) -> SupportResult:
    """Point of ``shape`` minimizing ``<x, d>``.

    Closed forms for sphere/box/ellipsoid; meshes walk the adjacency graph
    starting from ``hint`` (default vertex 0). Box components tie-break with
    sgn(0) := +1 so outputs are deterministic.
    """
    v = _check_direction(d)
    kind, prm, vlist, nlist, verts, indptr, indices = _packed_shape(shape)
    h = _resolve_hint(shape, hint)
    if kind == _pc.KIND_MESH:
        px, py, pz, idx = impl.support_local(
            kind, prm, vlist, nlist, float(v[0]), float(v[1]), float(v[2]), h
        )
        return SupportResult(np.array([px, py, pz]), idx)
    px, py, pz, _ = impl.support_local(
        kind, prm, None, None, float(v[0]), float(v[1]), float(v[2]), -1
    )
    return SupportResult(np.array([px, py, pz]), None)


def posed_support(
    shape: ConvexShape, pose: Pose, d, hint: Optional[int] = None
) -> SupportResult:
    """Support of the transformed set R*S + t in world direction ``d``."""
    v = _check_direction(d)
    kind, prm, vlist, nlist, verts, indptr, indices = _packed_shape(shape)
    h = _resolve_hint(shape, hint)
    R, t = pose._flat()
    px, py, pz, idx = impl.support_posed(
        kind, prm, vlist, nlist, R, t, float(v[0]), float(v[1]), float(v[2]), h
    )
    return SupportResult(np.array([px, py, pz]), idx if idx >= 0 else None)


def hill_climb(mesh: ConvexMesh, d, i0: int) -> SupportResult:
    """Greedy support walk over the mesh adjacency graph from vertex ``i0``.

    Returns a vertex attaining the global minimum dot value (the index may
    differ from the full scan under exact ties) and is a valid warm start
    for the next query on the same mesh.
    """
    if not isinstance(mesh, ConvexMesh):
        raise TypeError("hill_climb requires a ConvexMesh")
    v = _check_direction(d)
    h = _resolve_hint(mesh, i0)
    idx, _ = impl.hill_climb(
        mesh._vlist, mesh._nlist, float(v[0]), float(v[1]), float(v[2]), h
    )
    return SupportResult(mesh.vertices[idx].copy(), int(idx))


def brute_force_support(mesh: ConvexMesh, d) -> SupportResult:
    """Exact argmin over all vertices; ties broken by lowest index.

    Differential-testing oracle for :func:`hill_climb`; both compute the
    per-vertex dot products with the same arithmetic.
    """
    if not isinstance(mesh, ConvexMesh):
        raise TypeError("brute_force_support requires a ConvexMesh")
    if mesh.n_vertices == 0:
        raise ValueError("empty mesh")
    v = _check_direction(d)
    idx, _ = impl.brute_force_support(
        mesh._vlist, float(v[0]), float(v[1]), float(v[2])
    )
    return SupportResult(mesh.vertices[idx].copy(), int(idx))


def support_dot(mesh: ConvexMesh, index: int, d) -> float:
    """Dot value <v_index, d> with the kernels' exact arithmetic."""
    v = mesh._vlist[index]
    return v[0] * float(d[0]) + v[1] * float(d[1]) + v[2] * float(d[2])
