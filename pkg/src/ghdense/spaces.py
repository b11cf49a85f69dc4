"""Finite metric spaces, point clouds, functions on spaces, eps-nets.

All value types are immutable after construction: arrays are copied in and
marked read-only, so every operation in the package is pure.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    Asymmetric,
    DomainMismatch,
    DuplicatePoints,
    NegativeEntry,
    NonzeroDiagonal,
    NotSquare,
    TriangleViolation,
)

# Relative tolerance for the triangle inequality; borderline collinear
# triples from Euclidean clouds need it.  Absolute floor guards tiny scales.
TRIANGLE_REL_TOL = 1e-9
TRIANGLE_ABS_TOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=np.float64, copy=True)
    out.setflags(write=False)
    return out


def _content_id(prefix: str, *parts: bytes) -> str:
    h = hashlib.sha1()
    for p in parts:
        h.update(p)
    return f"{prefix}-{h.hexdigest()[:12]}"


@dataclass(frozen=True)
class FiniteMetricSpace:
    """A validated symmetric distance matrix with point labels."""

    dist: np.ndarray
    labels: tuple[str, ...]
    space_id: str

    @property
    def n_points(self) -> int:
        return self.dist.shape[0]

    @property
    def diameter(self) -> float:
        return float(self.dist.max())

    def min_positive_distance(self) -> float:
        n = self.n_points
        if n == 1:
            return 0.0
        off = self.dist[~np.eye(n, dtype=bool)]
        return float(off.min())

    def subspace(self, indices: np.ndarray) -> "FiniteMetricSpace":
        """Restrict to a subset of points; inherited distances stay metric."""
        idx = np.asarray(indices, dtype=np.int64)
        sub = self.dist[np.ix_(idx, idx)]
        labels = tuple(self.labels[k] for k in idx)
        return FiniteMetricSpace(
            dist=_frozen(sub),
            labels=labels,
            space_id=_content_id("space", sub.tobytes(), repr(labels).encode()),
        )

    def same_space(self, other: "FiniteMetricSpace") -> bool:
        """Same domain for function purposes: identical distance matrix."""
        if self is other:
            return True
        return self.dist.shape == other.dist.shape and bool(
            np.array_equal(self.dist, other.dist)
        )


@dataclass(frozen=True)
class FunctionOnSpace:
    """Real values attached to a space's points."""

    space: FiniteMetricSpace
    values: np.ndarray

    def __post_init__(self):
        vals = _frozen(self.values)
        if vals.ndim != 1 or vals.shape[0] != self.space.n_points:
            raise DomainMismatch(
                f"expected {self.space.n_points} values, got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("function values must be finite")
        object.__setattr__(self, "values", vals)

    def __call__(self, index: int) -> float:
        return float(self.values[index])


@dataclass(frozen=True)
class PointCloud:
    """Coordinate vectors of equal dimension, pairwise distinct."""

    points: np.ndarray = field()

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64, copy=True)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("point cloud must be a nonempty 2-d array")
        if not np.all(np.isfinite(pts)):
            raise ValueError("point coordinates must be finite")
        same = np.all(pts[:, None, :] == pts[None, :, :], axis=2)
        np.fill_diagonal(same, False)
        if same.any():
            k, l = np.argwhere(same)[0]
            raise DuplicatePoints(k, l, detail="coincident points in cloud")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def dimension(self) -> int:
        return self.points.shape[1]


def validate_metric(
    matrix, labels=None, *, space_id: str | None = None
) -> FiniteMetricSpace:
    """Check the four metric axioms and wrap the matrix in a space.

    Axioms are checked in a fixed order (shape, sign, diagonal, symmetry,
    triangle, distinctness) and the first violation is raised with the
    offending indices.
    """
    d = np.array(matrix, dtype=np.float64, copy=True)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise NotSquare(detail=f"shape {d.shape}")
    if not np.all(np.isfinite(d)):
        raise ValueError("distance entries must be finite")
    n = d.shape[0]

    neg = np.argwhere(d < 0)
    if neg.size:
        k, l = neg[0]
        raise NegativeEntry(k, l, detail=f"d[{k}][{l}]={d[k, l]}")

    diag = np.flatnonzero(np.diag(d) != 0)
    if diag.size:
        k = diag[0]
        raise NonzeroDiagonal(k, detail=f"d[{k}][{k}]={d[k, k]}")

    asym = np.argwhere(d != d.T)
    if asym.size:
        k, l = asym[0]
        raise Asymmetric(k, l, detail=f"d[{k}][{l}]={d[k, l]} != d[{l}][{k}]={d[l, k]}")

    # d[k][l] <= d[k][m] + d[m][l], scanned in (k, l, m) order so the first
    # violation reported matches a plain three-loop oracle.
    for k in range(n):
        via = d[k][:, None] + d  # via[m, l] = d[k][m] + d[m][l]
        tol = np.maximum(TRIANGLE_ABS_TOL, TRIANGLE_REL_TOL * np.maximum(d[k][None, :], via))
        bad = d[k][None, :] > via + tol  # bad[m, l]
        bad[k, :] = False
        bad[:, k] = False
        bad[np.arange(n), np.arange(n)] = False
        if bad.any():
            # first in (l, m) loop order
            ls, ms = np.nonzero(bad.T)
            l, m = int(ls[0]), int(ms[0])
            raise TriangleViolation(
                k, l, m, detail=f"d[{k}][{l}]={d[k, l]} > {d[k, m]} + {d[m, l]}"
            )

    dup = np.argwhere((d == 0) & ~np.eye(n, dtype=bool))
    if dup.size:
        k, l = dup[0]
        raise DuplicatePoints(k, l, detail=f"d[{k}][{l}]=0 for distinct points")

    if labels is None:
        label_tuple = tuple(f"p{k}" for k in range(n))
    else:
        label_tuple = tuple(str(s) for s in labels)
        if len(label_tuple) != n:
            raise ValueError(f"expected {n} labels, got {len(label_tuple)}")
    if space_id is None:
        space_id = _content_id("space", d.tobytes(), repr(label_tuple).encode())
    return FiniteMetricSpace(dist=_frozen(d), labels=label_tuple, space_id=space_id)


def from_point_cloud(cloud: PointCloud | np.ndarray) -> FiniteMetricSpace:
    """Euclidean realization of a point cloud as a finite metric space."""
    if not isinstance(cloud, PointCloud):
        cloud = PointCloud(np.asarray(cloud))
    pts = cloud.points
    diff = pts[:, None, :] - pts[None, :, :]
    d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    d = 0.5 * (d + d.T)  # exact symmetry despite float summation order
    np.fill_diagonal(d, 0.0)
    return validate_metric(d)


def epsilon_net(space: FiniteMetricSpace, eps: float, seed_index: int = 0):
    """Farthest-point net with cover radius <= eps.

    Returns the net as a subspace plus the inclusion map into the original
    space.  Greedy farthest-point selection, ties broken by lowest index,
    so the result is deterministic and net prefixes nest as eps shrinks.
    """
    from .isometry import PointMap  # deferred: isometry imports this module

    if eps <= 0:
        raise ValueError("eps must be positive")
    n = space.n_points
    if not 0 <= seed_index < n:
        raise ValueError(f"seed_index {seed_index} out of range for {n} points")

    from .kernels import fps_indices

    selected = fps_indices(space.dist, float(eps), int(seed_index))
    sub = space.subspace(selected)
    inclusion = PointMap(source=sub, target=space, image=selected)
    return sub, inclusion


def sup_norm_distance(f: FunctionOnSpace, g: FunctionOnSpace) -> float:
    """C0 distance: max |f - g| over the shared domain."""
    if not f.space.same_space(g.space):
        raise DomainMismatch("functions live on different spaces")
    return float(np.max(np.abs(f.values - g.values)))


def oscillation(f: FunctionOnSpace, rho: float) -> float:
    """Max |f(a) - f(b)| over distinct pairs with dist(a, b) < rho (strict)."""
    if rho <= 0:
        raise ValueError("rho must be positive")
    n = f.space.n_points
    close = (f.space.dist < rho) & ~np.eye(n, dtype=bool)
    if not close.any():
        return 0.0
    diffs = np.abs(f.values[:, None] - f.values[None, :])
    return float(diffs[close].max())
