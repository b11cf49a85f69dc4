"""Maps between finite metric spaces and the Gromov-Hausdorff distance.

The GH distance here follows the eps-isometry formulation: the smallest
eps admitting maps in both directions that distort distances by at most
eps and whose images are eps-dense.  On finite spaces the two directions
decouple, so the distance is the max of two independent minimizations.
Note this convention differs from the classical correspondence-based one
(a singleton versus a two-point space at distance 1 is at distance 1 here,
not 1/2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import SpaceMismatch, TooLarge
from .spaces import FiniteMetricSpace

EXACT_MAP_GUARD = 10**7


@dataclass(frozen=True)
class PointMap:
    """A map between point sets, stored as target indices per source point."""

    source: FiniteMetricSpace
    target: FiniteMetricSpace
    image: np.ndarray

    def __post_init__(self):
        img = np.array(self.image, dtype=np.int64, copy=True)
        if img.ndim != 1 or img.shape[0] != self.source.n_points:
            raise ValueError(
                f"image must list one target index per source point "
                f"({self.source.n_points}), got shape {img.shape}"
            )
        if img.size and (img.min() < 0 or img.max() >= self.target.n_points):
            raise ValueError("image entries must be valid target indices")
        img.setflags(write=False)
        object.__setattr__(self, "image", img)

    def __call__(self, index: int) -> int:
        return int(self.image[index])

    @classmethod
    def identity(cls, space: FiniteMetricSpace) -> "PointMap":
        return cls(space, space, np.arange(space.n_points, dtype=np.int64))


@dataclass(frozen=True)
class IsometryQuality:
    distortion: float
    codefect: float
    quality: float


def distortion(m: PointMap) -> float:
    """Worst additive change of a pairwise distance under the map."""
    dt = m.target.dist[np.ix_(m.image, m.image)]
    return float(np.abs(dt - m.source.dist).max())

def codefect(m: PointMap) -> float:
    """Covering defect: largest distance from a target point to the image."""
    return float(m.target.dist[m.image].min(axis=0).max())


def quality(m: PointMap) -> IsometryQuality:
    """Minimal eps for which the map is an eps-isometry."""
    dis = distortion(m)
    cod = codefect(m)
    return IsometryQuality(distortion=dis, codefect=cod, quality=max(dis, cod))


def approximate_inverse(m: PointMap) -> PointMap:
    """Nearest-point quasi-inverse j with j(y) = argmin_x d(m(x), y).

    Ties break toward the lowest source index.  Guarantees, both testable:
    max_y d(m(j(y)), y) <= quality(m) and distortion(j) <= 3 * quality(m).
    """
    back = np.argmin(m.target.dist[m.image], axis=0).astype(np.int64)
    return PointMap(source=m.target, target=m.source, image=back)


def eccentricity_order(space: FiniteMetricSpace) -> np.ndarray:
    """Point order for branch-and-bound: largest row-max first, then index."""
    rowmax = space.dist.max(axis=1)
    n = space.n_points
    return np.lexsort((np.arange(n), -rowmax)).astype(np.int64)


def _check_exact_guard(n_source: int, n_target: int) -> None:
    if n_target**n_source > EXACT_MAP_GUARD:
        raise TooLarge(
            f"{n_target}^{n_source} candidate maps exceed the exact-method "
            f"guard of {EXACT_MAP_GUARD}; use method='bnb'"
        )


def best_map(
    source: FiniteMetricSpace,
    target: FiniteMetricSpace,
    f_values: np.ndarray,
    g_values: np.ndarray,
    method: str = "exact",
) -> tuple[float, PointMap]:
    """Minimize max(distortion, codefect, value mismatch) over all maps.

    The witness is the lexicographically smallest minimizer.  Zero value
    arrays reduce the score to the plain metric quality.
    """
    ds = np.ascontiguousarray(source.dist)
    dt = np.ascontiguousarray(target.dist)
    fv = np.ascontiguousarray(f_values, dtype=np.float64)
    gv = np.ascontiguousarray(g_values, dtype=np.float64)
    if method == "exact":
        _check_exact_guard(source.n_points, target.n_points)
        value, img = kernels.scan_maps(ds, dt, fv, gv)
    elif method == "bnb":
        order = eccentricity_order(source)
        value, img = kernels.bnb_maps(ds, dt, fv, gv, order)
    else:
        raise ValueError(f"unknown method {method!r}")
    return float(value), PointMap(source=source, target=target, image=img)


@dataclass(frozen=True)
class GhResult:
    value: float
    witness_forward: PointMap
    witness_backward: PointMap


def gh_distance(
    X: FiniteMetricSpace, Y: FiniteMetricSpace, method: str = "exact"
) -> GhResult:
    """Gromov-Hausdorff distance between finite spaces, with witnesses.

    value = max over the two directions of the minimal map quality; the
    directions decouple because the eps-conditions constrain each map
    independently.
    """
    if method == "exact":
        _check_exact_guard(X.n_points, Y.n_points)
        _check_exact_guard(Y.n_points, X.n_points)
    zx = np.zeros(X.n_points)
    zy = np.zeros(Y.n_points)
    fwd_value, fwd = best_map(X, Y, zx, zy, method)
    bwd_value, bwd = best_map(Y, X, zy, zx, method)
    return GhResult(
        value=max(fwd_value, bwd_value), witness_forward=fwd, witness_backward=bwd
    )


def gh_upper_bound(i: PointMap, j: PointMap) -> float:
    """Certified upper bound from any witness pair i: X->Y, j: Y->X."""
    if not (i.source.same_space(j.target) and i.target.same_space(j.source)):
        raise SpaceMismatch("maps must run between the same pair of spaces")
    return max(quality(i).quality, quality(j).quality)
