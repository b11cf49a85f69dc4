"""C0-Gromov-Hausdorff distance between functions on finite spaces.

Adds a sup-norm mismatch term to the metric conditions: a witness pair
(i, j) certifies eps when both maps are eps-isometries and
max|g(i(x)) - f(x)| <= eps, max|g(y) - f(j(y))| <= eps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SpaceMismatch
from .isometry import PointMap, best_map, codefect, distortion
from .spaces import FunctionOnSpace


@dataclass(frozen=True)
class Gh0Result:
    value: float
    witness_i: PointMap
    witness_j: PointMap


@dataclass(frozen=True)
class Gh0Certificate:
    """The six witness quantities, reported individually for diagnosis."""

    value: float
    distortion_i: float
    codefect_i: float
    supnorm_i: float
    distortion_j: float
    codefect_j: float
    supnorm_j: float
    witness_i: PointMap
    witness_j: PointMap

    def components(self) -> dict[str, float]:
        return {
            "distortion_i": self.distortion_i,
            "codefect_i": self.codefect_i,
            "supnorm_i": self.supnorm_i,
            "distortion_j": self.distortion_j,
            "codefect_j": self.codefect_j,
            "supnorm_j": self.supnorm_j,
        }


def _check_witness_pair(f: FunctionOnSpace, g: FunctionOnSpace, i: PointMap, j: PointMap):
    ok = (
        i.source.same_space(f.space)
        and i.target.same_space(g.space)
        and j.source.same_space(g.space)
        and j.target.same_space(f.space)
    )
    if not ok:
        raise SpaceMismatch(
            "witness maps must run i: D(f) -> D(g) and j: D(g) -> D(f)"
        )


def gh0_distance(
    f: FunctionOnSpace, g: FunctionOnSpace, method: str = "exact"
) -> Gh0Result:
    """Exact C0-GH distance with lexicographically smallest witnesses.

    As with the plain GH distance the two directions decouple: the value is
    the max of the two directional minima of
    max(distortion, codefect, sup-norm mismatch).
    """
    iv, wi = best_map(f.space, g.space, f.values, g.values, method)
    jv, wj = best_map(g.space, f.space, g.values, f.values, method)
    return Gh0Result(value=max(iv, jv), witness_i=wi, witness_j=wj)


def gh0_certificate(
    f: FunctionOnSpace, g: FunctionOnSpace, i: PointMap, j: PointMap
) -> Gh0Certificate:
    """Evaluate all six certificate quantities for a witness pair."""
    _check_witness_pair(f, g, i, j)
    sup_i = float(np.max(np.abs(g.values[i.image] - f.values)))
    sup_j = float(np.max(np.abs(g.values - f.values[j.image])))
    dis_i, cod_i = distortion(i), codefect(i)
    dis_j, cod_j = distortion(j), codefect(j)
    return Gh0Certificate(
        value=max(dis_i, cod_i, sup_i, dis_j, cod_j, sup_j),
        distortion_i=dis_i,
        codefect_i=cod_i,
        supnorm_i=sup_i,
        distortion_j=dis_j,
        codefect_j=cod_j,
        supnorm_j=sup_j,
        witness_i=i,
        witness_j=j,
    )


def gh0_upper_bound(
    f: FunctionOnSpace, g: FunctionOnSpace, i: PointMap, j: PointMap
) -> float:
    """Certified upper bound on gh0_distance(f, g) from a witness pair."""
    return gh0_certificate(f, g, i, j).value


def transfer_function(f_hat: FunctionOnSpace, i: PointMap) -> FunctionOnSpace:
    """Pull a function back along a map into its domain: values[k] = f_hat(i(k))."""
    if not i.target.same_space(f_hat.space):
        raise SpaceMismatch("map must target the function's domain")
    return FunctionOnSpace(space=i.source, values=f_hat.values[i.image])
