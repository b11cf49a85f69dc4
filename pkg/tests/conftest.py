import numpy as np
import pytest

from ghdense.spaces import FiniteMetricSpace, FunctionOnSpace, from_point_cloud


def random_space(rng, n, dim=3, scale=1.0):
    """Random Euclidean space: always a valid metric."""
    pts = rng.uniform(0.0, scale, size=(n, dim))
    return from_point_cloud(pts)


def random_function(rng, space, lo=-1.0, hi=1.0):
    return FunctionOnSpace(space, rng.uniform(lo, hi, size=space.n_points))


def line_space(values):
    pts = np.asarray(values, dtype=float)[:, None]
    return from_point_cloud(pts)


def circle_space(k, radius=1.0):
    ang = 2.0 * np.pi * np.arange(k) / k
    pts = radius * np.stack([np.cos(ang), np.sin(ang)], axis=1)
    return from_point_cloud(pts)


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # jit compilation happens once, outside any timed assertions
    from ghdense.kernels import warmup

    warmup()
