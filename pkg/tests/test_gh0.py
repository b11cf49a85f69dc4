import itertools

import numpy as np
import pytest

from ghdense.errors import SpaceMismatch
from ghdense.gh0 import (
    gh0_certificate,
    gh0_distance,
    gh0_upper_bound,
    transfer_function,
)
from ghdense.isometry import PointMap, approximate_inverse, quality
from ghdense.spaces import (
    FunctionOnSpace,
    epsilon_net,
    oscillation,
    sup_norm_distance,
    validate_metric,
)

from conftest import circle_space, line_space, random_function, random_space


def six_quantities_oracle(f, g, i_img, j_img):
    ds, dt = f.space.dist, g.space.dist
    n, m = len(i_img), len(j_img)
    dis_i = max(
        abs(dt[i_img[x], i_img[y]] - ds[x, y]) for x in range(n) for y in range(n)
    )
    cod_i = max(min(dt[i_img[x], y] for x in range(n)) for y in range(m))
    sup_i = max(abs(g.values[i_img[x]] - f.values[x]) for x in range(n))
    dis_j = max(
        abs(ds[j_img[x], j_img[y]] - dt[x, y]) for x in range(m) for y in range(m)
    )
    cod_j = max(min(ds[j_img[y], x] for y in range(m)) for x in range(n))
    sup_j = max(abs(g.values[y] - f.values[j_img[y]]) for y in range(m))
    return dis_i, cod_i, sup_i, dis_j, cod_j, sup_j


def gh0_coupled_oracle(f, g):
    """Brute force over all (i, j) pairs; the decoupled formula must agree."""
    n, m = f.space.n_points, g.space.n_points
    best = None
    for i_img in itertools.product(range(m), repeat=n):
        for j_img in itertools.product(range(n), repeat=m):
            best_pair = max(six_quantities_oracle(f, g, i_img, j_img))
            if best is None or best_pair < best:
                best = best_pair
    return best


class TestGh0Distance:
    def test_equal_functions_identity_witnesses(self):
        rng = np.random.default_rng(0)
        space = random_space(rng, 4)
        f = random_function(rng, space)
        res = gh0_distance(f, f)
        assert res.value == 0.0
        assert np.array_equal(res.witness_i.image, np.arange(4))
        assert np.array_equal(res.witness_j.image, np.arange(4))

    def test_singleton_domains(self):
        X = line_space([0.0])
        Y = line_space([5.0])
        f = FunctionOnSpace(X, np.array([0.0]))
        g = FunctionOnSpace(Y, np.array([-2.5]))
        assert gh0_distance(f, g).value == 2.5  # unique map pair, metric terms 0

    def test_shared_two_point_space(self):
        space = validate_metric([[0.0, 1.0], [1.0, 0.0]])
        f = FunctionOnSpace(space, np.array([0.0, 0.0]))
        g = FunctionOnSpace(space, np.array([0.3, 0.3]))
        # enumerate all 4 x 4 map pairs
        assert gh0_coupled_oracle(f, g) == pytest.approx(0.3, abs=0)
        res = gh0_distance(f, g)
        assert res.value == 0.3
        assert np.array_equal(res.witness_i.image, [0, 1])  # identity wins ties

    def test_decoupled_equals_coupled_brute_force(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            X = random_space(rng, int(rng.integers(1, 4)), dim=2)
            Y = random_space(rng, int(rng.integers(1, 4)), dim=2)
            f = random_function(rng, X)
            g = random_function(rng, Y)
            assert gh0_distance(f, g).value == gh0_coupled_oracle(f, g)

    def test_symmetry_exact(self):
        rng = np.random.default_rng(7)
        for _ in range(60):
            X = random_space(rng, int(rng.integers(1, 5)), dim=2)
            Y = random_space(rng, int(rng.integers(1, 5)), dim=2)
            f = random_function(rng, X)
            g = random_function(rng, Y)
            fg = gh0_distance(f, g)
            gf = gh0_distance(g, f)
            assert fg.value == gf.value
            assert np.array_equal(fg.witness_i.image, gf.witness_j.image)
            assert np.array_equal(fg.witness_j.image, gf.witness_i.image)

    def test_relaxed_triangle(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            spaces = [random_space(rng, int(rng.integers(1, 5)), dim=2) for _ in range(3)]
            f, g, h = (random_function(rng, s) for s in spaces)
            dfh = gh0_distance(f, h).value
            dfg = gh0_distance(f, g).value
            dgh = gh0_distance(g, h).value
            assert dfh <= 2.0 * (dfg + dgh) + 1e-12

    def test_dominated_by_sup_norm_on_shared_domain(self):
        rng = np.random.default_rng(13)
        for _ in range(60):
            space = random_space(rng, int(rng.integers(1, 6)), dim=2)
            f = random_function(rng, space)
            g = random_function(rng, space)
            assert gh0_distance(f, g).value <= sup_norm_distance(f, g)

    def test_bnb_equals_exact(self):
        rng = np.random.default_rng(17)
        for _ in range(60):
            X = random_space(rng, int(rng.integers(1, 5)), dim=2)
            Y = random_space(rng, int(rng.integers(1, 5)), dim=2)
            f = random_function(rng, X)
            g = random_function(rng, Y)
            exact = gh0_distance(f, g, method="exact")
            bnb = gh0_distance(f, g, method="bnb")
            assert bnb.value == exact.value
            assert np.array_equal(bnb.witness_i.image, exact.witness_i.image)
            assert np.array_equal(bnb.witness_j.image, exact.witness_j.image)


class TestGh0UpperBound:
    def test_identity_pair_equal_functions(self):
        rng = np.random.default_rng(1)
        space = random_space(rng, 5)
        f = random_function(rng, space)
        ident = PointMap.identity(space)
        assert gh0_upper_bound(f, f, ident, ident) == 0.0

    def test_bound_dominates_exact(self):
        rng = np.random.default_rng(19)
        for _ in range(40):
            X = random_space(rng, 4, dim=2)
            Y = random_space(rng, 4, dim=2)
            f = random_function(rng, X)
            g = random_function(rng, Y)
            i = PointMap(X, Y, rng.integers(0, 4, size=4))
            j = PointMap(Y, X, rng.integers(0, 4, size=4))
            cert = gh0_certificate(f, g, i, j)
            assert cert.value >= gh0_distance(f, g).value
            oracle = six_quantities_oracle(f, g, i.image, j.image)
            assert cert.value == max(oracle)
            assert (
                cert.distortion_i,
                cert.codefect_i,
                cert.supnorm_i,
                cert.distortion_j,
                cert.codefect_j,
                cert.supnorm_j,
            ) == oracle

    def test_net_pair_on_lipschitz_function(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            space = random_space(rng, int(rng.integers(6, 30)))
            target = FunctionOnSpace(space, np.sin(3.0 * space.dist[0]))
            eps = float(rng.uniform(0.15, 0.5)) * space.diameter
            net, incl = epsilon_net(space, eps, seed_index=0)
            proj = approximate_inverse(incl)
            restricted = transfer_function(target, incl)
            bound = gh0_upper_bound(restricted, target, incl, proj)
            osc = oscillation(target, eps * (1 + 1e-9) + 1e-12)
            assert bound <= max(2.0 * eps, osc) + 1e-12

    def test_space_mismatch(self):
        rng = np.random.default_rng(2)
        X = random_space(rng, 3)
        Y = random_space(rng, 4)
        f = random_function(rng, X)
        g = random_function(rng, Y)
        i = PointMap(X, Y, np.zeros(3, dtype=np.int64))
        with pytest.raises(SpaceMismatch):
            gh0_upper_bound(f, g, i, i)


class TestTransferFunction:
    def test_identity_transfer(self):
        rng = np.random.default_rng(3)
        space = random_space(rng, 6)
        f = random_function(rng, space)
        moved = transfer_function(f, PointMap.identity(space))
        assert np.array_equal(moved.values, f.values)

    def test_constant_stays_constant(self):
        rng = np.random.default_rng(4)
        X = random_space(rng, 8)
        f = FunctionOnSpace(X, np.full(8, 1.75))
        net, incl = epsilon_net(X, 0.5 * X.diameter, seed_index=0)
        moved = transfer_function(f, incl)
        assert np.all(moved.values == 1.75)

    def test_sine_on_circle_with_eight_point_net(self):
        space = circle_space(32)
        target = FunctionOnSpace(space, np.sin(2.0 * np.pi * np.arange(32) / 32))
        net, incl = epsilon_net(space, 0.4, seed_index=0)
        assert net.n_points == 8  # dyadic farthest-point refinement
        proj = approximate_inverse(incl)
        restricted = transfer_function(target, incl)
        # restriction agrees with the target on the net, exactly
        assert np.array_equal(restricted.values, target.values[incl.image])
        q = quality(incl).quality
        composed = transfer_function(restricted, proj)
        osc = oscillation(target, 2.0 * q + 1e-9)
        assert sup_norm_distance(composed, target) <= osc
        assert gh0_upper_bound(restricted, target, incl, proj) <= max(2.0 * q, osc)

    def test_space_mismatch(self):
        rng = np.random.default_rng(6)
        X = random_space(rng, 4)
        Y = random_space(rng, 4)
        f = random_function(rng, X)
        with pytest.raises(SpaceMismatch):
            transfer_function(f, PointMap.identity(Y))
