"""Seeded invariant suites, runnable from the CLI or from pytest.

Each suite draws its own random instances, cross-checks an operation
against an independent enumeration, and reports violations as text
instead of raising, so a single run surveys everything.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import MetricError
from .gh0 import gh0_certificate, gh0_distance, transfer_function
from .isometry import PointMap, approximate_inverse, gh_distance, gh_upper_bound, quality
from .measures import FunctionFamily, SignedMeasure, discriminatory_margin, pushforward, separates_check, separation_matrix
from .networks import Activation, ShallowNetwork, Unit, evaluate, interpolate_exact, product_network
from .pipeline import run_pipeline
from .spaces import FunctionOnSpace, epsilon_net, from_point_cloud, oscillation, sup_norm_distance, validate_metric


@dataclass
class PropertyReport:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def ensure(self, condition: bool, message: str) -> None:
        self.checks += 1
        if not condition:
            self.failures.append(message)


def _space(rng, n, dim=3):
    return from_point_cloud(rng.uniform(0.0, 1.0, size=(n, dim)))


def _function(rng, space):
    return FunctionOnSpace(space, rng.uniform(-1.0, 1.0, space.n_points))


def metric_axiom_suite(cases: int, seed: int) -> PropertyReport:
    report = PropertyReport("metric-axioms")
    rng = np.random.default_rng(seed)
    for _ in range(cases):
        n = int(rng.integers(2, 6))
        d = _space(rng, n).dist.copy()
        kind = int(rng.integers(0, 4))
        if kind == 1:
            d[0, n - 1] += rng.uniform(0.1, 1.0)
        elif kind == 2:
            d[0, n - 1] = d[n - 1, 0] = d[0, n - 1] * 10 + 5.0
        elif kind == 3:
            d[0, 1] = d[1, 0] = 0.0
        expected_ok = kind == 0
        try:
            validate_metric(d)
            got_ok = True
        except MetricError:
            got_ok = False
        report.ensure(got_ok == expected_ok, f"axiom verdict mismatch (case {kind})")
    return report


def point_cloud_suite(cases: int, seed: int) -> PropertyReport:
    report = PropertyReport("point-cloud")
    rng = np.random.default_rng(seed)
    for _ in range(cases):
        n = int(rng.integers(2, 12))
        pts = rng.uniform(-2.0, 2.0, size=(n, int(rng.integers(1, 4))))
        space = from_point_cloud(pts)
        k, l = rng.integers(0, n, size=2)
        direct = float(np.sqrt(np.sum((pts[k] - pts[l]) ** 2)))
        report.ensure(
            abs(space.dist[k, l] - direct) <= 1e-12, "distance differs from direct norm"
        )
    return report


def epsilon_net_suite(cases: int, seed: int) -> PropertyReport:
    report = PropertyReport("epsilon-net")
    rng = np.random.default_rng(seed)
    for _ in range(cases):
        n = int(rng.integers(2, 25))
        space = _space(rng, n)
        eps = float(rng.uniform(0.05, 1.0)) * space.diameter
        k = int(rng.integers(0, n))
        net, incl = epsilon_net(space, eps, seed_index=k)
        cover = max(min(space.dist[x, j] for j in incl.image) for x in range(n))
        report.ensure(cover <= eps, "cover radius exceeds eps")
        again = epsilon_net(space, eps, seed_index=k)[1]
        report.ensure(np.array_equal(incl.image, again.image), "net not deterministic")
    return report


def sup_norm_suite(cases: int, seed: int) -> PropertyReport:
    report = PropertyReport("sup-norm-metric")
    rng = np.random.default_rng(seed)
    for _ in range(cases):
        space = _space(rng, int(rng.integers(2, 8)))
        f, g, h = (_function(rng, space) for _ in range(3))
        report.ensure(
            sup_norm_distance(f, g) == sup_norm_distance(g, f), "sup-norm asymmetric"
        )
        report.ensure(
            sup_norm_distance(f, h)
            <= sup_norm_distance(f, g) + sup_norm_distance(g, h) + 1e-15,
            "sup-norm triangle violated",
        )
        report.ensure(sup_norm_distance(f, f) == 0.0, "self distance nonzero")
    return report


def gh_suite(cases: int, seed: int) -> PropertyReport:
    report = PropertyReport("gh-distance")
    rng = np.random.default_rng(seed)
    for _ in range(cases):
        X = _space(rng, int(rng.integers(1, 5)), dim=2)
        Y = _space(rng, int(rng.integers(1, 5)), dim=2)
        exact = gh_distance(X, Y, method="exact")
        bnb = gh_distance(X, Y, method="bnb")
        report.ensure(exact.value == bnb.value, "bnb value differs from exact")
        report.ensure(
            np.array_equal(exact.witness_forward.image, bnb.witness_forward.image)
            and np.array_equal(exact.witness_backward.image, bnb.witness_backward.image),
            "bnb witness differs from exact",
        )
        report.ensure(gh_distance(X, X).value == 0.0, "self distance nonzero")
        report.ensure(
            gh_distance(Y, X).value == exact.value, "gh distance asymmetric"
        )
        i = PointMap(X, Y, rng.integers(0, Y.n_points, X.n_points))
        j = PointMap(Y, X, rng.integers(0, X.n_points, Y.n_points))
        report.ensure(
            gh_upper_bound(i, j) >= exact.value - 0.0, "witness bound below exact value"
        )
    return report


def approximate_inverse_suite(cases: int, seed: int) -> PropertyReport:
    report = PropertyReport("approximate-inverse")
    rng = np.random.default_rng(seed)
    for _ in range(cases):
        X = _space(rng, int(rng.integers(1, 7)))
        Y = _space(rng, int(rng.integers(1, 7)))
        i = PointMap(X, Y, rng.integers(0, Y.n_points, X.n_points))
        q = quality(i).quality
        j = approximate_inverse(i)
        composite = max(
            Y.dist[i.image[j.image[y]], y] for y in range(Y.n_points)
        )
        report.ensure(composite <= q + 1e-12, "composite closeness law violated")
        report.ensure(
            quality(j).distortion <= 3.0 * q + 1e-12, "3x distortion law violated"
        )
    return report


def gh0_suite(cases: int, seed: int) -> PropertyReport:
    report = PropertyReport("gh0-distance")
    rng = np.random.default_rng(seed)
    for _ in range(cases):
        spaces = [_space(rng, int(rng.integers(1, 5)), dim=2) for _ in range(3)]
        f, g, h = (_function(rng, s) for s in spaces)
        dfg = gh0_distance(f, g)
        report.ensure(
            dfg.value == gh0_distance(g, f).value, "gh0 asymmetric"
        )
        report.ensure(
            gh0_distance(f, h).value
            <= 2.0 * (dfg.value + gh0_distance(g, h).value) + 1e-12,
            "relaxed triangle violated",
        )
        shared_g = _function(rng, spaces[0])
        report.ensure(
            gh0_distance(f, shared_g).value <= sup_norm_distance(f, shared_g),
            "gh0 exceeds sup-norm on shared domain",
        )
        bnb = gh0_distance(f, g, method="bnb")
        report.ensure(bnb.value == dfg.value, "gh0 bnb differs from exact")
    return report


def measures_suite(cases: int, seed: int) -> PropertyReport:
    report = PropertyReport("measures")
    rng = np.random.default_rng(seed)
    for _ in range(cases):
        space = _space(rng, int(rng.integers(1, 7)))
        n = space.n_points
        f = FunctionOnSpace(space, rng.integers(0, 3, n).astype(float))
        mu = SignedMeasure(space, rng.integers(-40, 40, n) / 8.0)
        out = pushforward(f, mu, tau=0.0)
        report.ensure(out.total_mass == mu.total_mass, "pushforward mass changed")

        ok, witness = separates_check(FunctionFamily(space, "all-functions"))
        report.ensure(ok and witness is None, "all-functions failed to separate")

        if n >= 2:
            const = FunctionOnSpace(space, np.ones(n))
            ok, witness = separates_check(
                FunctionFamily(space, "explicit-list", (const,))
            )
            annihilated = float(
                np.max(
                    np.abs(
                        separation_matrix(
                            FunctionFamily(space, "explicit-list", (const,))
                        )
                        @ witness.weights
                    )
                )
            )
            report.ensure(not ok, "constants separated a multi-point space")
            report.ensure(annihilated <= 1e-9, "witness not annihilated")
    return report


def networks_suite(cases: int, seed: int) -> PropertyReport:
    report = PropertyReport("networks")
    rng = np.random.default_rng(seed)
    lg = Activation.logistic()
    sq = Activation.power(1.0, 2)
    for _ in range(cases):
        space = _space(rng, int(rng.integers(2, 7)))
        n = space.n_points
        # constant features evaluate to constants
        units = tuple(
            Unit(
                a=float(rng.uniform(-1, 1)),
                theta=float(rng.uniform(-1, 1)),
                f=FunctionOnSpace(space, np.full(n, float(rng.uniform(-1, 1)))),
            )
            for _ in range(2)
        )
        for sigma in (lg, sq):
            vals = evaluate(ShallowNetwork(space, sigma, units)).values
            report.ensure(float(np.ptp(vals)) == 0.0, "constant features not constant")
        # zero features only give constants
        zero_units = tuple(
            Unit(
                a=float(rng.uniform(-1, 1)),
                theta=float(rng.uniform(-1, 1)),
                f=FunctionOnSpace(space, np.zeros(n)),
            )
            for _ in range(3)
        )
        vals = evaluate(ShallowNetwork(space, lg, zero_units)).values
        report.ensure(float(np.ptp(vals)) == 0.0, "zero features not constant")
        # injective activation keeps separation
        fvals = rng.uniform(-1, 1, n)
        net = ShallowNetwork(
            space, lg, (Unit(a=1.0, theta=0.0, f=FunctionOnSpace(space, fvals)),)
        )
        out = evaluate(net).values
        x, y = 0, 1
        if fvals[x] != fvals[y]:
            report.ensure(out[x] != out[y], "injective sigma merged separated points")
        # product closure
        def rand_net(units_count):
            return ShallowNetwork(
                space,
                sq,
                tuple(
                    Unit(
                        a=float(rng.uniform(-1, 1)),
                        theta=float(rng.uniform(-1, 1)),
                        f=_function(rng, space),
                    )
                    for _ in range(units_count)
                ),
            )

        n1, n2 = rand_net(int(rng.integers(1, 4))), rand_net(int(rng.integers(1, 4)))
        prod = evaluate(product_network(n1, n2)).values
        direct = evaluate(n1).values * evaluate(n2).values
        report.ensure(
            float(np.max(np.abs(prod - direct))) <= 1e-9, "product network off"
        )
        # interpolation re-verified by evaluation
        target = _function(rng, space)
        fitted = interpolate_exact(space, target, lg, tol=1e-8)
        report.ensure(
            sup_norm_distance(evaluate(fitted), target) <= 1e-8,
            "interpolation residual above tol",
        )
    return report


def pipeline_suite(cases: int, seed: int) -> PropertyReport:
    report = PropertyReport("density-pipeline")
    rng = np.random.default_rng(seed)
    lg = Activation.logistic()
    for _ in range(cases):
        space = _space(rng, int(rng.integers(2, 5)), dim=2)
        target = _function(rng, space)
        eps = 2.0 * space.diameter + 2.0 * float(np.abs(target.values).max()) + 0.25
        result = run_pipeline(target, eps, lg)
        cert = result.certificate
        report.ensure(cert.passed, "oversized-eps run failed to pass")
        report.ensure(
            cert.bound == max(cert.components().values()), "bound != max component"
        )
        recomputed = gh0_certificate(
            evaluate(result.network), target, cert.witness_i, cert.witness_j
        ).value
        report.ensure(recomputed == cert.bound, "stored witnesses do not reproduce bound")
        exact = gh0_distance(evaluate(result.network), target).value
        report.ensure(exact <= cert.bound, "exact distance above certified bound")
        report.ensure(cert.fit_error <= eps / 8.0, "fit leg over budget")
        restricted = transfer_function(target, cert.witness_i)
        tb = gh0_certificate(restricted, target, cert.witness_i, cert.witness_j).value
        report.ensure(tb <= eps / 4.0, "transfer leg over budget")
    return report


def margin_suite(cases: int, seed: int) -> PropertyReport:
    report = PropertyReport("discriminatory-margin")
    rng = np.random.default_rng(seed)
    lg = Activation.logistic()
    space = _space(rng, 4)
    base = FunctionOnSpace(space, np.array([0.0, 1.0, 2.5, 4.0]))
    separating = FunctionFamily(space, "linear-span", (base,))
    consts = FunctionFamily(
        space, "explicit-list", (FunctionOnSpace(space, np.ones(4)),)
    )
    for s in range(min(cases, 10)):
        hi = discriminatory_margin(lg, separating, samples=200, seed=seed + s)
        lo = discriminatory_margin(lg, consts, samples=200, seed=seed + s)
        report.ensure(hi > 1e-4, "separating family margin collapsed")
        report.ensure(lo < 1e-8, "constant family margin did not collapse")
    return report


ALL_SUITES = (
    metric_axiom_suite,
    point_cloud_suite,
    epsilon_net_suite,
    sup_norm_suite,
    gh_suite,
    approximate_inverse_suite,
    gh0_suite,
    measures_suite,
    networks_suite,
    pipeline_suite,
    margin_suite,
)


def run_all(cases: int = 100, seed: int = 0) -> list[PropertyReport]:
    return [suite(cases, seed) for suite in ALL_SUITES]
