import numpy as np
import pytest
import sympy

from ghdense.errors import DomainMismatch
from ghdense.measures import (
    FunctionFamily,
    GroupedMeasure,
    SignedMeasure,
    discriminatory_margin,
    pushforward,
    separates_check,
    separation_matrix,
)
from ghdense.networks import Activation
from ghdense.spaces import FunctionOnSpace

from conftest import line_space, random_space


def integer_level_family(rng, space, n_members, n_levels):
    """Members with few integer levels: ties make separation nontrivial."""
    members = tuple(
        FunctionOnSpace(space, rng.integers(0, n_levels, space.n_points).astype(float))
        for _ in range(n_members)
    )
    return FunctionFamily(space, "explicit-list", members)


def null_space_oracle(family):
    """Exact rank over the rationals: indicator rows are 0/1 integers."""
    A = separation_matrix(family)
    rank = sympy.Matrix(A.astype(int)).rank()
    return rank == family.space.n_points


class TestPushforward:
    def test_injective_identity_values_keep_measure(self):
        values = np.array([0.0, 0.5, 1.25, 3.0])
        space = line_space(values)
        f = FunctionOnSpace(space, values)
        mu = SignedMeasure(space, np.array([1.0, -2.0, 0.25, 4.0]))
        out = pushforward(f, mu, tau=0.0)
        assert np.array_equal(out.support, values)
        assert np.array_equal(out.weights, mu.weights)

    def test_constant_function_with_zero_mass(self):
        space = line_space([0.0, 1.0, 2.0])
        f = FunctionOnSpace(space, np.full(3, 7.0))
        mu = SignedMeasure(space, np.array([1.0, 1.0, -2.0]))
        out = pushforward(f, mu)
        assert out.support.tolist() == [7.0]
        assert out.weights.tolist() == [0.0]

    def test_tau_grouping_hand_oracle(self):
        tau = 0.25
        space = line_space([0.0, 1.0, 2.0])
        f = FunctionOnSpace(space, np.array([1.0, 1.0 + tau / 2, 2.0]))
        mu = SignedMeasure(space, np.array([1.0, 2.0, 5.0]))
        out = pushforward(f, mu, tau=tau)
        assert out.support.tolist() == [1.0, 2.0]
        assert out.weights.tolist() == [3.0, 5.0]

    def test_mass_preserved_exactly_on_dyadic_weights(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            space = random_space(rng, int(rng.integers(2, 9)))
            f = FunctionOnSpace(
                space, rng.integers(0, 3, space.n_points).astype(float)
            )
            mu = SignedMeasure(
                space, rng.integers(-80, 80, space.n_points) / 16.0
            )
            tau = float(rng.choice([0.0, 1e-9, 0.5]))
            out = pushforward(f, mu, tau=tau)
            assert out.total_mass == mu.total_mass

    def test_domain_mismatch(self):
        f = FunctionOnSpace(line_space([0.0, 1.0]), np.zeros(2))
        mu = SignedMeasure(line_space([0.0, 2.0]), np.ones(2))
        with pytest.raises(DomainMismatch):
            pushforward(f, mu)

    def test_grouped_measure_support_must_increase(self):
        with pytest.raises(ValueError):
            GroupedMeasure(np.array([1.0, 1.0]), np.array([0.5, 0.5]))


class TestSeparatesCheck:
    def test_all_functions_always_separates(self):
        rng = np.random.default_rng(0)
        for n in (1, 2, 4, 6):
            family = FunctionFamily(random_space(rng, n), "all-functions")
            ok, witness = separates_check(family)
            assert ok and witness is None

    def test_constant_family_on_two_points(self):
        space = line_space([0.0, 1.0])
        const = FunctionOnSpace(space, np.ones(2))
        family = FunctionFamily(space, "explicit-list", (const,))
        ok, witness = separates_check(family)
        assert not ok
        assert np.allclose(witness.weights, [1.0, -1.0])

    def test_injective_function_on_line_separates(self):
        values = np.array([0.0, 0.3, 1.1, 2.0])
        space = line_space(values)
        family = FunctionFamily(
            space, "explicit-list", (FunctionOnSpace(space, values),)
        )
        ok, witness = separates_check(family)
        assert ok and witness is None

    def test_agrees_with_exact_rank_oracle(self):
        rng = np.random.default_rng(11)
        disagreements = 0
        seen_true = seen_false = 0
        for _ in range(200):
            space = random_space(rng, int(rng.integers(1, 7)))
            family = integer_level_family(
                rng, space, int(rng.integers(1, 4)), int(rng.integers(1, 4))
            )
            ok, witness = separates_check(family)
            if ok != null_space_oracle(family):
                disagreements += 1
            if ok:
                seen_true += 1
            else:
                seen_false += 1
                A = separation_matrix(family)
                assert np.max(np.abs(A @ witness.weights)) <= 1e-9
                assert np.max(np.abs(witness.weights)) == 1.0
        assert disagreements == 0
        assert seen_true > 10 and seen_false > 10

    def test_witness_deterministic(self):
        rng = np.random.default_rng(5)
        space = random_space(rng, 5)
        family = integer_level_family(rng, space, 2, 2)
        _, w1 = separates_check(family)
        _, w2 = separates_check(family)
        if w1 is not None:
            assert np.array_equal(w1.weights, w2.weights)

    def test_span_basis_independence_enforced(self):
        space = line_space([0.0, 1.0, 2.0])
        f = FunctionOnSpace(space, np.array([1.0, 2.0, 3.0]))
        g = FunctionOnSpace(space, np.array([2.0, 4.0, 6.0]))
        with pytest.raises(ValueError):
            FunctionFamily(space, "linear-span", (f, g))


class TestDiscriminatoryMargin:
    def test_single_point_space_positive_margin(self):
        space = line_space([0.0])
        zero = FunctionOnSpace(space, np.zeros(1))
        family = FunctionFamily(space, "explicit-list", (zero,))
        margin = discriminatory_margin(Activation.logistic(), family, samples=50)
        assert margin > 0.0

    def test_constant_family_margin_collapses(self):
        space = line_space([0.0, 1.0])
        const = FunctionOnSpace(space, np.ones(2))
        family = FunctionFamily(space, "explicit-list", (const,))
        for seed in range(10):
            margin = discriminatory_margin(
                Activation.logistic(), family, samples=200, seed=seed
            )
            assert margin < 1e-8

    def test_separating_span_margin_stays_positive(self):
        rng = np.random.default_rng(13)
        space = random_space(rng, 4)
        base = FunctionOnSpace(space, np.array([0.0, 1.0, 2.5, 4.0]))
        family = FunctionFamily(space, "linear-span", (base,))
        for seed in range(10):
            margin = discriminatory_margin(
                Activation.logistic(), family, samples=200, seed=seed
            )
            assert margin > 1e-4

    def test_deterministic_given_seed(self):
        space = line_space([0.0, 1.0, 2.0])
        family = FunctionFamily(space, "all-functions")
        a = discriminatory_margin(Activation.logistic(), family, seed=42)
        b = discriminatory_margin(Activation.logistic(), family, seed=42)
        assert a == b

    def test_fewer_samples_than_points_gives_zero(self):
        rng = np.random.default_rng(1)
        space = random_space(rng, 5)
        family = FunctionFamily(space, "all-functions")
        assert discriminatory_margin(Activation.logistic(), family, samples=3) == 0.0
