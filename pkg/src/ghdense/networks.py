"""Activations, shallow networks over finite domains, and fitting.

A network is a finite sum sum_j a_j * sigma(f_j(x) + theta_j) whose
features f_j are functions on one shared finite space.  Exact
interpolation uses distance features f_k = -lambda * d(., x_k) with
half-separation offsets, which makes the design matrix diagonally
dominant once lambda is large.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ActivationNotMultiplicative, SingularSystem, SpaceMismatch
from .measures import FunctionFamily, draw_member
from .spaces import FiniteMetricSpace, FunctionOnSpace

SIGMOIDAL_T_LIST = (1.0, 2.0, 4.0, 8.0, 16.0, 32.0)
SIGMOIDAL_TOL = 1e-6
_MAX_LAMBDA_DOUBLINGS = 60


@dataclass(frozen=True)
class Activation:
    """Scalar activation with checked metadata.

    sigmoidal is set iff the tails numerically approach 0 and 1;
    multiplicative_A is set iff sigma(t)*sigma(s) = A*sigma(t*s) held on a
    sample sweep (exact for the power kinds).
    """

    kind: str
    a: float = 1.0
    p: float = 1.0
    table_t: tuple[float, ...] | None = None
    table_v: tuple[float, ...] | None = None
    sigmoidal: bool = field(default=False, compare=False)
    multiplicative_A: float | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in (
            "logistic",
            "hard-step",
            "power-abs",
            "power",
            "abs-scale",
            "custom-table",
        ):
            raise ValueError(f"unknown activation kind {self.kind!r}")
        if self.kind in ("power-abs", "power", "abs-scale") and self.a == 0:
            raise ValueError("zero activation is not allowed")
        if self.kind == "power" and (self.p != int(self.p) or self.p < 1):
            raise ValueError("power kind needs a positive integer exponent")
        if self.kind == "power-abs" and self.p < 0:
            raise ValueError("power-abs kind needs a nonnegative exponent")
        if self.kind == "custom-table":
            if not self.table_t or not self.table_v:
                raise ValueError("custom-table needs sample points and values")
            if len(self.table_t) != len(self.table_v):
                raise ValueError("table lengths differ")
            if not all(b > a for a, b in zip(self.table_t, self.table_t[1:])):
                raise ValueError("table abscissae must be strictly increasing")
            if all(v == 0 for v in self.table_v):
                raise ValueError("zero activation is not allowed")
        object.__setattr__(self, "sigmoidal", check_sigmoidal(self))
        A = None
        if self.kind in ("power-abs", "power", "abs-scale"):
            if check_multiplicative(self, self.a)[0]:
                A = self.a
        object.__setattr__(self, "multiplicative_A", A)

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        if self.kind == "logistic":
            out = np.empty_like(t)
            pos = t >= 0
            out[pos] = 1.0 / (1.0 + np.exp(-t[pos]))
            et = np.exp(t[~pos])
            out[~pos] = et / (1.0 + et)
            return out
        if self.kind == "hard-step":
            return (t >= 0).astype(np.float64)
        if self.kind == "power-abs":
            return self.a * np.abs(t) ** self.p
        if self.kind == "power":
            return self.a * t ** int(self.p)
        if self.kind == "abs-scale":
            return self.a * np.abs(t)
        return np.interp(t, np.asarray(self.table_t), np.asarray(self.table_v))

    @classmethod
    def logistic(cls) -> "Activation":
        return cls(kind="logistic")

    @classmethod
    def hard_step(cls) -> "Activation":
        return cls(kind="hard-step")

    @classmethod
    def power_abs(cls, a: float, p: float) -> "Activation":
        return cls(kind="power-abs", a=a, p=p)

    @classmethod
    def power(cls, a: float, p: int) -> "Activation":
        return cls(kind="power", a=a, p=p)

    @classmethod
    def abs_scale(cls, a: float) -> "Activation":
        return cls(kind="abs-scale", a=a)

    @classmethod
    def from_table(cls, t, v) -> "Activation":
        return cls(
            kind="custom-table",
            table_t=tuple(float(x) for x in t),
            table_v=tuple(float(x) for x in v),
        )


def check_sigmoidal(sigma, t_list=SIGMOIDAL_T_LIST, tol=SIGMOIDAL_TOL) -> bool:
    """Tails approach 0 at -inf and 1 at +inf, monotonically along t_list."""
    if not t_list:
        raise ValueError("t_list must be nonempty")
    ts = np.asarray(t_list, dtype=np.float64)
    dev_neg = np.abs(sigma(-ts))
    dev_pos = np.abs(sigma(ts) - 1.0)
    devs = np.maximum(dev_neg, dev_pos)
    if dev_neg[-1] > tol or dev_pos[-1] > tol:
        return False
    return bool(np.all(np.diff(devs) <= 0))


def check_multiplicative(
    sigma, A: float, samples: int = 256, seed: int = 0, tol: float = 1e-9
):
    """Sample test of sigma(t) * sigma(s) = A * sigma(t * s) on [-10, 10]^2.

    Returns (ok, first counterexample or None).
    """
    if A == 0:
        raise ValueError("A must be nonzero")
    rng = np.random.default_rng(seed)
    ts = rng.uniform(-10.0, 10.0, size=(samples, 2))
    left = sigma(ts[:, 0]) * sigma(ts[:, 1])
    right = A * sigma(ts[:, 0] * ts[:, 1])
    bad = np.abs(left - right) > tol * (1.0 + np.abs(right))
    if bad.any():
        k = int(np.argmax(bad))
        return False, (float(ts[k, 0]), float(ts[k, 1]))
    return True, None


@dataclass(frozen=True, eq=False)
class Unit:
    a: float
    theta: float
    f: FunctionOnSpace


@dataclass(frozen=True, eq=False)
class ShallowNetwork:
    """Units (a_j, theta_j, f_j) over a shared space plus an activation."""

    space: FiniteMetricSpace
    activation: Activation
    units: tuple[Unit, ...]

    def __post_init__(self):
        units = tuple(self.units)
        if len(units) < 1:
            raise ValueError("a network needs at least one unit")
        for u in units:
            if not u.f.space.same_space(self.space):
                raise SpaceMismatch("unit features must share the network's space")
        object.__setattr__(self, "units", units)

    @property
    def n_units(self) -> int:
        return len(self.units)


def evaluate(net: ShallowNetwork) -> FunctionOnSpace:
    """values[x] = sum_j a_j * sigma(f_j(x) + theta_j).

    Summed column-wise so equal columns give bit-equal outputs (constant
    features evaluate to exact constants); BLAS matvec would not.
    """
    feats = np.stack([u.f.values for u in net.units])
    thetas = np.array([u.theta for u in net.units])
    coefs = np.array([u.a for u in net.units])
    terms = coefs[:, None] * net.activation(feats + thetas[:, None])
    return FunctionOnSpace(net.space, terms.sum(axis=0))


def constant_network(
    space: FiniteMetricSpace, activation: Activation, value: float
) -> ShallowNetwork:
    """One-unit network evaluating to a constant: a * sigma(0 + theta) = value."""
    theta = _nonzero_activation_point(activation)
    s = float(activation(np.array([theta]))[0])
    zero = FunctionOnSpace(space, np.zeros(space.n_points))
    return ShallowNetwork(space, activation, (Unit(a=value / s, theta=theta, f=zero),))


def _nonzero_activation_point(activation: Activation) -> float:
    for theta in (1.0, 0.0, -1.0, 2.0, -2.0, 5.0, -5.0):
        if float(activation(np.array([theta]))[0]) != 0.0:
            return theta
    raise ValueError("activation vanished at every probe point")


def product_network(n1: ShallowNetwork, n2: ShallowNetwork) -> ShallowNetwork:
    """Unit-by-unit product using the multiplicative law of the activation.

    sigma(u) * sigma(v) = A * sigma(u * v) turns the product of two sums
    into an N*M-unit network with features f_i * g_j + theta'_j * f_i +
    theta_i * g_j.
    """
    if not n1.space.same_space(n2.space):
        raise SpaceMismatch("networks live on different spaces")
    if n1.activation != n2.activation:
        raise ValueError("networks must share one activation")
    A = n1.activation.multiplicative_A
    if A is None:
        raise ActivationNotMultiplicative(
            f"activation {n1.activation.kind!r} has no multiplicative constant"
        )
    units = []
    for u in n1.units:
        for v in n2.units:
            values = u.f.values * v.f.values + v.theta * u.f.values + u.theta * v.f.values
            units.append(
                Unit(
                    a=u.a * v.a * A,
                    theta=u.theta * v.theta,
                    f=FunctionOnSpace(n1.space, values),
                )
            )
    return ShallowNetwork(n1.space, n1.activation, tuple(units))


def _neighbor_separations(space: FiniteMetricSpace) -> np.ndarray:
    n = space.n_points
    if n == 1:
        return np.array([2.0])  # theta = 1 for the singleton
    masked = space.dist + np.diag(np.full(n, np.inf))
    return masked.min(axis=1)


def interpolate_exact(
    space: FiniteMetricSpace,
    target: FunctionOnSpace,
    sigma: Activation,
    lam: float | str = "auto",
    tol: float = 1e-9,
) -> ShallowNetwork:
    """Exact interpolation with |X| distance features f_k = -lambda*d(., x_k).

    theta_k = lambda * r_k / 2 splits each point from the rest, so the
    design matrix tends to the identity as lambda grows.  lambda='auto'
    doubles from 1 until the matrix is strictly diagonally dominant and
    the verified residual is within tol.
    """
    if not target.space.same_space(space):
        raise SpaceMismatch("target must live on the interpolation space")
    if not sigma.sigmoidal:
        raise ValueError("interpolation needs a sigmoidal activation")
    if isinstance(lam, str):
        if lam != "auto":
            raise ValueError(f"lam must be a positive number or 'auto', got {lam!r}")
        lambdas = [float(2**k) for k in range(_MAX_LAMBDA_DOUBLINGS + 1)]
    else:
        if lam <= 0:
            raise ValueError("lam must be positive")
        lambdas = [float(lam)]

    half_sep = 0.5 * _neighbor_separations(space)
    n = space.n_points
    last_residual = np.inf
    for lam_k in lambdas:
        feats = -lam_k * space.dist.T  # row k = feature values of unit k
        thetas = lam_k * half_sep
        design = sigma(feats + thetas[:, None]).T  # design[x, k]
        diag = np.abs(np.diag(design))
        margin = float((diag - (np.abs(design).sum(axis=1) - diag)).min())
        if margin <= 0:
            continue
        try:
            coefs = np.linalg.solve(design, target.values)
        except np.linalg.LinAlgError:
            continue
        units = tuple(
            Unit(a=float(coefs[k]), theta=float(thetas[k]), f=FunctionOnSpace(space, feats[k]))
            for k in range(n)
        )
        net = ShallowNetwork(space, sigma, units)
        last_residual = float(np.max(np.abs(evaluate(net).values - target.values)))
        if last_residual <= tol:
            return net
    raise SingularSystem(
        f"no lambda reached residual {tol:g} (last residual {last_residual:g}); "
        "degenerate geometry or tolerance too tight"
    )


def fit_least_squares(
    space: FiniteMetricSpace,
    target: FunctionOnSpace,
    sigma: Activation,
    family: FunctionFamily,
    n_units: int,
    theta_range=(-1.0, 1.0),
    seed: int = 0,
) -> tuple[ShallowNetwork, float]:
    """Random-feature fit: draw units from the family, solve for weights.

    Deterministic given the seed.  A poor fit is reported, not raised.
    Explicit lists of at least n_units members are sampled without
    replacement, so n_units = |members| uses every member exactly once.
    """
    if n_units < 1:
        raise ValueError("need at least one unit")
    if not target.space.same_space(space):
        raise SpaceMismatch("target must live on the fitting space")
    rng = np.random.default_rng(seed)
    if family.kind == "explicit-list" and n_units <= len(family.members):
        picks = rng.choice(len(family.members), size=n_units, replace=False)
        feats = [family.members[int(k)] for k in picks]
    else:
        feats = [draw_member(family, rng) for _ in range(n_units)]
    thetas = rng.uniform(theta_range[0], theta_range[1], size=n_units)
    design = sigma(
        np.stack([f.values for f in feats]) + thetas[:, None]
    ).T  # design[x, j]
    coefs, *_ = np.linalg.lstsq(design, target.values, rcond=None)
    units = tuple(
        Unit(a=float(coefs[j]), theta=float(thetas[j]), f=feats[j])
        for j in range(n_units)
    )
    net = ShallowNetwork(space, sigma, units)
    sup_error = float(np.max(np.abs(evaluate(net).values - target.values)))
    return net, sup_error
