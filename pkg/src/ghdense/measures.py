"""Signed measures on finite spaces, pushforward, separation checks.

On a finite space a signed measure is just a weight vector.  A family of
functions separates the measures when the only weight vector whose
pushforward along every member vanishes is zero; that reduces to a null
space computation on level-set indicator rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainMismatch
from .spaces import FiniteMetricSpace, FunctionOnSpace

RANK_REL_TOL = 1e-10


@dataclass(frozen=True)
class SignedMeasure:
    """Weight vector over a space's points."""

    space: FiniteMetricSpace
    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64, copy=True)
        if w.ndim != 1 or w.shape[0] != self.space.n_points:
            raise DomainMismatch(
                f"expected {self.space.n_points} weights, got shape {w.shape}"
            )
        if not np.all(np.isfinite(w)):
            raise ValueError("measure weights must be finite")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())


@dataclass(frozen=True)
class GroupedMeasure:
    """Pushforward onto the real line: grouped values with summed weights."""

    support: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        s = np.array(self.support, dtype=np.float64, copy=True)
        w = np.array(self.weights, dtype=np.float64, copy=True)
        if s.shape != w.shape or s.ndim != 1:
            raise ValueError("support and weights must be 1-d of equal length")
        if s.size > 1 and not np.all(np.diff(s) > 0):
            raise ValueError("support must be strictly increasing")
        s.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "support", s)
        object.__setattr__(self, "weights", w)

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())


@dataclass(frozen=True)
class FunctionFamily:
    """Feature family: explicit list, linear span of a basis, or everything.

    The linear-span and all-functions kinds are closed under scaling by
    construction; the span's basis must be linearly independent.
    """

    space: FiniteMetricSpace
    kind: str  # "explicit-list" | "linear-span" | "all-functions"
    members: tuple[FunctionOnSpace, ...] = ()

    def __post_init__(self):
        if self.kind not in ("explicit-list", "linear-span", "all-functions"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        members = tuple(self.members)
        for f in members:
            if not f.space.same_space(self.space):
                raise DomainMismatch("family members must share the family's space")
        if self.kind == "all-functions" and members:
            raise ValueError("all-functions kind takes no explicit members")
        if self.kind == "linear-span":
            if not members:
                raise ValueError("linear-span needs a basis")
            basis = np.stack([f.values for f in members])
            sv = np.linalg.svd(basis, compute_uv=False)
            if sv[-1] <= RANK_REL_TOL * sv[0]:
                raise ValueError("linear-span basis is linearly dependent")
        object.__setattr__(self, "members", members)

    def representative_members(self) -> tuple[FunctionOnSpace, ...]:
        """Functions whose level sets generate the separation system.

        For all-functions the point indicators suffice: they pin every
        point individually.
        """
        if self.kind != "all-functions":
            return self.members
        n = self.space.n_points
        eye = np.eye(n)
        return tuple(FunctionOnSpace(self.space, eye[k]) for k in range(n))


def group_values(values: np.ndarray, tau: float) -> list[np.ndarray]:
    """Single-linkage grouping of sorted values: gaps <= tau merge.

    tau = 0 groups exactly equal values.  Returns index groups in
    increasing value order.
    """
    order = np.argsort(values, kind="stable")
    groups: list[list[int]] = [[int(order[0])]]
    for prev, cur in zip(order[:-1], order[1:]):
        if values[cur] - values[prev] <= tau:
            groups[-1].append(int(cur))
        else:
            groups.append([int(cur)])
    return [np.array(g, dtype=np.int64) for g in groups]


def pushforward(f: FunctionOnSpace, mu: SignedMeasure, tau: float = 0.0) -> GroupedMeasure:
    """Transport point weights along the function's values.

    Values within tau of their sorted neighbor merge into one group whose
    weight is the sum over the preimage; the group is represented by its
    smallest value.
    """
    if not f.space.same_space(mu.space):
        raise DomainMismatch("function and measure live on different spaces")
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    groups = group_values(f.values, tau)
    support = np.array([f.values[g].min() for g in groups])
    weights = np.array([mu.weights[g].sum() for g in groups])
    return GroupedMeasure(support=support, weights=weights)


def separation_matrix(family: FunctionFamily, tau: float = 0.0) -> np.ndarray:
    """One indicator row per (member, level group): sums mu over a preimage."""
    n = family.space.n_points
    rows = []
    for f in family.representative_members():
        for g in group_values(f.values, tau):
            row = np.zeros(n)
            row[g] = 1.0
            rows.append(row)
    if not rows:
        return np.zeros((0, n))
    return np.stack(rows)


def _first_free_null_vector(A: np.ndarray, tol: float) -> np.ndarray | None:
    """Deterministic null vector: RREF, set the smallest-index free variable
    to one, back-substitute the pivots."""
    A = A.astype(np.float64, copy=True)
    rows, cols = A.shape
    pivot_cols: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        p = r + int(np.argmax(np.abs(A[r:, c])))
        if abs(A[p, c]) <= tol:
            continue
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = A[r] / A[r, c]
        mask = np.arange(rows) != r
        A[mask] -= np.outer(A[mask, c], A[r])
        pivot_cols.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivot_cols]
    if not free:
        return None
    j0 = free[0]
    x = np.zeros(cols)
    x[j0] = 1.0
    for rr, c in enumerate(pivot_cols):
        x[c] = -A[rr, j0]
    x = x / np.abs(x).max()
    nz = np.flatnonzero(x)
    if x[nz[0]] < 0:
        x = -x
    return x


def separates_check(
    family: FunctionFamily, tau: float = 0.0
) -> tuple[bool, SignedMeasure | None]:
    """Does the family separate signed measures on its space?

    True iff the level-set system has full column rank (relative tolerance
    1e-10 on singular values); otherwise returns a unit-max-norm witness
    measure annihilated by every member's pushforward.
    """
    A = separation_matrix(family, tau)
    n = family.space.n_points
    if A.shape[0] == 0:
        witness = np.zeros(n)
        witness[0] = 1.0
        return False, SignedMeasure(family.space, witness)
    sv = np.linalg.svd(A, compute_uv=False)
    cutoff = RANK_REL_TOL * sv[0]
    rank = int(np.sum(sv > cutoff))
    if rank == n:
        return True, None
    x = _first_free_null_vector(A, cutoff)
    if x is None:  # elimination disagreed with svd rank near tolerance
        x = np.linalg.svd(A)[2][-1]
        x = x / np.abs(x).max()
        nz = np.flatnonzero(x)
        if x[nz[0]] < 0:
            x = -x
    return False, SignedMeasure(family.space, x)


def draw_member(family: FunctionFamily, rng: np.random.Generator) -> FunctionOnSpace:
    """Sample one function from the family (seeded by the caller's rng)."""
    n = family.space.n_points
    if family.kind == "explicit-list":
        if not family.members:
            raise ValueError("cannot sample from an empty explicit list")
        return family.members[int(rng.integers(len(family.members)))]
    if family.kind == "linear-span":
        coefs = rng.standard_normal(len(family.members))
        basis = np.stack([f.values for f in family.members])
        return FunctionOnSpace(family.space, coefs @ basis)
    return FunctionOnSpace(family.space, rng.standard_normal(n))


def discriminatory_margin(
    sigma: Callable[[np.ndarray], np.ndarray],
    family: FunctionFamily,
    samples: int = 200,
    lambda_range: Sequence[float] = (0.5, 3.0),
    theta_range: Sequence[float] = (-3.0, 3.0),
    seed: int = 0,
) -> float:
    """Numerical evidence that sigma is discriminatory for the family.

    Samples rows sigma(lambda * f(x) + theta) and returns the smallest
    singular value of the sample matrix.  A large margin means no measure
    close to unit size annihilates all sampled rows; this is evidence, not
    a proof of the universally quantified property.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = np.random.default_rng(seed)
    n = family.space.n_points
    rows = np.empty((samples, n))
    for s in range(samples):
        f = draw_member(family, rng)
        lam = rng.uniform(lambda_range[0], lambda_range[1])
        theta = rng.uniform(theta_range[0], theta_range[1])
        rows[s] = sigma(lam * f.values + theta)
    if samples < n:
        return 0.0
    return float(np.linalg.svd(rows, compute_uv=False)[-1])
