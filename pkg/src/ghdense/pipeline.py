"""Certified approximation pipeline: discretize, transfer, fit, certify.

Given a target function on a finite space and a tolerance eps, build a
shallow network on an eps-scale net whose distance to the target is
certified below eps by an explicit witness pair.  The certificate is the
direct six-component bound on (network, target); the looser chained bound
through the restriction is recorded alongside for reference.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .errors import FitFailed, NetExhausted, SingularSystem
from .gh0 import gh0_certificate, transfer_function
from .isometry import PointMap, approximate_inverse, codefect
from .networks import Activation, ShallowNetwork, evaluate, interpolate_exact
from .spaces import FiniteMetricSpace, FunctionOnSpace, epsilon_net, sup_norm_distance


@dataclass(frozen=True)
class PipelineOptions:
    max_net_shrink_steps: int = 20
    fit_tol_fraction: float = 0.125
    net_seed_index: int = 0


@dataclass(frozen=True)
class BudgetRecord:
    """Error-budget split, allocations next to achieved values.

    The certificate passes on the direct bound; the chained value
    2 * (transfer + fit) is the conservative proof-side route and stays
    below eps by construction (3/4 * eps with the default split).
    """

    epsilon: float
    transfer_allocation: float  # eps / 4
    fit_allocation: float  # eps / 8
    transfer_achieved: float
    fit_achieved: float
    chained_allocation: float  # 2 * (eps/8 + eps/4) = 3 eps / 4
    chained_achieved: float
    paper_allocations: tuple[float, float, float]  # (eps/4, eps/16, eps/16)
    paper_chain_total: float  # 2*(eps/4 + 2*(eps/16 + eps/16)) = eps


@dataclass(frozen=True, eq=False)
class DensityCertificate:
    """Witness-backed upper bound on the function distance, versus eps."""

    epsilon: float
    net_radius: float
    fit_error: float
    distortion_i: float
    codefect_i: float
    supnorm_i: float
    distortion_j: float
    codefect_j: float
    supnorm_j: float
    bound: float
    passed: bool
    budget: BudgetRecord
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


@dataclass(frozen=True, eq=False)
class PipelineResult:
    net_space: FiniteMetricSpace
    network: ShallowNetwork
    certificate: DensityCertificate


def _shrink_net(target, epsilon, options):
    """Nets at radius eps/4, then halving the achieved cover radius until
    the restriction's transfer bound fits in eps/4.

    Halving the achieved radius (not the request) keeps the transfer
    quality max(quality(i), quality(j)) non-increasing: the new projection
    distorts by at most twice the new cover, which is at most the old one.
    """
    space = target.space
    radius = epsilon / 4.0
    for _ in range(options.max_net_shrink_steps + 1):
        net, incl = epsilon_net(space, radius, seed_index=options.net_seed_index)
        proj = approximate_inverse(incl)
        restricted = transfer_function(target, incl)
        transfer_bound = gh0_certificate(restricted, target, incl, proj).value
        if transfer_bound <= epsilon / 4.0:
            return net, incl, proj, restricted, transfer_bound
        cover = codefect(incl)
        radius = cover / 2.0
    raise NetExhausted(
        f"transfer bound stayed above eps/4 = {epsilon / 4.0:g} after "
        f"{options.max_net_shrink_steps} shrink steps"
    )


def run_pipeline(
    target: FunctionOnSpace,
    epsilon: float,
    sigma: Activation,
    options: PipelineOptions = PipelineOptions(),
) -> PipelineResult:
    """Produce a network on a net of the target's domain, certified below eps.

    Pass/fail is decided by the direct witness bound on (network, target);
    soundness: pass implies the true function distance is below eps.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if not sigma.sigmoidal:
        raise ValueError("pipeline needs a sigmoidal activation")

    net, incl, proj, restricted, transfer_bound = _shrink_net(target, epsilon, options)

    fit_tol = options.fit_tol_fraction * epsilon
    try:
        network = interpolate_exact(net, restricted, sigma, lam="auto", tol=fit_tol)
    except SingularSystem as err:
        raise FitFailed(f"interpolation failed on the net: {err}") from err
    net_fn = evaluate(network)
    fit_error = sup_norm_distance(net_fn, restricted)

    cert = gh0_certificate(net_fn, target, incl, proj)
    budget = BudgetRecord(
        epsilon=epsilon,
        transfer_allocation=epsilon / 4.0,
        fit_allocation=epsilon / 8.0,
        transfer_achieved=transfer_bound,
        fit_achieved=fit_error,
        chained_allocation=2.0 * (epsilon / 8.0 + epsilon / 4.0),
        chained_achieved=2.0 * (fit_error + transfer_bound),
        paper_allocations=(epsilon / 4.0, epsilon / 16.0, epsilon / 16.0),
        paper_chain_total=2.0 * (epsilon / 4.0 + 2.0 * (epsilon / 16.0 + epsilon / 16.0)),
    )
    certificate = DensityCertificate(
        epsilon=epsilon,
        net_radius=codefect(incl),
        fit_error=fit_error,
        bound=cert.value,
        passed=bool(cert.value < epsilon),
        budget=budget,
        witness_i=incl,
        witness_j=proj,
        **cert.components(),
    )
    return PipelineResult(net_space=net, network=network, certificate=certificate)


@dataclass(frozen=True)
class StudyRow:
    epsilon: float
    net_size: int
    fit_error: float
    bound: float
    passed: bool
    millis: float


def convergence_study(
    target: FunctionOnSpace,
    epsilons,
    sigma: Activation,
    seed: int = 0,
) -> list[StudyRow]:
    """One pipeline run per eps; eps values must be positive and decreasing.

    The seed picks the net's starting point (seed mod point count); the
    pipeline itself is deterministic.
    """
    eps_list = [float(e) for e in epsilons]
    if not eps_list or any(e <= 0 for e in eps_list):
        raise ValueError("epsilons must be positive")
    if any(b >= a for a, b in zip(eps_list, eps_list[1:])):
        raise ValueError("epsilons must be strictly decreasing")
    options = PipelineOptions(net_seed_index=seed % target.space.n_points)
    rows = []
    for eps in eps_list:
        started = time.perf_counter()
        result = run_pipeline(target, eps, sigma, options)
        elapsed_ms = (time.perf_counter() - started) * 1e3
        cert = result.certificate
        rows.append(
            StudyRow(
                epsilon=eps,
                net_size=result.net_space.n_points,
                fit_error=cert.fit_error,
                bound=cert.bound,
                passed=cert.passed,
                millis=elapsed_ms,
            )
        )
    return rows
