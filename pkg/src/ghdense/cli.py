"""Command-line interface.

Exit codes: 0 success (and certificate pass), 1 certificate or property
failure, 2 malformed input.  Point indices are 0-based everywhere.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from .errors import (
    FitFailed,
    GhdenseError,
    InputFormatError,
    MetricError,
    NetExhausted,
    SingularSystem,
    SpaceMismatch,
    TooLarge,
)
from .gh0 import gh0_certificate, gh0_distance
from .isometry import gh_distance
from .measures import FunctionFamily
from .networks import Activation, evaluate, fit_least_squares, interpolate_exact
from .pipeline import PipelineOptions, convergence_study, run_pipeline
from .properties import run_all
from .spaces import from_point_cloud, sup_norm_distance

_EPILOG = """\
file formats (3-line examples):

  distance matrix CSV          point cloud CSV/XYZ        function values CSV
    a,b,c                        0.0, 0.0                    0,0.84
    0,1,1.5                      1.0, 0.0                    1,0.91
    1,0,2.2                      0.5, 0.7                    2,0.14

  The matrix header row (labels) is optional; function files map 0-based
  point index to value and must cover every index exactly once.
"""

_ACTIVATIONS = {
    "logistic": Activation.logistic,
    "hard-step": Activation.hard_step,
}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghdense",
        description=(
            "Gromov-Hausdorff distances, shallow sigmoidal networks, and "
            "certified approximation on finite metric spaces"
        ),
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a distance matrix against the metric axioms")
    p.add_argument("matrix", help="distance-matrix CSV")

    p = sub.add_parser("gh", help="Gromov-Hausdorff distance between two spaces")
    p.add_argument("space_x", help="distance-matrix CSV for X")
    p.add_argument("space_y", help="distance-matrix CSV for Y")
    p.add_argument("--method", choices=("exact", "bnb"), default="exact")
    p.add_argument("--json", help="write result JSON here")

    p = sub.add_parser("gh0", help="C0-Gromov-Hausdorff distance between two functions")
    p.add_argument("space_x", help="distance-matrix CSV for D(f)")
    p.add_argument("values_f", help="function-values CSV for f")
    p.add_argument("space_y", help="distance-matrix CSV for D(g)")
    p.add_argument("values_g", help="function-values CSV for g")
    p.add_argument("--method", choices=("exact", "bnb"), default="exact")
    p.add_argument("--json", help="write the certificate JSON here")

    p = sub.add_parser("net-fit", help="fit a shallow network to a target function")
    p.add_argument("space", help="distance-matrix CSV")
    p.add_argument("target", help="function-values CSV")
    p.add_argument("--activation", choices=sorted(_ACTIVATIONS), default="logistic")
    p.add_argument("--mode", choices=("exact", "lsq"), default="exact")
    p.add_argument("--units", type=int, default=8, help="unit count for --mode lsq")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-6, help="residual bound for --mode exact")
    p.add_argument("--json", help="write the network JSON here")

    p = sub.add_parser("density", help="run the certified approximation pipeline")
    p.add_argument("points", help="point-cloud CSV/XYZ")
    p.add_argument("target", help="function-values CSV")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--activation", choices=sorted(_ACTIVATIONS), default="logistic")
    p.add_argument("--seed", type=int, default=0, help="net seed point index")
    p.add_argument("--json", help="write the certificate JSON here")

    p = sub.add_parser("study", help="pipeline convergence table over several epsilons")
    p.add_argument("points", help="point-cloud CSV/XYZ")
    p.add_argument("target", help="function-values CSV")
    p.add_argument("--epsilons", required=True, help="comma list, e.g. 0.5,0.25,0.1")
    p.add_argument("--activation", choices=sorted(_ACTIVATIONS), default="logistic")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="write the table here")

    p = sub.add_parser("properties", help="run the full invariant suites")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    return parser


def _cmd_validate(args) -> int:
    space = io.read_distance_csv(args.matrix)
    print(f"ok: {space.n_points} points, diameter {space.diameter!r}")
    return 0


def _cmd_gh(args) -> int:
    X = io.read_distance_csv(args.space_x)
    Y = io.read_distance_csv(args.space_y)
    res = gh_distance(X, Y, method=args.method)
    print(f"value {res.value!r}")
    print("forward " + ",".join(str(k) for k in res.witness_forward.image))
    print("backward " + ",".join(str(k) for k in res.witness_backward.image))
    if args.json:
        doc = {
            "value": res.value,
            "witness_forward": io.map_to_json(res.witness_forward),
            "witness_backward": io.map_to_json(res.witness_backward),
        }
        _write(args.json, io.dumps(doc))
    return 0


def _cmd_gh0(args) -> int:
    X = io.read_distance_csv(args.space_x)
    f = io.read_function_csv(args.values_f, X)
    Y = io.read_distance_csv(args.space_y)
    g = io.read_function_csv(args.values_g, Y)
    res = gh0_distance(f, g, method=args.method)
    cert = gh0_certificate(f, g, res.witness_i, res.witness_j)
    text = io.dumps(io.gh0_certificate_to_json(cert))
    sys.stdout.write(text)
    if args.json:
        _write(args.json, text)
    return 0


def _cmd_net_fit(args) -> int:
    space = io.read_distance_csv(args.space)
    target = io.read_function_csv(args.target, space)
    sigma = _ACTIVATIONS[args.activation]()
    if args.mode == "exact":
        net = interpolate_exact(space, target, sigma, tol=args.tol)
        sup_error = sup_norm_distance(evaluate(net), target)
    else:
        family = FunctionFamily(space, "all-functions")
        net, sup_error = fit_least_squares(
            space, target, sigma, family, n_units=args.units, seed=args.seed
        )
    print(f"units {net.n_units}")
    print(f"sup_error {sup_error!r}")
    if args.json:
        _write(args.json, io.dumps(io.network_to_json(net)))
    return 0


def _cmd_density(args) -> int:
    space = from_point_cloud(io.read_point_cloud(args.points))
    target = io.read_function_csv(args.target, space)
    sigma = _ACTIVATIONS[args.activation]()
    options = PipelineOptions(net_seed_index=args.seed % space.n_points)
    result = run_pipeline(target, args.epsilon, sigma, options)
    cert = result.certificate
    text = io.dumps(io.density_certificate_to_json(cert))
    sys.stdout.write(text)
    if args.json:
        _write(args.json, text)
    return 0 if cert.passed else 1


def _cmd_study(args) -> int:
    space = from_point_cloud(io.read_point_cloud(args.points))
    target = io.read_function_csv(args.target, space)
    sigma = _ACTIVATIONS[args.activation]()
    try:
        epsilons = [float(e) for e in args.epsilons.split(",") if e]
    except ValueError as err:
        raise InputFormatError("--epsilons", None, str(err)) from err
    rows = convergence_study(target, epsilons, sigma, seed=args.seed)
    text = io.study_to_csv(rows)
    sys.stdout.write(text)
    if args.csv:
        _write(args.csv, text)
    return 0 if all(r.passed for r in rows) else 1


def _cmd_properties(args) -> int:
    reports = run_all(cases=args.cases, seed=args.seed)
    failed = False
    for rep in reports:
        if rep.ok:
            print(f"ok {rep.name} ({rep.checks} checks)")
        else:
            failed = True
            print(f"FAIL {rep.name} ({len(rep.failures)}/{rep.checks} checks failed)")
            for message in rep.failures[:5]:
                print(f"  {message}")
    return 1 if failed else 0


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


_COMMANDS = {
    "validate": _cmd_validate,
    "gh": _cmd_gh,
    "gh0": _cmd_gh0,
    "net-fit": _cmd_net_fit,
    "density": _cmd_density,
    "study": _cmd_study,
    "properties": _cmd_properties,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    np.set_printoptions(legacy=False)
    try:
        return _COMMANDS[args.command](args)
    except (InputFormatError, MetricError, SpaceMismatch, TooLarge) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (NetExhausted, FitFailed, SingularSystem) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except GhdenseError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
