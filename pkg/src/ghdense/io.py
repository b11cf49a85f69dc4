"""File formats: distance CSV, point clouds, function values, JSON forms.

All JSON floats go through Python's shortest round-trip repr, so every
number re-parses to the identical double and certificates re-verify
exactly.
"""

from __future__ import annotations

import json
from typing import Sequence

import numpy as np

from .errors import InputFormatError, SpaceMismatch
from .gh0 import Gh0Certificate
from .isometry import PointMap
from .measures import FunctionFamily, SignedMeasure
from .networks import Activation, ShallowNetwork, Unit
from .pipeline import DensityCertificate, StudyRow
from .spaces import FiniteMetricSpace, FunctionOnSpace, PointCloud, validate_metric


def _read_lines(path: str) -> list[tuple[int, str]]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.readlines()
    except OSError as err:
        raise InputFormatError(path, None, f"cannot read file: {err}") from err
    lines = []
    for lineno, line in enumerate(raw, start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            lines.append((lineno, stripped))
    if not lines:
        raise InputFormatError(path, None, "file holds no data rows")
    return lines


def _split_cells(line: str) -> list[str]:
    if "," in line:
        return [c.strip() for c in line.split(",")]
    return line.split()


def _is_float(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def read_distance_csv(path: str) -> FiniteMetricSpace:
    """Distance-matrix CSV: optional label header, then n rows of n reals."""
    lines = _read_lines(path)
    labels = None
    first_cells = _split_cells(lines[0][1])
    if not all(_is_float(c) for c in first_cells):
        labels = first_cells
        lines = lines[1:]
        if not lines:
            raise InputFormatError(path, 1, "header without matrix rows")
    rows = []
    for lineno, line in lines:
        cells = _split_cells(line)
        if not all(_is_float(c) for c in cells):
            raise InputFormatError(path, lineno, f"non-numeric matrix entry in {line!r}")
        rows.append([float(c) for c in cells])
    if any(len(r) != len(rows) for r in rows):
        raise InputFormatError(path, lines[0][0], "matrix rows must form a square")
    try:
        return validate_metric(rows, labels=labels)
    except ValueError as err:
        raise InputFormatError(path, None, str(err)) from err


def read_point_cloud(path: str) -> PointCloud:
    """Point-cloud CSV/XYZ: one point per line, comma or whitespace cells."""
    lines = _read_lines(path)
    pts = []
    dim = None
    for lineno, line in lines:
        cells = _split_cells(line)
        if not all(_is_float(c) for c in cells):
            if lineno == lines[0][0]:  # tolerated header
                continue
            raise InputFormatError(path, lineno, f"non-numeric coordinate in {line!r}")
        if dim is None:
            dim = len(cells)
        elif len(cells) != dim:
            raise InputFormatError(
                path, lineno, f"expected {dim} coordinates, got {len(cells)}"
            )
        pts.append([float(c) for c in cells])
    if not pts:
        raise InputFormatError(path, None, "no points found")
    try:
        return PointCloud(np.array(pts))
    except ValueError as err:
        raise InputFormatError(path, None, str(err)) from err


def read_function_csv(path: str, space: FiniteMetricSpace) -> FunctionOnSpace:
    """Function-values CSV: rows `index,value` covering every index once."""
    lines = _read_lines(path)
    if not all(_is_float(c) for c in _split_cells(lines[0][1])):
        lines = lines[1:]
    values = np.full(space.n_points, np.nan)
    for lineno, line in lines:
        cells = _split_cells(line)
        if len(cells) != 2 or not all(_is_float(c) for c in cells):
            raise InputFormatError(path, lineno, f"expected `index,value`, got {line!r}")
        idx_f, val = float(cells[0]), float(cells[1])
        idx = int(idx_f)
        if idx != idx_f or not 0 <= idx < space.n_points:
            raise InputFormatError(path, lineno, f"bad point index {cells[0]}")
        if not np.isnan(values[idx]):
            raise InputFormatError(path, lineno, f"duplicate index {idx}")
        values[idx] = val
    missing = np.flatnonzero(np.isnan(values))
    if missing.size:
        raise InputFormatError(path, None, f"missing value for index {missing[0]}")
    return FunctionOnSpace(space, values)


def read_measure_csv(path: str, space: FiniteMetricSpace) -> SignedMeasure:
    """Measures CSV has the same `index,weight` layout as function values."""
    f = read_function_csv(path, space)
    return SignedMeasure(space, f.values)


# ---------------------------------------------------------------------------
# JSON forms


def map_to_json(m: PointMap) -> dict:
    return {
        "source_id": m.source.space_id,
        "target_id": m.target.space_id,
        "image": [int(k) for k in m.image],
    }


def map_from_json(doc: dict, source: FiniteMetricSpace, target: FiniteMetricSpace) -> PointMap:
    if doc.get("source_id") != source.space_id or doc.get("target_id") != target.space_id:
        raise SpaceMismatch(
            f"map connects {doc.get('source_id')} -> {doc.get('target_id')}, "
            f"got spaces {source.space_id} -> {target.space_id}"
        )
    return PointMap(source, target, np.array(doc["image"], dtype=np.int64))


def map_to_csv(m: PointMap) -> str:
    lines = [f"{k},{int(t)}" for k, t in enumerate(m.image)]
    return "\n".join(lines) + "\n"


def map_from_csv(
    text: str, source: FiniteMetricSpace, target: FiniteMetricSpace
) -> PointMap:
    image = np.full(source.n_points, -1, dtype=np.int64)
    for lineno, line in enumerate(text.strip().splitlines(), start=1):
        cells = _split_cells(line.strip())
        if len(cells) != 2:
            raise InputFormatError("<map>", lineno, f"expected `source,target`: {line!r}")
        s, t = int(cells[0]), int(cells[1])
        image[s] = t
    if (image < 0).any():
        raise InputFormatError("<map>", None, "map rows do not cover every source index")
    return PointMap(source, target, image)


def activation_to_json(sigma: Activation) -> dict:
    params: dict = {}
    if sigma.kind in ("power", "power-abs"):
        params = {"a": sigma.a, "p": sigma.p}
    elif sigma.kind == "abs-scale":
        params = {"a": sigma.a}
    elif sigma.kind == "custom-table":
        params = {"t": list(sigma.table_t), "v": list(sigma.table_v)}
    return {"kind": sigma.kind, "params": params}


def activation_from_json(doc: dict) -> Activation:
    kind = doc["kind"]
    params = doc.get("params", {})
    if kind == "logistic":
        return Activation.logistic()
    if kind == "hard-step":
        return Activation.hard_step()
    if kind == "power":
        return Activation.power(params["a"], int(params["p"]))
    if kind == "power-abs":
        return Activation.power_abs(params["a"], params["p"])
    if kind == "abs-scale":
        return Activation.abs_scale(params["a"])
    if kind == "custom-table":
        return Activation.from_table(params["t"], params["v"])
    raise ValueError(f"unknown activation kind {kind!r}")


def network_to_json(net: ShallowNetwork) -> dict:
    return {
        "space_id": net.space.space_id,
        "activation": activation_to_json(net.activation),
        "units": [
            {"a": u.a, "theta": u.theta, "f": [float(v) for v in u.f.values]}
            for u in net.units
        ],
    }


def network_from_json(doc: dict, space: FiniteMetricSpace) -> ShallowNetwork:
    if doc.get("space_id") != space.space_id:
        raise SpaceMismatch(
            f"network was built on space {doc.get('space_id')}, got {space.space_id}"
        )
    sigma = activation_from_json(doc["activation"])
    units = tuple(
        Unit(
            a=float(u["a"]),
            theta=float(u["theta"]),
            f=FunctionOnSpace(space, np.array(u["f"], dtype=np.float64)),
        )
        for u in doc["units"]
    )
    return ShallowNetwork(space, sigma, units)


def family_to_json(family: FunctionFamily) -> dict:
    return {
        "kind": family.kind,
        "members": [[float(v) for v in f.values] for f in family.members],
    }


def family_from_json(doc: dict, space: FiniteMetricSpace) -> FunctionFamily:
    members = tuple(
        FunctionOnSpace(space, np.array(vals, dtype=np.float64))
        for vals in doc.get("members", [])
    )
    return FunctionFamily(space, doc["kind"], members)


def gh0_certificate_to_json(cert: Gh0Certificate) -> dict:
    return {
        "value": cert.value,
        "distortion_i": cert.distortion_i,
        "codefect_i": cert.codefect_i,
        "supnorm_i": cert.supnorm_i,
        "distortion_j": cert.distortion_j,
        "codefect_j": cert.codefect_j,
        "supnorm_j": cert.supnorm_j,
        "witness_i": map_to_json(cert.witness_i),
        "witness_j": map_to_json(cert.witness_j),
    }


def density_certificate_to_json(cert: DensityCertificate) -> dict:
    budget = cert.budget
    return {
        "epsilon": cert.epsilon,
        "net_radius": cert.net_radius,
        "fit_error": cert.fit_error,
        "distortion_i": cert.distortion_i,
        "codefect_i": cert.codefect_i,
        "supnorm_i": cert.supnorm_i,
        "distortion_j": cert.distortion_j,
        "codefect_j": cert.codefect_j,
        "supnorm_j": cert.supnorm_j,
        "bound": cert.bound,
        "pass": cert.passed,
        "budget": {
            "epsilon": budget.epsilon,
            "transfer_allocation": budget.transfer_allocation,
            "fit_allocation": budget.fit_allocation,
            "transfer_achieved": budget.transfer_achieved,
            "fit_achieved": budget.fit_achieved,
            "chained_allocation": budget.chained_allocation,
            "chained_achieved": budget.chained_achieved,
            "paper_allocations": list(budget.paper_allocations),
            "paper_chain_total": budget.paper_chain_total,
        },
        "witness_i": map_to_json(cert.witness_i),
        "witness_j": map_to_json(cert.witness_j),
    }


def study_to_csv(rows: Sequence[StudyRow]) -> str:
    out = ["epsilon,net_size,fit_error,bound,pass,millis"]
    for r in rows:
        out.append(
            f"{r.epsilon!r},{r.net_size},{r.fit_error!r},{r.bound!r},"
            f"{str(r.passed).lower()},{r.millis:.3f}"
        )
    return "\n".join(out) + "\n"


def study_from_csv(text: str) -> list[StudyRow]:
    lines = text.strip().splitlines()
    if not lines or lines[0] != "epsilon,net_size,fit_error,bound,pass,millis":
        raise InputFormatError("<study>", 1, "missing study header")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != 6:
            raise InputFormatError("<study>", lineno, f"expected 6 columns: {line!r}")
        rows.append(
            StudyRow(
                epsilon=float(cells[0]),
                net_size=int(cells[1]),
                fit_error=float(cells[2]),
                bound=float(cells[3]),
                passed=cells[4] == "true",
                millis=float(cells[5]),
            )
        )
    return rows


def dumps(doc) -> str:
    """Deterministic JSON text: fixed key order, round-trip exact floats."""
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"
