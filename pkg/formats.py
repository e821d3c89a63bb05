"""
File Formats
State JSON, eigenvalue/histogram/curve CSV and report JSON

Data files carry no timestamps; every CSV float is written with 17
significant digits so reruns with the same seed are byte-identical.
"""
import csv
import json
import logging
from pathlib import Path
from typing import Sequence, Union

import numpy as np
from pydantic import BaseModel

from config import FLOAT_FORMAT
from models import CovarianceMatrix, GaussianState, Histogram, QuadratureOrdering

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _fmt(value: float) -> str:
    return format(float(value), FLOAT_FORMAT)


def state_to_dict(state: GaussianState) -> dict:
    """Shared state schema: n_modes, ordering, matrix, mean, kind, params, seed"""
    return {
        "n_modes": state.n_modes,
        "ordering": state.cov.ordering.value,
        "matrix": state.cov.matrix.tolist(),
        "mean": state.mean.tolist(),
        "kind": state.kind.value if state.kind else None,
        "params": state.params,
        "seed": state.seed,
    }


def state_from_dict(data: dict) -> GaussianState:
    cov = CovarianceMatrix(
        n_modes=data["n_modes"],
        matrix=data["matrix"],
        ordering=data.get("ordering", QuadratureOrdering.INTERLEAVED),
    )
    return GaussianState(
        cov=cov,
        mean=data.get("mean"),
        kind=data.get("kind"),
        params=data.get("params") or {},
        seed=data.get("seed"),
    )


def write_state(state: GaussianState, path: PathLike) -> None:
    Path(path).write_text(json.dumps(state_to_dict(state), indent=2) + "\n")
    logger.debug(f"Wrote {state.n_modes}-mode state to {path}")


def read_state(path: PathLike) -> GaussianState:
    """
    Load a state file

    Raises:
        OSError: file cannot be read
        ValueError: malformed JSON or a missing field
        pydantic.ValidationError: matrix fails shape, symmetry or finiteness checks
    """
    data = json.loads(Path(path).read_text())
    try:
        return state_from_dict(data)
    except (KeyError, TypeError) as e:
        raise ValueError(f"Malformed state file {path}: {e!r}") from e


def write_eigenvalues_csv(eigenvalues: Sequence[float], path: PathLike) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["eigenvalue"])
        for value in eigenvalues:
            writer.writerow([_fmt(value)])


def read_eigenvalues_csv(path: PathLike) -> np.ndarray:
    with open(path, newline="") as f:
        return np.array([float(row["eigenvalue"]) for row in csv.DictReader(f)])


def write_histogram_csv(histogram: Histogram, path: PathLike) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["bin_left", "bin_right", "density"])
        edges = histogram.bin_edges
        for left, right, density in zip(edges[:-1], edges[1:], histogram.densities):
            writer.writerow([_fmt(left), _fmt(right), _fmt(density)])


def write_curve_csv(grid: Sequence[float], density: Sequence[float], path: PathLike) -> None:
    """MP density overlay: columns x, density"""
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["x", "density"])
        for x, value in zip(grid, density):
            writer.writerow([_fmt(x), _fmt(value)])


def report_json(report: BaseModel) -> str:
    return report.model_dump_json(indent=2)


def write_report(report: BaseModel, path: PathLike) -> None:
    Path(path).write_text(report_json(report) + "\n")
