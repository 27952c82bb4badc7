"""SubspaceFile JSON I/O and shipped JSON schemas.

A SubspaceFile is ``{"algebra": "H", "n": 3, "basis": [[...], ...]}`` where
each basis row is a vector of realified ``v`` (length ``d * (n - 1)``,
slot-major, components ``(1, e1, ...)`` within a slot).
"""
from __future__ import annotations

import json
import warnings
from importlib import resources
from pathlib import Path

import numpy as np

from .model import SolvableModel
from .numerics import Subspace, orthonormalize


class SubspaceFileError(ValueError):
    pass


def load_schema(name: str) -> dict:
    """One of ``subspace``, ``record``, ``angle``, ``moduli``, ``report``."""
    text = resources.files("cohom1").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def parse_subspace(data: dict) -> tuple[SolvableModel, Subspace]:
    if not isinstance(data, dict):
        raise SubspaceFileError("subspace file must hold a JSON object")
    for key in ("algebra", "n", "basis"):
        if key not in data:
            raise SubspaceFileError(f"missing field {key!r}")
    try:
        model = SolvableModel(data["algebra"], data["n"])
    except (ValueError, TypeError) as exc:
        raise SubspaceFileError(str(exc)) from None
    rows = data["basis"]
    if not isinstance(rows, list):
        raise SubspaceFileError("basis must be a list of rows")
    try:
        M = np.array(rows, dtype=float).reshape(len(rows), -1) if rows else np.zeros((0, model.dim_v))
    except (ValueError, TypeError):
        raise SubspaceFileError("basis rows must be equal-length lists of numbers") from None
    if M.shape[1] != model.dim_v:
        raise SubspaceFileError(f"basis rows need {model.dim_v} entries for {model}, got {M.shape[1]}")
    if not np.all(np.isfinite(M)):
        raise SubspaceFileError("basis contains non-finite entries")
    if M.shape[0] == 0:
        return model, Subspace.zero(model.dim_v)
    Q = orthonormalize(M.T)
    if Q.shape[1] < M.shape[0]:
        raise SubspaceFileError(f"basis rows are linearly dependent (rank {Q.shape[1]} < {M.shape[0]})")
    if np.max(np.abs(M @ M.T - np.eye(M.shape[0]))) > 1e-10:
        warnings.warn("basis rows are not orthonormal; orthonormalized on load", stacklevel=2)
    return model, Subspace(Q, check=False)


def load_subspace(path) -> tuple[SolvableModel, Subspace]:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise SubspaceFileError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SubspaceFileError(f"{path} is not valid JSON: {exc}") from None
    return parse_subspace(data)


def subspace_to_dict(model: SolvableModel, W: Subspace, **extra) -> dict:
    out = {"algebra": model.tag.name, "n": model.n, "basis": W.basis.T.tolist()}
    out.update(extra)
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def save_subspace(path, model: SolvableModel, W: Subspace, **extra) -> None:
    Path(path).write_text(dumps(subspace_to_dict(model, W, **extra)))
