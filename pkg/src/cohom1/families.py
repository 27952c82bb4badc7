"""Constructors for the subspace families of the classification.

Each constructor returns ``W`` (the normal space ``v0^perp``) inside the
realified ``v`` of a model.  Slot ``s`` of ``v`` is spanned by the
coordinates ``s*d .. s*d + d - 1``; ``x_s`` denotes the unit vector ``1`` in
slot ``s``.

Constant-angle pieces are built from 2-dimensional blocks
``span{x, cos(phi) J x + sin(phi) y}`` with ``x, y, Jx, Jy`` orthonormal.

Labels: ``complex``, ``real``, ``kangle`` for C-models; ``a`` .. ``f`` for
H-models (quaternionic, totally complex, totally real, ``(Im H) v``,
constant Kähler angle inside a totally complex subspace, and the
complexification of such a subspace).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraTag
from .model import SolvableModel, complex_structure, quaternionic_structures
from .numerics import Subspace

C_LABELS = ("complex", "real", "kangle")
H_LABELS = ("a", "b", "c", "d", "e", "f")
ANGLE_LABELS = ("kangle", "e", "f")
TOTALLY_GEODESIC_LABELS = ("complex", "a")


@dataclass(frozen=True)
class FamilySpec:
    label: str
    model: SolvableModel
    k: int = 1
    phi: float | None = None
    phi_range: tuple[float, float] | None = None

    def __post_init__(self):
        validate(self)

    @property
    def totally_geodesic(self) -> bool:
        return self.label in TOTALLY_GEODESIC_LABELS

    @property
    def dim(self) -> int:
        """Real dimension of the constructed ``W`` (the codimension of the orbit)."""
        return {
            "complex": 2 * self.k, "real": self.k, "kangle": 2 * self.k,
            "a": 4 * self.k, "b": 2 * self.k, "c": self.k, "d": 3,
            "e": 2 * self.k, "f": 4 * self.k,
        }[self.label]

    def to_dict(self) -> dict:
        out = {"label": self.label, "space": str(self.model), "k": self.k}
        if self.phi is not None:
            out["phi"] = self.phi
        if self.phi_range is not None:
            out["phi_range"] = list(self.phi_range)
        out["dim"] = self.dim
        out["totally_geodesic"] = self.totally_geodesic
        return out

    @classmethod
    def from_dict(cls, data: dict) -> FamilySpec:
        rng = data.get("phi_range")
        return cls(
            label=data["label"],
            model=SolvableModel.parse(data["space"]),
            k=int(data.get("k", 1)),
            phi=data.get("phi"),
            phi_range=tuple(rng) if rng is not None else None,
        )


def k_bounds(label: str, model: SolvableModel) -> tuple[int, int]:
    """Inclusive range of admissible ``k``; empty when ``lo > hi``."""
    m = model.n - 1
    return {
        "complex": (1, m), "real": (2, m), "kangle": (1, m // 2),
        "a": (1, m), "b": (1, m), "c": (2, m), "d": (1, 1),
        "e": (1, m // 2), "f": (1, m // 2),
    }[label]


def validate(spec: FamilySpec) -> None:
    tag = spec.model.tag
    if spec.label in C_LABELS:
        if tag is not AlgebraTag.C:
            raise ValueError(f"family {spec.label!r} is defined for C-models only, not {tag.name}")
    elif spec.label in H_LABELS:
        if tag is not AlgebraTag.H:
            raise ValueError(f"family {spec.label!r} is quaternionic-only, not defined for {tag.name}")
    else:
        raise ValueError(f"unknown family label {spec.label!r}")
    lo, hi = k_bounds(spec.label, spec.model)
    if not lo <= spec.k <= hi:
        raise ValueError(f"family {spec.label!r} in {spec.model} needs k in [{lo}, {hi}], got k = {spec.k}")
    if spec.label in ANGLE_LABELS and spec.phi_range is None:
        if spec.phi is None:
            raise ValueError(f"family {spec.label!r} needs an angle phi")
        if not 0.0 <= spec.phi <= math.pi / 2:
            raise ValueError(f"phi must lie in [0, pi/2], got {spec.phi}")


def _slot(model: SolvableModel, s: int, q: int = 0) -> np.ndarray:
    x = np.zeros(model.dim_v)
    x[s * model.d + q] = 1.0
    return x


def _angle_blocks(model: SolvableModel, J: np.ndarray, k: int, phi: float) -> list[np.ndarray]:
    cols = []
    for b in range(k):
        x, y = _slot(model, 2 * b), _slot(model, 2 * b + 1)
        cols += [x, math.cos(phi) * (J @ x) + math.sin(phi) * y]
    return cols


def construct(spec: FamilySpec) -> Subspace:
    """Orthonormal basis of the family's subspace ``W``."""
    if spec.phi is None and spec.label in ANGLE_LABELS:
        raise ValueError("construct needs a concrete phi, not a range")
    m, k, phi = spec.model, spec.k, spec.phi
    label = spec.label
    if label == "complex":
        J = complex_structure(m)
        cols = [v for s in range(k) for v in (_slot(m, s), J @ _slot(m, s))]
    elif label == "real":
        cols = [_slot(m, s) for s in range(k)]
    elif label == "kangle":
        cols = _angle_blocks(m, complex_structure(m), k, phi)
    elif label == "a":
        cols = [_slot(m, s, q) for s in range(k) for q in range(4)]
    elif label == "b":
        J1 = quaternionic_structures(m)[0]
        cols = [v for s in range(k) for v in (_slot(m, s), J1 @ _slot(m, s))]
    elif label == "c":
        cols = [_slot(m, s) for s in range(k)]
    elif label == "d":
        cols = [_slot(m, 0, q) for q in (1, 2, 3)]
    elif label == "e":
        # W sits in the totally complex span{x_s, J1 x_s}, angle measured with J1
        cols = _angle_blocks(m, quaternionic_structures(m)[0], k, phi)
    else:
        # f: w = span{x_s, J2 x_s} is J2-invariant and v = w + J1 w; take a
        # constant-angle W in (w, J2) and complexify it with J1
        J1, J2, _ = quaternionic_structures(m)
        base = _angle_blocks(m, J2, k, phi)
        cols = base + [J1 @ c for c in base]
    return Subspace.span(np.column_stack(cols))


def enumerate_admissible(model: SolvableModel) -> list[FamilySpec]:
    """Every family spec allowed in ``model``; angle families carry their open range."""
    if model.tag is AlgebraTag.C:
        labels = C_LABELS
    elif model.tag is AlgebraTag.H:
        labels = H_LABELS
    else:
        return []
    open_range = (0.0, math.pi / 2)
    specs = []
    for label in labels:
        lo, hi = k_bounds(label, model)
        for k in range(lo, hi + 1):
            rng = open_range if label in ANGLE_LABELS else None
            specs.append(FamilySpec(label, model, k, phi_range=rng))
    return specs
