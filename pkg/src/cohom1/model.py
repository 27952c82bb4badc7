"""The solvable Iwasawa model ``a + v + z`` of FH^n.

``a`` is spanned by the element ``B`` with ``[B, V] = V`` and ``[B, Z] = 2Z``;
``v = F^(n-1)`` (realified, slot-major: coordinate ``s*d + c`` is component
``c`` of slot ``s``) and ``z = Im F``.  The nilpotent part is of H-type with
``J_Z U = U Z`` (componentwise right multiplication), and the z-part of
``[U, V]`` is the unique ``beta(U, V)`` with ``<beta(U, V), Z> = <J_Z U, V>``.

The inner product is the coordinate one.  The Killing-form normalization
only rescales it, and every quantity computed here (angles, ranks,
dimensions) is scale invariant.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .algebra import AlgebraElement, AlgebraTag, right_mult_matrix
from .numerics import DEFAULT_TOL, Subspace, Tolerance, orthonormalize, rank


@dataclass(frozen=True)
class SolvableModel:
    tag: AlgebraTag
    n: int

    def __post_init__(self):
        object.__setattr__(self, "tag", AlgebraTag.parse(self.tag))
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n}")
        if self.tag is AlgebraTag.O and self.n != 2:
            raise ValueError("the Cayley hyperbolic space only exists for n = 2")

    @classmethod
    def parse(cls, text: str) -> SolvableModel:
        """Parse ``"H:3"`` style space identifiers."""
        try:
            tag, n = text.split(":")
            return cls(AlgebraTag.parse(tag), int(n))
        except ValueError as exc:
            raise ValueError(f"bad space identifier {text!r} (expected TAG:N, e.g. H:3): {exc}") from None

    def __str__(self):
        return f"{self.tag.name}:{self.n}"

    @property
    def d(self) -> int:
        return self.tag.dim

    @property
    def slots(self) -> int:
        return self.n - 1

    @property
    def dim_a(self) -> int:
        return 1

    @property
    def dim_v(self) -> int:
        return self.d * (self.n - 1)

    @property
    def dim_z(self) -> int:
        return self.d - 1

    @property
    def dim(self) -> int:
        return 1 + self.dim_v + self.dim_z

    def j_matrix(self, Z) -> np.ndarray:
        """Matrix of ``J_Z`` on realified ``v``; ``Z`` must be imaginary."""
        z = _imaginary_coords(self, Z)
        return scipy.linalg.block_diag(*[right_mult_matrix(self.tag, z)] * self.slots)

    @cached_property
    def j_basis(self) -> np.ndarray:
        """``J_{e_a}`` for ``a = 1 .. d-1``, stacked as ``(d-1, dim_v, dim_v)``."""
        mats = [self.j_matrix(np.eye(self.d)[a]) for a in range(1, self.d)]
        return np.array(mats).reshape(self.dim_z, self.dim_v, self.dim_v)

    @cached_property
    def structure_constants(self) -> np.ndarray:
        """``C[i, j, k]``: k-th coordinate of the bracket of basis vectors i and j."""
        N = self.dim
        E = np.eye(N)
        C = np.zeros((N, N, N))
        for i in range(N):
            for j in range(i + 1, N):
                C[i, j] = bracket_flat(self, E[i], E[j])
                C[j, i] = -C[i, j]
        return C

    # index ranges in flat coordinates
    @property
    def a_slice(self) -> slice:
        return slice(0, 1)

    @property
    def v_slice(self) -> slice:
        return slice(1, 1 + self.dim_v)

    @property
    def z_slice(self) -> slice:
        return slice(1 + self.dim_v, self.dim)


def _imaginary_coords(model: SolvableModel, Z) -> np.ndarray:
    if isinstance(Z, AlgebraElement):
        if Z.tag is not model.tag:
            raise ValueError(f"algebra mismatch: {Z.tag.name} vs {model.tag.name}")
        z = Z.coords
    else:
        z = np.asarray(Z, dtype=float).reshape(-1)
        if z.size != model.d:
            raise ValueError(f"expected {model.d} coordinates for Z, got {z.size}")
    if abs(z[0]) > 1e-12 * max(1.0, float(np.linalg.norm(z))):
        raise ValueError("Z must be purely imaginary")
    out = z.copy()
    out[0] = 0.0
    return out


def complex_structure(model: SolvableModel) -> np.ndarray:
    """The complex structure ``J`` (right multiplication by i) of a C-model."""
    if model.tag is not AlgebraTag.C:
        raise ValueError("complex structure requires a C-model")
    return model.j_basis[0]


def quaternionic_structures(model: SolvableModel) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(J1, J2, J3)``: right multiplication by ``-i, -j, -k``.

    Right multiplication reverses products, so the conjugate units are used to
    obtain ``J1 J2 = J3`` (cyclically); the span is the same as for ``i, j, k``.
    """
    if model.tag is not AlgebraTag.H:
        raise ValueError("quaternionic structure requires an H-model")
    Jb = model.j_basis
    return -Jb[0], -Jb[1], -Jb[2]


def j_map(model: SolvableModel, Z, U) -> np.ndarray:
    """``J_Z U = U Z`` applied slotwise to a realified ``U`` in ``v``."""
    U = np.asarray(U, dtype=float)
    if U.shape != (model.dim_v,):
        raise ValueError(f"U must have {model.dim_v} real coordinates")
    return model.j_matrix(Z) @ U


def beta(model: SolvableModel, U, V) -> np.ndarray:
    """Imaginary coordinates of the z-part of ``[U, V]`` for ``U, V`` in ``v``."""
    return np.einsum("aij,j,i->a", model.j_basis, np.asarray(U, float), np.asarray(V, float))


@dataclass(frozen=True, eq=False)
class ModelVector:
    """``t B + V + Z`` with ``V`` realified and ``Z`` given by imaginary coordinates."""

    model: SolvableModel
    t: float = 0.0
    v: np.ndarray = field(default=None)
    z: np.ndarray = field(default=None)

    def __post_init__(self):
        m = self.model
        v = np.zeros(m.dim_v) if self.v is None else np.array(self.v, dtype=float).reshape(-1)
        z = np.zeros(m.dim_z) if self.z is None else np.array(self.z, dtype=float).reshape(-1)
        if v.size != m.dim_v or z.size != m.dim_z:
            raise ValueError(f"shape mismatch for model {m}: v needs {m.dim_v}, z needs {m.dim_z}")
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "z", z)

    @classmethod
    def from_flat(cls, model: SolvableModel, x) -> ModelVector:
        x = np.asarray(x, dtype=float)
        return cls(model, x[0], x[model.v_slice], x[model.z_slice])

    @property
    def flat(self) -> np.ndarray:
        return np.concatenate([[self.t], self.v, self.z])

    @property
    def v_slots(self) -> list[AlgebraElement]:
        d = self.model.d
        return [AlgebraElement(self.model.tag, self.v[s * d:(s + 1) * d]) for s in range(self.model.slots)]

    @property
    def z_element(self) -> AlgebraElement:
        return AlgebraElement(self.model.tag, np.concatenate([[0.0], self.z]))

    def __add__(self, other: ModelVector) -> ModelVector:
        _same_model(self, other)
        return ModelVector.from_flat(self.model, self.flat + other.flat)

    def __sub__(self, other: ModelVector) -> ModelVector:
        _same_model(self, other)
        return ModelVector.from_flat(self.model, self.flat - other.flat)

    def __mul__(self, s: float) -> ModelVector:
        return ModelVector.from_flat(self.model, self.flat * float(s))

    __rmul__ = __mul__

    def __repr__(self):
        return f"ModelVector({self.model}, t={self.t}, v={self.v.tolist()}, z={self.z.tolist()})"


def _same_model(x: ModelVector, y: ModelVector) -> None:
    if x.model != y.model:
        raise ValueError(f"model mismatch: {x.model} vs {y.model}")


def B(model: SolvableModel) -> ModelVector:
    """The grading element of ``a``."""
    return ModelVector(model, 1.0)


def bracket_flat(model: SolvableModel, x, y) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    tx, ty = x[0], y[0]
    vx, vy = x[model.v_slice], y[model.v_slice]
    zx, zy = x[model.z_slice], y[model.z_slice]
    out = np.zeros(model.dim)
    out[model.v_slice] = tx * vy - ty * vx
    out[model.z_slice] = 2 * tx * zy - 2 * ty * zx + beta(model, vx, vy)
    return out


def bracket(x: ModelVector, y: ModelVector) -> ModelVector:
    _same_model(x, y)
    return ModelVector.from_flat(x.model, bracket_flat(x.model, x.flat, y.flat))


def jacobi_defect(model: SolvableModel) -> float:
    """Largest Jacobiator norm over all triples of basis vectors."""
    C = model.structure_constants
    A = np.einsum("ijk,klm->ijlm", C, C)  # [[e_i, e_j], e_l]
    jac = A + A.transpose(2, 0, 1, 3) + A.transpose(1, 2, 0, 3)
    return float(np.max(np.linalg.norm(jac, axis=-1))) if jac.size else 0.0


def _span_brackets(model: SolvableModel, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    C = model.structure_constants
    return np.einsum("ia,jb,ijk->abk", X, Y, C).reshape(-1, model.dim).T


def derived_dim(model: SolvableModel, part: str = "n", tol: Tolerance = DEFAULT_TOL) -> int:
    """Dimension of ``[g, g]`` for ``g`` the nilradical (``"n"``) or all of ``a + n`` (``"s"``)."""
    X = _part_basis(model, part)
    return rank(_span_brackets(model, X, X), tol)


def center_dim(model: SolvableModel, part: str = "n", tol: Tolerance = DEFAULT_TOL) -> int:
    X = _part_basis(model, part)
    # coefficients c with [sum c_a x_a, x_b] = 0 for all b
    C = model.structure_constants
    L = np.einsum("ia,jb,ijk->bka", X, X, C).reshape(-1, X.shape[1])
    return X.shape[1] - rank(L, tol)


def _part_basis(model: SolvableModel, part: str) -> np.ndarray:
    E = np.eye(model.dim)
    if part == "n":
        return E[:, 1:]
    if part == "s":
        return E
    raise ValueError(f"unknown part {part!r}")


@dataclass(frozen=True, eq=False)
class SubalgebraBasis:
    """Linearly independent model vectors, stored as columns of flat coordinates."""

    model: SolvableModel
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def model_vectors(self) -> list[ModelVector]:
        return [ModelVector.from_flat(self.model, c) for c in self.vectors.T]


def embed_v(model: SolvableModel, V) -> np.ndarray:
    """Columns of a realified ``v`` basis, embedded into flat model coordinates."""
    V = np.asarray(V, dtype=float).reshape(model.dim_v, -1)
    out = np.zeros((model.dim, V.shape[1]))
    out[model.v_slice] = V
    return out


def build_s(model: SolvableModel, v0) -> SubalgebraBasis:
    """Basis of ``a + v0 + z`` for a subspace ``v0`` of realified ``v``."""
    V = v0.basis if isinstance(v0, Subspace) else np.asarray(v0, dtype=float).reshape(model.dim_v, -1)
    if V.shape[0] != model.dim_v:
        raise ValueError(f"v0 must live in R^{model.dim_v}")
    E = np.eye(model.dim)
    cols = np.hstack([E[:, :1], embed_v(model, V), E[:, model.z_slice]])
    return SubalgebraBasis(model, cols)


class ClosureResult(NamedTuple):
    closed: bool
    defect: float


def is_subalgebra(s: SubalgebraBasis, tol: Tolerance = DEFAULT_TOL) -> ClosureResult:
    """Whether the span of ``s`` is closed under the bracket.

    The defect is the largest distance from a bracket of two (orthonormalized)
    basis vectors to the span.
    """
    Q = orthonormalize(s.vectors, tol)
    if Q.shape[1] != s.dim:
        raise ValueError("subalgebra basis vectors are linearly dependent")
    if s.dim == 0:
        return ClosureResult(True, 0.0)
    Bk = _span_brackets(s.model, Q, Q)
    resid = Bk - Q @ (Q.T @ Bk)
    defect = float(np.max(np.linalg.norm(resid, axis=0)))
    return ClosureResult(defect <= tol.defect_tol, defect)
