"""Kähler angles and quaternionic Kähler angles of subspaces.

For a subspace ``W`` and a complex structure ``J``, the Kähler angle at a
unit ``v`` in ``W`` is the angle between ``Jv`` and ``W``.  Angles are
evaluated as ``atan2(|P_perp Jv|, |P_W Jv|)`` rather than ``arccos`` so that
values near 0 keep full precision.

The quaternionic Kähler angle at ``v`` is obtained from the 3 x 3 Gram matrix
``M(v)[i, j] = <P_W J_i v, P_W J_j v>``.  Since
``cos^2 phi(v, sum a_i J_i) = a^T M(v) a`` for unit ``a``, the minimum,
middle and maximum angle over the 2-sphere of structures come from the
eigenvalues of ``M(v)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .numerics import DEFAULT_SEED, DEFAULT_TOL, Subspace, Tolerance, random_unit, rng_from

DEFAULT_SAMPLES = 64

__all__ = [
    "Subspace", "KahlerReport", "QKAngleTriple",
    "kahler_angle_at", "kahler_constancy", "qk_angle_at", "qk_constancy",
    "canonical_basis_at", "check_quaternionic_structures",
]


@dataclass(frozen=True)
class KahlerReport:
    constant: bool
    phi: float
    defect: float


@dataclass(frozen=True)
class QKAngleTriple:
    phi1: float
    phi2: float
    phi3: float
    constancy_defect: float = 0.0

    @property
    def angles(self) -> tuple[float, float, float]:
        return (self.phi1, self.phi2, self.phi3)

    def __iter__(self):
        return iter(self.angles)

    def max_deviation(self, other) -> float:
        return float(np.max(np.abs(np.subtract(self.angles, tuple(other)))))


def _unit_in(W: Subspace, v, tol: Tolerance) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (W.ambient_dim,):
        raise ValueError(f"vector must have {W.ambient_dim} coordinates")
    nv = float(np.linalg.norm(v))
    if abs(nv - 1.0) > tol.defect_tol:
        raise ValueError(f"vector is not a unit vector (|v| = {nv})")
    if not W.contains(v, tol.defect_tol):
        raise ValueError("vector does not lie in the subspace")
    return v


def _split(W: Subspace, x: np.ndarray) -> tuple[float, float]:
    inside = W.project(x)
    return float(np.linalg.norm(inside)), float(np.linalg.norm(x - inside))


def kahler_angle_at(W: Subspace, v, J, tol: Tolerance = DEFAULT_TOL) -> float:
    """Angle between ``Jv`` and ``W`` for a unit vector ``v`` in ``W``."""
    v = _unit_in(W, v, tol)
    c, s = _split(W, np.asarray(J) @ v)
    return float(np.arctan2(s, c))


def kahler_constancy(W: Subspace, J, tol: Tolerance = DEFAULT_TOL) -> KahlerReport:
    """Decide whether ``W`` has constant Kähler angle with respect to ``J``.

    ``F = P_W J|_W`` is skew and the squared cosines of the Kähler angles are
    the values of the quadratic form of ``F^T F`` on unit vectors, so the
    angle is constant exactly when ``F^T F`` is a multiple of the identity.
    The defect is the spread of its eigenvalues.
    """
    J = np.asarray(J, dtype=float)
    if W.dim == 0:
        return KahlerReport(True, 0.0, 0.0)
    JB = J @ W.basis
    F = W.basis.T @ JB
    E = JB - W.basis @ F
    evals = np.linalg.eigvalsh(F.T @ F)
    defect = float(evals[-1] - evals[0])
    phi = float(np.arctan2(np.linalg.norm(E), np.linalg.norm(F)))
    return KahlerReport(defect <= tol.defect_tol, phi, defect)


def check_quaternionic_structures(structures: Sequence[np.ndarray], tol: Tolerance = DEFAULT_TOL) -> None:
    """Raise ``ValueError`` unless ``J1, J2, J3`` are orthogonal, square to -1 and multiply cyclically."""
    if len(structures) != 3:
        raise ValueError("need exactly three structures")
    J1, J2, J3 = (np.asarray(J, dtype=float) for J in structures)
    eye = np.eye(J1.shape[0])
    worst = 0.0
    for J in (J1, J2, J3):
        worst = max(worst, np.max(np.abs(J.T @ J - eye)), np.max(np.abs(J @ J + eye)))
    for A, Bm, Cm in ((J1, J2, J3), (J2, J3, J1), (J3, J1, J2)):
        worst = max(worst, np.max(np.abs(A @ Bm - Cm)), np.max(np.abs(Bm @ A + Cm)))
    if worst > tol.defect_tol:
        raise ValueError(f"quaternionic structure axioms violated (defect {worst:.3e})")


def _qk_frame(W: Subspace, v: np.ndarray, structures):
    """Eigen-frame of ``M(v)`` ordered by decreasing eigenvalue, with the angles."""
    X = np.column_stack([np.asarray(J) @ v for J in structures])
    P = W.basis @ (W.basis.T @ X)
    Q = X - P
    M = P.T @ P
    _, vecs = np.linalg.eigh(0.5 * (M + M.T))
    vecs = vecs[:, ::-1]
    cos = np.linalg.norm(P @ vecs, axis=0)
    sin = np.linalg.norm(Q @ vecs, axis=0)
    angles = np.arctan2(sin, cos)
    order = np.argsort(angles, kind="stable")
    return vecs[:, order], angles[order]


def qk_angle_at(W: Subspace, v, structures, tol: Tolerance = DEFAULT_TOL, *, validate: bool = True) -> QKAngleTriple:
    """Quaternionic Kähler angle ``(phi1 <= phi2 <= phi3)`` of ``W`` at unit ``v``."""
    if validate:
        check_quaternionic_structures(structures, tol)
    v = _unit_in(W, v, tol)
    _, angles = _qk_frame(W, v, structures)
    return QKAngleTriple(*map(float, angles))


def _trace_condition_defect(W: Subspace, structures) -> float:
    """Eigenvalue spread of ``sum_i F_i^T F_i`` with ``F_i = P_W J_i|_W``."""
    S = np.zeros((W.dim, W.dim))
    for J in structures:
        F = W.basis.T @ np.asarray(J) @ W.basis
        S += F.T @ F
    evals = np.linalg.eigvalsh(S)
    return float(evals[-1] - evals[0])


def qk_constancy(
    W: Subspace,
    structures,
    samples: int = DEFAULT_SAMPLES,
    seed=DEFAULT_SEED,
    tol: Tolerance = DEFAULT_TOL,
) -> QKAngleTriple:
    """Sampled check that the quaternionic Kähler angle of ``W`` is constant.

    Evaluates the angle at ``samples`` seeded random unit vectors of ``W`` and
    at every basis vector.  Returns the mean triple; ``constancy_defect`` is
    the largest deviation from it, or the defect of the necessary condition
    ``sum_i F_i^T F_i = c Id`` if that is larger.  Sampling cannot certify
    constancy; a small defect is evidence, not proof.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    check_quaternionic_structures(structures, tol)
    if W.dim == 0:
        raise ValueError("the zero subspace has no unit vectors")
    rng = rng_from(seed)
    coeffs = [random_unit(W.dim, rng) for _ in range(samples)]
    coeffs.extend(np.eye(W.dim))
    triples = np.array([_qk_frame(W, W.basis @ c, structures)[1] for c in coeffs])
    mean = triples.mean(axis=0)
    spread = float(np.max(np.abs(triples - mean)))
    defect = max(spread, _trace_condition_defect(W, structures))
    return QKAngleTriple(*map(float, mean), constancy_defect=defect)


def canonical_basis_at(W: Subspace, v, structures, tol: Tolerance = DEFAULT_TOL):
    """Canonical basis ``(J1', J2', J3')`` at ``v``.

    ``J1'`` realizes the smallest Kähler angle, ``J3'`` the largest, and the
    triple satisfies ``J1' J2' = J3'``.  With repeated angles any eigenframe
    is a valid answer; the triple of angles is unaffected.
    """
    check_quaternionic_structures(structures, tol)
    v = _unit_in(W, v, tol)
    vecs, _ = _qk_frame(W, v, structures)
    a1, a2 = vecs[:, 0], vecs[:, 1]
    a3 = np.cross(a1, a2)
    Js = [np.asarray(J, dtype=float) for J in structures]
    return tuple(sum(c * J for c, J in zip(a, Js)) for a in (a1, a2, a3))
