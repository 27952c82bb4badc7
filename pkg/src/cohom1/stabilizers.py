"""Isotropy algebras ``k_x`` acting on ``v``, normalizers and orbit ranks.

``k_x`` is realized as skew matrices on realified ``v``:

* R: ``so(n-1)``
* C: ``u(n-1)`` (complex anti-Hermitian matrices)
* H: ``sp(n-1) + sp(1)`` acting by ``(A, zeta) . v = A v - v zeta``
* O: ``spin(7)``, the annihilator in ``so(8)`` of the Cayley 4-form

``g2`` is the subalgebra of ``spin(7)`` fixing ``1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .algebra import AlgebraTag, cayley_form_matrix, cayley_tensor, left_mult_matrix, right_mult_matrix
from .model import SolvableModel
from .numerics import (
    DEFAULT_SEED, DEFAULT_TOL, Subspace, Tolerance, nullspace, orthonormalize, rank, rng_from,
    random_unit, singular_values,
)


@dataclass(frozen=True, eq=False)
class ActionBasis:
    name: str
    matrices: np.ndarray  # (dim, N, N)

    @property
    def dim(self) -> int:
        return self.matrices.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.matrices.shape[1]

    def combine(self, coeffs) -> np.ndarray:
        return np.tensordot(np.asarray(coeffs, dtype=float), self.matrices, axes=1)

    def random_element(self, seed=DEFAULT_SEED, scale: float = 1.0) -> np.ndarray:
        rng = rng_from(seed)
        return scale * self.combine(rng.standard_normal(self.dim))

    def skew_defect(self) -> float:
        if self.dim == 0:
            return 0.0
        return float(np.max(np.abs(self.matrices + self.matrices.transpose(0, 2, 1))))

    def closure_defect(self) -> float:
        """Largest distance of a commutator of basis elements from the span."""
        if self.dim == 0:
            return 0.0
        flat = self.matrices.reshape(self.dim, -1).T
        Q = orthonormalize(flat)
        worst = 0.0
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                A, Bm = self.matrices[i], self.matrices[j]
                c = (A @ Bm - Bm @ A).ravel()
                worst = max(worst, float(np.linalg.norm(c - Q @ (Q.T @ c))))
        return worst

    def __repr__(self):
        return f"ActionBasis({self.name!r}, dim={self.dim}, ambient={self.ambient_dim})"


def _stack(mats, N: int) -> np.ndarray:
    return np.array(mats).reshape(len(mats), N, N)


def so_basis(m: int) -> ActionBasis:
    mats = []
    for a in range(m):
        for b in range(a + 1, m):
            X = np.zeros((m, m))
            X[a, b], X[b, a] = -1.0, 1.0
            mats.append(X)
    return ActionBasis(f"so({m})", _stack(mats, m))


def _block_matrix(blocks: dict, m: int, d: int) -> np.ndarray:
    X = np.zeros((m * d, m * d))
    for (s, t), blk in blocks.items():
        X[s * d:(s + 1) * d, t * d:(t + 1) * d] += blk
    return X


def _anti_hermitian(tag: AlgebraTag, m: int) -> list[np.ndarray]:
    """Left-acting anti-Hermitian matrices over C or H, realified."""
    d = tag.dim
    units = np.eye(d)
    L = [left_mult_matrix(tag, units[q]) for q in range(d)]
    mats = []
    for s in range(m):
        for q in range(1, d):
            mats.append(_block_matrix({(s, s): L[q]}, m, d))
    for s in range(m):
        for t in range(s + 1, m):
            for q in range(d):
                # A_st = e_q, A_ts = -conj(e_q)
                conj = L[q] if q == 0 else -L[q]
                mats.append(_block_matrix({(s, t): L[q], (t, s): -conj}, m, d))
    return mats


def u_basis(m: int) -> ActionBasis:
    return ActionBasis(f"u({m})", _stack(_anti_hermitian(AlgebraTag.C, m), 2 * m))


def sp_sp1_basis(m: int) -> ActionBasis:
    mats = _anti_hermitian(AlgebraTag.H, m)
    for q in (1, 2, 3):
        zeta = np.eye(4)[q]
        mats.append(scipy.linalg.block_diag(*[-right_mult_matrix(AlgebraTag.H, zeta)] * m))
    return ActionBasis(f"sp({m})+sp(1)", _stack(mats, 4 * m))


def _so8_action_on_forms() -> np.ndarray:
    """Matrix of ``X -> X . Phi`` from ``so(8)`` coefficients to 4-tensor components."""
    P = cayley_tensor()
    cols = []
    for X in so_basis(8).matrices:
        XP = (np.einsum("ijkl,ia->ajkl", P, X) + np.einsum("ijkl,ja->iakl", P, X)
              + np.einsum("ijkl,ka->ijal", P, X) + np.einsum("ijkl,la->ijka", P, X))
        cols.append(-XP.ravel())
    return np.array(cols).T


@lru_cache(maxsize=1)
def _spin7_matrices() -> np.ndarray:
    so8 = so_basis(8).matrices
    N = nullspace(_so8_action_on_forms())
    mats = np.tensordot(N.T, so8, axes=1)
    mats.setflags(write=False)
    return mats


def spin7_basis() -> ActionBasis:
    """``spin(7)`` as the annihilator of the Cayley form in ``so(8)``."""
    return ActionBasis("spin(7)", _spin7_matrices())


def cayley_form_residual(g: ActionBasis) -> float:
    """Largest component of ``X . Phi`` over the basis of ``g`` (zero on spin(7))."""
    so8 = so_basis(8).matrices.reshape(28, -1)
    coeffs = np.linalg.lstsq(so8.T, g.matrices.reshape(g.dim, -1).T, rcond=None)[0]
    return float(np.max(np.abs(_so8_action_on_forms() @ coeffs)))


@lru_cache(maxsize=1)
def _g2_matrices() -> np.ndarray:
    S = _spin7_matrices()
    one = np.eye(8)[0]
    L = np.array([X @ one for X in S]).T
    N = nullspace(L)
    mats = np.tensordot(N.T, S, axes=1)
    mats.setflags(write=False)
    return mats


def g2_basis() -> ActionBasis:
    """The stabilizer of ``1`` inside ``spin(7)``."""
    return ActionBasis("g2", _g2_matrices())


def kx_basis(model: SolvableModel) -> ActionBasis:
    m = model.n - 1
    if model.tag is AlgebraTag.R:
        return so_basis(m)
    if model.tag is AlgebraTag.C:
        return u_basis(m)
    if model.tag is AlgebraTag.H:
        return sp_sp1_basis(m)
    return spin7_basis()


def _restricted_map(g: ActionBasis, V: Subspace) -> np.ndarray:
    """Columns: ``P_{V^perp} X|_V`` for each basis element ``X``, flattened."""
    Vp = V.complement()
    return np.einsum("ia,nij,jb->abn", Vp.basis, g.matrices, V.basis).reshape(-1, g.dim)


def normalizer_in(g: ActionBasis, V: Subspace, tol: Tolerance = DEFAULT_TOL) -> ActionBasis:
    """Elements of ``g`` mapping ``V`` into itself."""
    if V.dim in (0, V.ambient_dim):
        return ActionBasis(f"N({g.name})", g.matrices.copy())
    N = nullspace(_restricted_map(g, V), tol)
    return ActionBasis(f"N({g.name})", np.tensordot(N.T, g.matrices, axes=1))


def grassmann_orbit_dim(g: ActionBasis, V: Subspace, tol: Tolerance = DEFAULT_TOL) -> int:
    """Orbit dimension of ``exp(g)`` at the point ``V`` of the Grassmannian."""
    if V.dim in (0, V.ambient_dim):
        return 0
    return rank(_restricted_map(g, V), tol)


@dataclass(frozen=True)
class TransitivityResult:
    """Outcome of the sphere-transitivity test.

    ``transitive`` is ``None`` for ``dim W < 2`` (the codimension-one
    foliation case).  ``margin`` is the smallest relative singular value that
    the rank decision had to clear, over all tested points; a rank deficit
    shows as ``min_rank < dim W - 1``.
    """

    transitive: bool | None
    dim: int
    min_rank: int
    margin: float
    points: int

    @property
    def codimension_one(self) -> bool:
        return self.dim < 2


def sphere_transitivity(
    nrm: ActionBasis,
    W: Subspace,
    samples: int = 64,
    seed=DEFAULT_SEED,
    tol: Tolerance = DEFAULT_TOL,
) -> TransitivityResult:
    """Test whether ``exp(nrm)`` acts transitively on the unit sphere of ``W``.

    At each tested unit ``xi`` (seeded random points plus the basis of ``W``)
    the tangent vectors ``X xi`` must span a space of dimension
    ``dim W - 1``.  A compact connected group whose orbits are all open in
    the sphere is transitive; finitely many points make this a probabilistic
    decision, since rank can only drop on a closed null set.
    """
    k = W.dim
    if k < 2:
        return TransitivityResult(None, k, 0, 0.0, 0)
    rng = rng_from(seed)
    coeffs = [random_unit(k, rng) for _ in range(samples)]
    coeffs.extend(np.eye(k))
    min_rank, margin = k - 1, np.inf
    for c in coeffs:
        xi = W.basis @ c
        T = W.basis.T @ np.einsum("nij,j->in", nrm.matrices, xi) if nrm.dim else np.zeros((k, 0))
        s = singular_values(T)
        top = s[0] if s.size else 0.0
        r = int(np.sum(s > tol.rank_tol * top)) if top > 0 else 0
        min_rank = min(min_rank, r)
        if top > 0 and s.size >= k - 1:
            margin = min(margin, float(s[k - 2] / top))
        else:
            margin = 0.0
    return TransitivityResult(min_rank >= k - 1, k, min_rank, float(margin), len(coeffs))


def cayley_modulus(V: Subspace) -> float:
    """``|Phi(b1, b2, b3, b4)|`` for an orthonormal basis of a 4-plane in R^8."""
    if V.dim != 4 or V.ambient_dim != 8:
        raise ValueError(f"cayley modulus needs a 4-plane in R^8, got dim {V.dim} in R^{V.ambient_dim}")
    return abs(cayley_form_matrix(V.basis))
