"""Small dense linear algebra helpers.

All matrices in this package are at most 70 x 70 and well conditioned, so the
routines favour clarity over speed.  Rank decisions are relative to the
largest singular value.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

DEFAULT_SEED = 42


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds.

    ``rank_tol`` is relative to the largest singular value; ``defect_tol``
    bounds residuals such as angle spreads and symmetry defects.
    """

    rank_tol: float = 1e-9
    defect_tol: float = 1e-8

    def __post_init__(self):
        if not (self.rank_tol > 0 and self.defect_tol > 0):
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerance()


def as_matrix(M) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim == 1:
        M = M[:, None]
    if M.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {M.shape}")
    return M


def orthonormalize(M, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the column span, keeping column order and orientation.

    Gram-Schmidt with one re-orthogonalization pass; a column is dropped when
    its residual falls below ``rank_tol`` times the largest column norm.
    """
    M = as_matrix(M)
    scale = float(np.max(np.linalg.norm(M, axis=0))) if M.size else 0.0
    if scale == 0.0:
        return np.zeros((M.shape[0], 0))
    cols = []
    for j in range(M.shape[1]):
        v = M[:, j].copy()
        for _ in range(2):
            for q in cols:
                v -= (q @ v) * q
        nv = np.linalg.norm(v)
        if nv > tol.rank_tol * scale:
            cols.append(v / nv)
    return np.column_stack(cols) if cols else np.zeros((M.shape[0], 0))


def symmetric_eigen(S, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix."""
    S = as_matrix(S)
    if S.shape[0] != S.shape[1]:
        raise ValueError("matrix must be square")
    asym = float(np.max(np.abs(S - S.T))) if S.size else 0.0
    if asym > tol.defect_tol * max(1.0, float(np.max(np.abs(S)))):
        raise ValueError(f"matrix is not symmetric (defect {asym:.3e})")
    return np.linalg.eigh(0.5 * (S + S.T))


def _svd_rank(s: np.ndarray, tol: Tolerance) -> int:
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol.rank_tol * s[0]))


def rank(L, tol: Tolerance = DEFAULT_TOL) -> int:
    L = as_matrix(L)
    if L.size == 0:
        return 0
    return _svd_rank(np.linalg.svd(L, compute_uv=False), tol)


def nullspace(L, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of ``{x : L x = 0}``."""
    L = as_matrix(L)
    ncols = L.shape[1]
    if L.size == 0:
        return np.eye(ncols)
    # only V is needed; a thin SVD gives all of it when rows >= cols
    _, s, vt = np.linalg.svd(L, full_matrices=L.shape[0] < ncols)
    r = _svd_rank(s, tol)
    return vt[r:].T.copy()


def singular_values(L) -> np.ndarray:
    L = as_matrix(L)
    if L.size == 0:
        return np.zeros(0)
    return np.linalg.svd(L, compute_uv=False)


def matrix_exp(X) -> np.ndarray:
    X = as_matrix(X)
    if X.shape[0] != X.shape[1]:
        raise ValueError("matrix exponential needs a square matrix")
    return scipy.linalg.expm(X)


def rng_from(seed) -> np.random.Generator:
    """PCG64 generator from an int seed (or pass a Generator through)."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def random_unit(dim: int, seed=DEFAULT_SEED) -> np.ndarray:
    """Uniform point on the unit sphere of R^dim (normalized Gaussian draw)."""
    if dim < 1:
        raise ValueError("dim must be at least 1")
    rng = rng_from(seed)
    while True:
        x = rng.standard_normal(dim)
        nx = np.linalg.norm(x)
        if nx > 0:
            return x / nx


def random_orthonormal(dim: int, k: int, seed=DEFAULT_SEED) -> np.ndarray:
    """Haar-random orthonormal ``dim x k`` frame."""
    rng = rng_from(seed)
    Q, R = np.linalg.qr(rng.standard_normal((dim, k)))
    return Q * np.sign(np.diag(R))


class Subspace:
    """A linear subspace of R^N held as an orthonormal basis (columns).

    The zero subspace is allowed (``dim == 0``); it shows up as the trivial
    ``v0`` in the smallest models.
    """

    __slots__ = ("basis",)

    def __init__(self, basis, *, check: bool = True, tol: float = 1e-10):
        B = as_matrix(basis).copy()
        if check and B.shape[1]:
            err = float(np.max(np.abs(B.T @ B - np.eye(B.shape[1]))))
            if err > tol:
                raise ValueError(f"basis is not orthonormal (defect {err:.3e}); use Subspace.span")
        B.setflags(write=False)
        self.basis = B

    @classmethod
    def span(cls, vectors, tol: Tolerance = DEFAULT_TOL) -> Subspace:
        """Subspace spanned by the columns of ``vectors``."""
        return cls(orthonormalize(vectors, tol), check=False)

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(np.zeros((ambient_dim, 0)), check=False)

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(np.eye(ambient_dim), check=False)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T

    def complement(self) -> Subspace:
        N = self.ambient_dim
        if self.dim == 0:
            return Subspace.full(N)
        _, _, vt = np.linalg.svd(self.basis.T, full_matrices=True)
        return Subspace(vt[self.dim:].T.copy(), check=False)

    def project(self, x) -> np.ndarray:
        return self.basis @ (self.basis.T @ x)

    def contains(self, x, tol: float = 1e-8) -> bool:
        x = np.asarray(x, dtype=float)
        return float(np.linalg.norm(x - self.project(x))) <= tol * max(1.0, float(np.linalg.norm(x)))

    def transform(self, U) -> Subspace:
        """Image under a linear map ``U`` (re-orthonormalized)."""
        return Subspace.span(np.asarray(U) @ self.basis)

    def random_unit(self, seed=DEFAULT_SEED) -> np.ndarray:
        return self.basis @ random_unit(self.dim, seed)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"
