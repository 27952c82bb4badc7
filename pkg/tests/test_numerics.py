import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohom1.numerics import (
    Subspace,
    matrix_exp,
    nullspace,
    orthonormalize,
    random_orthonormal,
    random_unit,
    rank,
    rng_from,
    symmetric_eigen,
)


def test_orthonormalize_identity():
    assert np.allclose(orthonormalize(np.eye(4)), np.eye(4))


def test_orthonormalize_duplicate_column():
    v = np.array([3.0, 4.0, 0.0])
    Q = orthonormalize(np.column_stack([v, v]))
    assert Q.shape == (3, 1)
    assert np.allclose(Q[:, 0], v / 5)


def test_orthonormalize_random_8x3():
    M = np.random.default_rng(42).standard_normal((8, 3))
    Q = orthonormalize(M)
    assert np.max(np.abs(Q.T @ Q - np.eye(3))) < 1e-12
    assert rank(np.column_stack([Q, M])) == 3


def test_orthonormalize_zero_matrix():
    assert orthonormalize(np.zeros((5, 2))).shape == (5, 0)


def test_symmetric_eigen_diag_and_zero():
    w, _ = symmetric_eigen(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(w, [1, 2, 3])
    w, _ = symmetric_eigen(np.zeros((3, 3)))
    assert np.allclose(w, 0)


def test_symmetric_eigen_reconstruction():
    A = np.random.default_rng(7).standard_normal((3, 3))
    S = A + A.T
    w, V = symmetric_eigen(S)
    assert np.max(np.abs(S - V @ np.diag(w) @ V.T)) < 1e-10
    assert np.all(np.diff(w) >= 0)


def test_symmetric_eigen_rejects_asymmetric():
    with pytest.raises(ValueError):
        symmetric_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_rank_and_nullspace_trivial():
    assert rank(np.eye(5)) == 5
    assert nullspace(np.eye(5)).shape == (5, 0)
    N = nullspace(np.zeros((3, 5)))
    assert N.shape == (5, 5)


def test_rank_two_outer_product():
    rng = np.random.default_rng(3)
    L = sum(np.outer(rng.standard_normal(5), rng.standard_normal(5)) for _ in range(2))
    assert rank(L) == 2
    N = nullspace(L)
    assert N.shape == (5, 3)
    assert np.max(np.abs(L @ N)) < 1e-12


def test_matrix_exp():
    assert np.allclose(matrix_exp(np.zeros((3, 3))), np.eye(3))
    t = 0.9
    R = matrix_exp(t * np.array([[0.0, -1.0], [1.0, 0.0]]))
    assert np.allclose(R, [[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]], atol=1e-14)
    X = np.random.default_rng(5).standard_normal((6, 6))
    assert np.max(np.abs(matrix_exp(X) @ matrix_exp(-X) - np.eye(6))) < 1e-10


def test_random_unit_determinism_and_uniformity():
    assert np.linalg.norm(random_unit(5, 11)) == pytest.approx(1.0)
    assert np.array_equal(random_unit(5, 11), random_unit(5, 11))
    rng = rng_from(0)
    pts = np.array([random_unit(5, rng) for _ in range(10_000)])
    assert np.linalg.norm(pts.mean(axis=0)) < 0.05


def test_random_orthonormal():
    Q = random_orthonormal(7, 3, 1)
    assert np.allclose(Q.T @ Q, np.eye(3))


def test_subspace_basics():
    W = Subspace.span(np.random.default_rng(1).standard_normal((6, 2)))
    C = W.complement()
    assert (W.dim, C.dim, W.ambient_dim) == (2, 4, 6)
    assert np.allclose(W.projector() + C.projector(), np.eye(6))
    v = W.random_unit(3)
    assert W.contains(v) and not C.contains(v)
    assert Subspace.zero(4).complement().dim == 4
    with pytest.raises(ValueError):
        Subspace(np.ones((3, 2)))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9), st.integers(1, 9), st.integers(0, 2**32 - 1))
def test_orthonormalize_property(n, k, seed):
    k = min(k, n)
    M = np.random.default_rng(seed).standard_normal((n, k))
    Q = orthonormalize(M)
    assert Q.shape == (n, k)
    assert np.max(np.abs(Q.T @ Q - np.eye(k))) < 1e-10
    # same span
    assert np.max(np.abs(M - Q @ (Q.T @ M))) < 1e-9 * max(1.0, np.abs(M).max())


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 8), st.integers(0, 2**32 - 1))
def test_rank_nullity(m, n, r, seed):
    r = min(r, m, n)
    rng = np.random.default_rng(seed)
    L = rng.standard_normal((m, r)) @ rng.standard_normal((r, n))
    assert rank(L) == r
    assert nullspace(L).shape[1] == n - r
