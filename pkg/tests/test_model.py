import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohom1.algebra import AlgebraElement, AlgebraTag, multiply
from cohom1.model import (
    B,
    ModelVector,
    SolvableModel,
    beta,
    bracket,
    bracket_flat,
    build_s,
    center_dim,
    complex_structure,
    derived_dim,
    is_subalgebra,
    j_map,
    jacobi_defect,
    quaternionic_structures,
    SubalgebraBasis,
)
from cohom1.numerics import Subspace

MODELS = ["R:3", "C:3", "H:2", "H:3", "O:2"]


def model(text):
    return SolvableModel.parse(text)


def test_parse_and_dims():
    m = model("H:3")
    assert (m.d, m.slots, m.dim_v, m.dim_z, m.dim) == (4, 2, 8, 3, 12)
    assert str(m) == "H:3"
    assert [model(f"{t}:2").dim_z for t in "RCHO"] == [0, 1, 3, 7]


@pytest.mark.parametrize("text", ["O:3", "C:1", "Q:2", "H3"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        model(text)


def test_j_map_complex():
    m = model("C:2")
    assert np.allclose(j_map(m, [0, 1], [1, 0]), [0, 1])
    assert np.allclose(j_map(m, [0, 0], [1, 0]), 0)


def test_j_map_rejects_real_part():
    with pytest.raises(ValueError):
        j_map(model("H:2"), [1, 0, 0, 0], np.ones(4))


@pytest.mark.parametrize("text", MODELS[1:])
def test_j_map_squares_to_minus_norm(text, rng):
    m = model(text)
    for _ in range(20):
        Z = np.concatenate([[0.0], rng.standard_normal(m.d - 1)])
        U = rng.standard_normal(m.dim_v)
        JJ = j_map(m, Z, j_map(m, Z, U))
        assert np.max(np.abs(JJ + np.dot(Z, Z) * U)) < 1e-12 * max(1.0, np.dot(Z, Z) * np.abs(U).max())
        J = m.j_matrix(Z)
        assert np.allclose(J.T, -J, atol=1e-15)


@pytest.mark.parametrize("text", MODELS[1:])
def test_j_map_is_slotwise_right_multiplication(text, rng):
    m = model(text)
    Z = AlgebraElement(m.tag, np.concatenate([[0.0], rng.standard_normal(m.d - 1)]))
    U = rng.standard_normal(m.dim_v)
    out = j_map(m, Z, U)
    for s in range(m.slots):
        sl = slice(s * m.d, (s + 1) * m.d)
        assert np.allclose(out[sl], multiply(AlgebraElement(m.tag, U[sl]), Z).coords, atol=1e-13)


def test_bracket_grading():
    m = model("H:3")
    rng = np.random.default_rng(0)
    V = ModelVector(m, v=rng.standard_normal(m.dim_v))
    Z = ModelVector(m, z=rng.standard_normal(m.dim_z))
    assert np.allclose(bracket(B(m), V).flat, V.flat)
    assert np.allclose(bracket(B(m), Z).flat, (2 * Z).flat)
    assert np.allclose(bracket(Z, V).flat, 0)
    assert np.allclose(bracket(Z, Z).flat, 0)


def test_bracket_model_mismatch():
    with pytest.raises(ValueError):
        bracket(B(model("C:2")), B(model("C:3")))


def test_beta_complex_oracle():
    m = model("C:2")
    U, V = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    b = bracket(ModelVector(m, v=U), ModelVector(m, v=V))
    assert b.t == 0 and np.allclose(b.v, 0)
    # oracle: <beta, Z> = <J_Z U, V> over the z basis
    oracle = [np.dot(j_map(m, Zb, U), V) for Zb in ([0.0, 1.0],)]
    assert np.allclose(b.z, oracle)
    assert abs(b.z[0]) > 0.5


@pytest.mark.parametrize("text", MODELS[1:])
def test_beta_defining_formula(text, rng):
    m = model(text)
    U, V = rng.standard_normal(m.dim_v), rng.standard_normal(m.dim_v)
    E = np.eye(m.d)[1:]
    oracle = [np.dot(j_map(m, Zb, U), V) for Zb in E]
    assert np.allclose(beta(m, U, V), oracle, atol=1e-12)


def _jacobi_brute(m):
    E = np.eye(m.dim)
    worst = 0.0
    for a, b, c in itertools.combinations(range(m.dim), 3):
        x, y, z = E[a], E[b], E[c]
        jac = (bracket_flat(m, bracket_flat(m, x, y), z)
               + bracket_flat(m, bracket_flat(m, y, z), x)
               + bracket_flat(m, bracket_flat(m, z, x), y))
        worst = max(worst, float(np.linalg.norm(jac)))
    return worst


@pytest.mark.parametrize("text", ["C:3", "H:2", "O:2"])
def test_jacobi_brute_force(text):
    m = model(text)
    assert _jacobi_brute(m) < 1e-12
    assert jacobi_defect(m) < 1e-12


@pytest.mark.parametrize("tag", "RCH")
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_jacobi_all_small_models(tag, n):
    assert jacobi_defect(SolvableModel(tag, n)) < 1e-12


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_complex_heisenberg(n):
    m = SolvableModel("C", n)
    assert m.dim - 1 == 2 * n - 1
    assert derived_dim(m) == 1
    assert center_dim(m) == 1


@pytest.mark.parametrize("text", ["C:3", "H:3", "O:2"])
def test_derived_is_center(text):
    m = model(text)
    assert derived_dim(m) == m.dim_z == center_dim(m)


def test_build_s_extremes():
    m = model("H:3")
    full = build_s(m, Subspace.full(m.dim_v))
    assert full.dim == m.dim
    zero = build_s(m, Subspace.zero(m.dim_v))
    assert zero.dim == 1 + m.dim_z
    assert np.allclose(zero.vectors[m.v_slice], 0)


@pytest.mark.parametrize("text", MODELS)
def test_build_s_random_is_subalgebra(text, rng):
    m = model(text)
    for k in range(m.dim_v + 1):
        v0 = Subspace.span(rng.standard_normal((m.dim_v, k))) if k else Subspace.zero(m.dim_v)
        res = is_subalgebra(build_s(m, v0))
        assert res.closed and res.defect < 1e-12


def test_span_b_and_v_is_subalgebra():
    m = model("C:3")
    v = np.zeros(m.dim)
    v[m.v_slice] = np.random.default_rng(1).standard_normal(m.dim_v)
    s = SubalgebraBasis(m, np.column_stack([np.eye(m.dim)[0], v]))
    assert is_subalgebra(s).closed


def test_two_generic_v_vectors_not_closed():
    m = model("C:3")
    rng = np.random.default_rng(2)
    u, w = np.zeros(m.dim), np.zeros(m.dim)
    u[m.v_slice] = rng.standard_normal(m.dim_v)
    w[m.v_slice] = rng.standard_normal(m.dim_v)
    assert np.linalg.norm(bracket_flat(m, u, w)) > 1e-3
    res = is_subalgebra(SubalgebraBasis(m, np.column_stack([u, w])))
    assert not res.closed and res.defect > 1e-3


def test_structures():
    J = complex_structure(model("C:3"))
    assert np.allclose(J @ J, -np.eye(4))
    J1, J2, J3 = quaternionic_structures(model("H:3"))
    assert np.allclose(J1 @ J2, J3)
    assert np.allclose(J2 @ J3, J1)
    assert np.allclose(J3 @ J1, J2)
    with pytest.raises(ValueError):
        complex_structure(model("H:2"))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(MODELS), st.integers(0, 2**32 - 1))
def test_bracket_antisymmetric_and_bilinear(text, seed):
    m = model(text)
    rng = np.random.default_rng(seed)
    x, y, w = (rng.standard_normal(m.dim) for _ in range(3))
    a = rng.standard_normal()
    assert np.allclose(bracket_flat(m, x, y), -bracket_flat(m, y, x), atol=1e-12)
    assert np.allclose(bracket_flat(m, a * x + w, y), a * bracket_flat(m, x, y) + bracket_flat(m, w, y), atol=1e-10)
