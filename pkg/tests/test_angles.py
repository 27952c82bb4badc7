import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohom1.angles import (
    QKAngleTriple,
    canonical_basis_at,
    check_quaternionic_structures,
    kahler_angle_at,
    kahler_constancy,
    qk_angle_at,
    qk_constancy,
)
from cohom1.families import FamilySpec, construct
from cohom1.model import SolvableModel, complex_structure, quaternionic_structures
from cohom1.numerics import Subspace, matrix_exp
from cohom1.stabilizers import kx_basis

HALF = math.pi / 2
C3 = SolvableModel("C", 3)
H2, H3 = SolvableModel("H", 2), SolvableModel("H", 3)


def unit(i, n):
    x = np.zeros(n)
    x[i] = 1.0
    return x


def test_kahler_angle_complex_line_and_real_plane():
    J = complex_structure(C3)
    line = Subspace.span(np.column_stack([unit(0, 4), J @ unit(0, 4)]))
    v = line.random_unit(1)
    assert kahler_angle_at(line, v, J) == pytest.approx(0.0, abs=1e-12)
    real = Subspace.span(np.column_stack([unit(0, 4), unit(2, 4)]))
    assert kahler_angle_at(real, real.random_unit(2), J) == pytest.approx(HALF, abs=1e-12)


@pytest.mark.parametrize("phi", [0.1, 0.6, 1.3])
def test_kahler_angle_block_sampled(phi):
    J = complex_structure(C3)
    x1, x2 = unit(0, 4), unit(2, 4)
    W = Subspace.span(np.column_stack([x1, math.cos(phi) * J @ x1 + math.sin(phi) * x2]))
    rng = np.random.default_rng(42)
    for _ in range(1000):
        v = W.basis @ rng.standard_normal(2)
        v /= np.linalg.norm(v)
        Jv = J @ v
        cos = np.linalg.norm(W.project(Jv))
        assert math.acos(min(1.0, cos)) == pytest.approx(phi, abs=1e-7)
    assert kahler_angle_at(W, W.random_unit(5), J) == pytest.approx(phi, abs=1e-12)
    rep = kahler_constancy(W, J)
    assert rep.constant and rep.phi == pytest.approx(phi, abs=1e-12)


def test_kahler_angle_rejects_outside_vector():
    J = complex_structure(C3)
    W = Subspace.span(np.column_stack([unit(0, 4), unit(2, 4)]))
    with pytest.raises(ValueError):
        kahler_angle_at(W, unit(1, 4), J)


def test_kahler_constancy_cases():
    J = complex_structure(C3)
    cplx = kahler_constancy(Subspace.span(np.column_stack([unit(0, 4), unit(1, 4)])), J)
    assert cplx.constant and cplx.phi == pytest.approx(0.0, abs=1e-12)
    real = kahler_constancy(Subspace.span(np.column_stack([unit(0, 4), unit(2, 4)])), J)
    assert real.constant and real.phi == pytest.approx(HALF, abs=1e-12)
    model = SolvableModel("C", 4)
    J4 = complex_structure(model)
    mixed = Subspace.span(np.column_stack([unit(0, 6), unit(1, 6), unit(2, 6)]))
    rep = kahler_constancy(mixed, J4)
    assert not rep.constant and rep.defect == pytest.approx(1.0, abs=1e-12)


def test_qk_angle_examples():
    Js = quaternionic_structures(H3)
    quat = Subspace.span(np.eye(8)[:, :4])
    assert np.allclose(qk_angle_at(quat, quat.random_unit(0), Js).angles, 0, atol=1e-12)
    real = Subspace.span(np.column_stack([unit(0, 8), unit(4, 8)]))
    assert np.allclose(qk_angle_at(real, real.random_unit(0), Js).angles, HALF, atol=1e-12)
    imh = Subspace.span(np.eye(8)[:, 1:4])
    assert np.allclose(qk_angle_at(imh, imh.random_unit(0), Js).angles, (0, 0, HALF), atol=1e-12)


def test_qk_rejects_bad_structures():
    J1, J2, J3 = quaternionic_structures(H3)
    W = Subspace.span(np.eye(8)[:, :2])
    with pytest.raises(ValueError):
        qk_angle_at(W, unit(0, 8), (J1, J1, J3))
    with pytest.raises(ValueError):
        check_quaternionic_structures((J1, J2, -J3))


def test_qk_constancy_totally_complex():
    J1 = quaternionic_structures(H3)[0]
    W = Subspace.span(np.column_stack([unit(0, 8), J1 @ unit(0, 8), unit(4, 8), J1 @ unit(4, 8)]))
    tri = qk_constancy(W, quaternionic_structures(H3))
    assert tri.max_deviation((0, HALF, HALF)) < 1e-8
    assert tri.constancy_defect < 1e-8


@pytest.mark.parametrize("model", [H3, SolvableModel("H", 4)])
def test_every_plane_has_constant_triple(model):
    rng = np.random.default_rng(11)
    Js = quaternionic_structures(model)
    for _ in range(10):
        W = Subspace.span(rng.standard_normal((model.dim_v, 2)))
        tri = qk_constancy(W, Js)
        assert tri.constancy_defect < 1e-8
        assert tri.phi2 == pytest.approx(HALF, abs=1e-8)
        assert tri.phi3 == pytest.approx(HALF, abs=1e-8)


def test_three_dims_in_quaternionic_line():
    rng = np.random.default_rng(12)
    Js = quaternionic_structures(H2)
    for _ in range(10):
        W = Subspace.span(rng.standard_normal((4, 3)))
        tri = qk_constancy(W, Js)
        assert tri.max_deviation((0, 0, HALF)) < 1e-8


def test_structure_rotation_invariance():
    rng = np.random.default_rng(13)
    Js = quaternionic_structures(H3)
    Q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    if np.linalg.det(Q) < 0:
        Q[:, 0] *= -1
    rotated = tuple(sum(Q[i, a] * Js[i] for i in range(3)) for a in range(3))
    for _ in range(10):
        W = Subspace.span(rng.standard_normal((8, 3)))
        v = W.random_unit(int(rng.integers(1 << 30)))
        assert qk_angle_at(W, v, Js).max_deviation(qk_angle_at(W, v, rotated)) < 1e-8


def test_equivariance_under_kx():
    rng = np.random.default_rng(14)
    Js = quaternionic_structures(H3)
    g = kx_basis(H3)
    for _ in range(10):
        W = Subspace.span(rng.standard_normal((8, 3)))
        v = W.random_unit(int(rng.integers(1 << 30)))
        k = matrix_exp(g.random_element(rng))
        assert qk_angle_at(W, v, Js).max_deviation(qk_angle_at(W.transform(k), k @ v, Js)) < 1e-8


def test_scale_invariance():
    J = complex_structure(C3)
    W = construct(FamilySpec("kangle", C3, 1, phi=0.4))
    scaled = Subspace.span(W.basis * 7.5)
    assert kahler_constancy(scaled, J).phi == pytest.approx(0.4, abs=1e-12)


def test_canonical_basis_family_e():
    Js = quaternionic_structures(H3)
    W = construct(FamilySpec("e", H3, 1, phi=0.7))
    v = W.random_unit(3)
    J1p, J2p, J3p = canonical_basis_at(W, v, Js)
    assert np.allclose(J1p @ J2p, J3p, atol=1e-10)
    assert kahler_angle_at(W, v, J1p) == pytest.approx(0.7, abs=1e-8)
    assert kahler_angle_at(W, v, J3p) == pytest.approx(HALF, abs=1e-8)


def test_canonical_basis_quaternionic_frame_valid():
    Js = quaternionic_structures(H3)
    W = construct(FamilySpec("a", H3, 1))
    J1p, J2p, J3p = canonical_basis_at(W, W.random_unit(0), Js)
    check_quaternionic_structures((J1p, J2p, J3p))


def test_qk_triple_helpers():
    t = QKAngleTriple(0.1, 0.2, 0.3)
    assert tuple(t) == (0.1, 0.2, 0.3)
    assert t.max_deviation((0.1, 0.2, 0.4)) == pytest.approx(0.1)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_qk_triple_sorted_and_bounded(k, seed):
    rng = np.random.default_rng(seed)
    Js = quaternionic_structures(H3)
    W = Subspace.span(rng.standard_normal((8, k)))
    v = W.random_unit(seed)
    t = qk_angle_at(W, v, Js).angles
    assert all(-1e-12 <= a <= HALF + 1e-12 for a in t)
    assert t[0] <= t[1] + 1e-12 <= t[2] + 2e-12
    # F = P_W J |_W is skew
    for J in Js:
        F = W.basis.T @ J @ W.basis
        assert np.allclose(F, -F.T, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_kahler_constancy_matches_sampling(k, seed):
    rng = np.random.default_rng(seed)
    J = complex_structure(C3)
    W = Subspace.span(rng.standard_normal((4, k)))
    rep = kahler_constancy(W, J)
    vals = [kahler_angle_at(W, W.random_unit(s), J) for s in range(8)]
    if rep.constant:
        assert max(vals) - min(vals) < 1e-6
