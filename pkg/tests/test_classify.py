import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohom1.classify import (
    ClassificationRecord,
    Equivalence,
    Verdict,
    classify_normal_space,
    classify_subspace,
    match_quaternionic_family,
    orbit_equivalent,
)
from cohom1.families import FamilySpec, construct, enumerate_admissible
from cohom1.model import SolvableModel
from cohom1.numerics import Subspace, matrix_exp
from cohom1.stabilizers import kx_basis

HALF = math.pi / 2
TG, NTG = Verdict.TOTALLY_GEODESIC, Verdict.NON_TOTALLY_GEODESIC


def M(text):
    return SolvableModel.parse(text)


def generic(n, k, seed):
    return Subspace.span(np.random.default_rng(seed).standard_normal((n, k)))


def test_codim_shortcuts():
    m = M("C:3")
    assert classify_subspace(m, Subspace.full(4)).verdict is Verdict.TRANSITIVE
    assert classify_subspace(m, generic(4, 3, 0)).verdict is Verdict.FOLIATION_SOLVABLE


def test_c2_every_admissible_input_totally_geodesic():
    m = M("C:2")
    rec = classify_subspace(m, Subspace.zero(2))
    assert rec.verdict is TG and rec.label == "CH^1"
    rec = classify_normal_space(m, generic(2, 2, 1))
    assert rec.verdict is TG


def test_h2_families():
    m = M("H:2")
    b = classify_normal_space(m, construct(FamilySpec("b", m)))
    d = classify_normal_space(m, construct(FamilySpec("d", m)))
    a = classify_normal_space(m, construct(FamilySpec("a", m)))
    assert (b.verdict, b.family) == (NTG, "b")
    assert (d.verdict, d.family) == (NTG, "d")
    assert a.verdict is TG and a.label == "HH^1"
    # any 2- or 3-dim normal space in HH^2 falls in (b) or (d)
    for s in range(5):
        assert classify_normal_space(m, generic(4, 2, s)).family == "b"
        assert classify_normal_space(m, generic(4, 3, s)).family == "d"


def test_octonionic_generic_four_dims():
    m = M("O:2")
    for s in range(5):
        rec = classify_normal_space(m, generic(8, 4, s))
        assert rec.verdict is NTG and rec.family == "O4"
        assert 0.0 <= rec.coordinate <= 1.0


def test_octonionic_table():
    m = M("O:2")
    assert classify_normal_space(m, generic(8, 5, 1)).verdict is Verdict.NOT_COHOMOGENEITY_ONE
    for k in (2, 3, 6, 7):
        assert classify_normal_space(m, generic(8, k, k)).verdict is NTG
    assert classify_normal_space(m, Subspace.full(8)).label == "OH^1"


def test_real_model_always_totally_geodesic():
    m = M("R:5")
    for k in range(2, 5):
        rec = classify_normal_space(m, generic(4, k, k))
        assert rec.verdict is TG and rec.label == f"RH^{4 - k + 1}"


@pytest.mark.parametrize("text", ["C:3", "C:4", "H:2", "H:3", "H:4"])
def test_enumerated_families_classify_as_expected(text):
    m = M(text)
    for spec in enumerate_admissible(m):
        phi = 0.6 if spec.phi_range else None
        W = construct(FamilySpec(spec.label, m, spec.k, phi=phi))
        rec = classify_normal_space(m, W)
        if spec.totally_geodesic:
            assert rec.verdict is TG, spec
            continue
        assert rec.verdict is NTG, spec
        if spec.label in ("kangle", "e", "f"):
            assert rec.coordinate == pytest.approx(0.6, abs=1e-8)
        if m.tag.name == "H" and W.dim == 2:
            assert rec.coordinate is not None


def test_basis_invariance():
    m = M("H:3")
    W = generic(8, 2, 5)
    R, _ = np.linalg.qr(np.random.default_rng(1).standard_normal((2, 2)))
    r1 = classify_normal_space(m, W)
    r2 = classify_normal_space(m, Subspace(W.basis @ R))
    assert r1.verdict is r2.verdict and r1.family == r2.family
    assert abs(r1.coordinate - r2.coordinate) < 1e-8


def test_codim_two_recovers_phi():
    m = M("H:4")
    for phi in (0.0, 0.4, 1.1, HALF):
        rec = classify_normal_space(m, construct(FamilySpec("e", m, 1, phi=phi)))
        assert rec.coordinate == pytest.approx(phi, abs=1e-8)


def test_orbit_equivalence_examples():
    m = M("H:4")
    c1 = classify_normal_space(m, construct(FamilySpec("c", m, 2)))
    rotated = Subspace.span(construct(FamilySpec("c", m, 2)).basis @ np.array([[1.0, 1.0], [1.0, -1.0]]))
    c2 = classify_normal_space(m, rotated)
    assert orbit_equivalent(c1, c2) is Equivalence.EQUIVALENT
    assert orbit_equivalent(c1, c1)
    mc = M("C:5")
    k3 = classify_normal_space(mc, construct(FamilySpec("kangle", mc, 1, phi=0.3)))
    k7 = classify_normal_space(mc, construct(FamilySpec("kangle", mc, 1, phi=0.7)))
    assert orbit_equivalent(k3, k7) is Equivalence.DISTINCT


def test_orbit_equivalence_undecidable_and_errors():
    unknown = ClassificationRecord("H:4", 6, Verdict.UNKNOWN_CONSTANT_ANGLE)
    known = ClassificationRecord("H:4", 2, NTG, family="b")
    res = orbit_equivalent(unknown, known)
    assert res is Equivalence.UNDECIDABLE
    with pytest.raises(ValueError):
        bool(res)
    with pytest.raises(ValueError):
        orbit_equivalent(known, ClassificationRecord("H:3", 2, NTG, family="b"))
    with pytest.raises(ValueError):
        orbit_equivalent(known, ClassificationRecord("H:4", 5, Verdict.NOT_COHOMOGENEITY_ONE))


def test_codim_two_h_families_share_interval():
    m = M("H:4")
    b = classify_normal_space(m, construct(FamilySpec("b", m, 1)))
    e0 = classify_normal_space(m, construct(FamilySpec("e", m, 1, phi=0.0)))
    assert orbit_equivalent(b, e0) is Equivalence.EQUIVALENT


def test_match_quaternionic_family():
    assert match_quaternionic_family((0, 0, 0)) == ("a", None)
    assert match_quaternionic_family((0, HALF, HALF)) == ("b", None)
    assert match_quaternionic_family((0.3, HALF, HALF))[0] == "e"
    label, free = match_quaternionic_family((0, 0.4, 0.4))
    assert label == "f" and free == pytest.approx(0.4)
    assert match_quaternionic_family((0.3, 0.3, 0.3)) == (None, None)
    assert match_quaternionic_family((0, 0, HALF - 1e-3)) == (None, None)


def test_record_round_trip():
    m = M("H:3")
    rec = classify_normal_space(m, construct(FamilySpec("e", m, 1, phi=0.5)))
    again = ClassificationRecord.from_dict(rec.to_dict())
    assert again == rec
    assert "family e" in rec.text()


def test_malformed_input():
    with pytest.raises(ValueError):
        classify_subspace(M("H:3"), np.ones((4, 2)))


@pytest.mark.parametrize("text", ["R:4", "C:4", "H:3", "O:2"])
def test_equivariance_records(text):
    m = M(text)
    g = kx_basis(m)
    rng = np.random.default_rng(99)
    for _ in range(5):
        k = int(rng.integers(0, m.dim_v - 1))
        v0 = Subspace.span(rng.standard_normal((m.dim_v, k))) if k else Subspace.zero(m.dim_v)
        U = matrix_exp(g.random_element(rng))
        r1 = classify_subspace(m, v0)
        r2 = classify_subspace(m, v0.transform(U) if k else v0)
        assert (r1.verdict, r1.family, r1.label) == (r2.verdict, r2.family, r2.label)
        if r1.coordinate is not None:
            assert abs(r1.coordinate - r2.coordinate) < 1e-8


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 4), st.integers(0, 2**32 - 1))
def test_real_model_property(k, seed):
    rec = classify_normal_space(M("R:6"), generic(5, k, seed))
    assert rec.verdict is not NTG
