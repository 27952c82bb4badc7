"""Self-verification suite.

Every check is a function ``(config) -> Outcome``.  Thresholds are pinned per
check; ``VerifyConfig.tol`` (when set) replaces every floating-point defect
threshold, which is how a deliberately absurd tolerance produces reported
failures.  Integer checks (dimensions, ranks) are exact and unaffected.

The report lists checks in id order, so output is deterministic apart from
``runtimeMs``.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.optimize

from . import __version__
from .algebra import AlgebraTag, structure_tensor
from .angles import kahler_angle_at, qk_angle_at, qk_constancy
from .catalog import moduli_table
from .classify import Equivalence, Verdict, classify_normal_space, classify_subspace, orbit_equivalent
from .families import ANGLE_LABELS, FamilySpec, construct, enumerate_admissible
from .model import SolvableModel, build_s, center_dim, derived_dim, is_subalgebra, jacobi_defect, quaternionic_structures
from .numerics import DEFAULT_SEED, Subspace, matrix_exp, random_orthonormal, rng_from
from .stabilizers import (
    _g2_matrices, _spin7_matrices, cayley_modulus, g2_basis, grassmann_orbit_dim, kx_basis, normalizer_in,
    spin7_basis, sphere_transitivity,
)

HALF_PI = math.pi / 2
PHI_SET = (0.2, 0.7853, 1.2)


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = DEFAULT_SEED
    samples: int = 64
    tol: float | None = None
    only: tuple[str, ...] = ()
    jobs: int = 1


@dataclass
class Outcome:
    passed: bool
    margin: float
    observed: float | None = None
    threshold: float | None = None
    detail: str = ""


@dataclass(frozen=True)
class Check:
    id: str
    description: str
    anchor: str
    tags: tuple[str, ...]
    run: Callable[[VerifyConfig], Outcome]


def _thr(cfg: VerifyConfig, pinned: float) -> float:
    return pinned if cfg.tol is None else cfg.tol


def _defect(observed: float, threshold: float, detail: str = "") -> Outcome:
    return Outcome(bool(observed < threshold), threshold - observed, observed, threshold, detail)


def _exact(mismatches: list, detail_ok: str) -> Outcome:
    if mismatches:
        return Outcome(False, -float(len(mismatches)), float(len(mismatches)), 0.0, "; ".join(map(str, mismatches[:6])))
    return Outcome(True, 0.0, 0.0, 0.0, detail_ok)


def _combine(*outcomes: Outcome) -> Outcome:
    passed = all(o.passed for o in outcomes)
    worst = min(outcomes, key=lambda o: o.margin)
    detail = " | ".join(o.detail for o in outcomes if o.detail)
    return Outcome(passed, worst.margin, worst.observed, worst.threshold, detail)


# --- 1: algebra -------------------------------------------------------------

def _products(T, X, Y):
    return np.einsum("ni,nj,ijk->nk", X, Y, T)


def check_algebra(cfg: VerifyConfig) -> Outcome:
    rng = rng_from(cfg.seed)
    worst = 0.0
    parts = []
    for tag in AlgebraTag:
        d, T = tag.dim, structure_tensor(tag)
        X, Y = rng.standard_normal((2, 1000, d))
        Z = rng.standard_normal((1000, d))
        Z[:, 0] = 0.0
        comp = np.abs(np.linalg.norm(_products(T, X, Y), axis=1) - np.linalg.norm(X, axis=1) * np.linalg.norm(Y, axis=1))
        left = np.abs(_products(T, X, _products(T, X, Y)) - _products(T, _products(T, X, X), Y)).max(axis=1)
        right = np.abs(_products(T, _products(T, Y, X), X) - _products(T, Y, _products(T, X, X))).max(axis=1)
        zz = _products(T, _products(T, X, Z), Z) + (np.linalg.norm(Z, axis=1) ** 2)[:, None] * X
        w = max(comp.max(), left.max(), right.max(), np.abs(zz).max())
        parts.append(f"{tag.name}:{w:.1e}")
        worst = max(worst, w)
    return _defect(worst, _thr(cfg, 1e-12), "max defect " + " ".join(parts))


# --- 2: model ---------------------------------------------------------------

def _models_up_to(nmax: int = 5):
    for tag in (AlgebraTag.R, AlgebraTag.C, AlgebraTag.H):
        for n in range(2, nmax + 1):
            yield SolvableModel(tag, n)
    yield SolvableModel(AlgebraTag.O, 2)


def check_model(cfg: VerifyConfig) -> Outcome:
    jac = max(jacobi_defect(m) for m in _models_up_to())
    bad = []
    for tag, dz in zip(AlgebraTag, (0, 1, 3, 7)):
        if SolvableModel(tag, 2).dim_z != dz:
            bad.append(f"dim z {tag.name}")
    for n in range(2, 6):
        m = SolvableModel(AlgebraTag.C, n)
        if (m.dim - 1, center_dim(m), derived_dim(m)) != (2 * n - 1, 1, 1):
            bad.append(f"C:{n} not Heisenberg")
    return _combine(_defect(jac, _thr(cfg, 1e-12), f"Jacobi {jac:.1e}"), _exact(bad, "dim z = (0,1,3,7); C-models Heisenberg"))


# --- 3: closure -------------------------------------------------------------

CLOSURE_MODELS = ("R:5", "C:4", "H:3", "O:2")


def check_closure(cfg: VerifyConfig) -> Outcome:
    rng = rng_from(cfg.seed)
    worst, failures = 0.0, []
    thr = _thr(cfg, 1e-10)
    for name in CLOSURE_MODELS:
        m = SolvableModel.parse(name)
        for _ in range(100):
            k = int(rng.integers(0, m.dim_v + 1))
            v0 = Subspace(random_orthonormal(m.dim_v, k, rng), check=False)
            res = is_subalgebra(build_s(m, v0))
            worst = max(worst, res.defect)
            if res.defect >= thr:
                failures.append(name)
    return _defect(worst, thr, f"400 random v0, {len(failures)} not closed")


# --- 4: stabilizer dimensions ---------------------------------------------

def check_stabilizer_dims(cfg: VerifyConfig) -> Outcome:
    _spin7_matrices.cache_clear()
    _g2_matrices.cache_clear()
    t0 = time.perf_counter()
    d7, d2 = spin7_basis().dim, g2_basis().dim
    elapsed = time.perf_counter() - t0
    bad = [f"spin7 dim {d7}"] if d7 != 21 else []
    bad += [f"g2 dim {d2}"] if d2 != 14 else []
    timing = Outcome(elapsed < 2.0, 2.0 - elapsed, elapsed, 2.0, f"{elapsed * 1e3:.0f} ms")
    return _combine(_exact(bad, "spin7 = 21, g2 = 14"), timing)


# --- 5: Spin(7) orbit dimensions --------------------------------------------

def random_spin7_element(rng, scale: float = 1.0) -> np.ndarray:
    return matrix_exp(spin7_basis().random_element(rng, scale))


def check_spin7_orbits(cfg: VerifyConfig) -> Outcome:
    rng = rng_from(cfg.seed)
    g = spin7_basis()
    expected = {1: 7, 2: 12, 3: 15, 4: 15}
    bad = []
    for k, want in expected.items():
        for _ in range(16):
            got = grassmann_orbit_dim(g, Subspace(random_orthonormal(8, k, rng), check=False))
            if got != want:
                bad.append(f"{k}-plane orbit {got} != {want}")
    H = Subspace(np.eye(8)[:, :4])
    for _ in range(16):
        V = H.transform(random_spin7_element(rng))
        got, stab = grassmann_orbit_dim(g, V), normalizer_in(g, V).dim
        if (got, stab) != (12, 9):
            bad.append(f"Cayley plane orbit {got}, stabilizer {stab}")
    return _exact(bad, "orbits 7/12/15/15, Cayley 12 (stabilizer 9), 16 planes each")


# --- 6: O H^2 transitivity table -----------------------------------------

def _structured_planes(k: int, rng) -> list[Subspace]:
    E = np.eye(8)
    planes = [Subspace(E[:, :k]), Subspace(E[:, 8 - k:])]
    if k == 4:
        planes.append(Subspace(E[:, [0, 1, 2, 4]]))
    planes.append(planes[0].transform(random_spin7_element(rng)))
    return planes


def check_octonion_transitivity(cfg: VerifyConfig) -> Outcome:
    rng = rng_from(cfg.seed)
    m = SolvableModel(AlgebraTag.O, 2)
    g = kx_basis(m)
    bad, margins = [], []
    for k in (2, 3, 4, 5, 6, 7):
        planes = [Subspace(random_orthonormal(8, k, rng), check=False) for _ in range(4)]
        planes += _structured_planes(k, rng)
        for W in planes:
            res = sphere_transitivity(normalizer_in(g, W.complement()), W, cfg.samples, rng)
            if res.transitive != (k != 5):
                bad.append(f"dim W = {k}: transitive = {res.transitive}")
            if res.transitive:
                margins.append(res.margin)
    out = _exact(bad, f"transitive for dim W in {{2,3,4,6,7}}, not for 5; min margin {min(margins):.2e}")
    return out


# --- 7: family angle table ------------------------------------------------

def _family_specs(n: int):
    m = SolvableModel(AlgebraTag.H, n)
    for spec in enumerate_admissible(m):
        phis = PHI_SET if spec.label in ANGLE_LABELS else (None,)
        for phi in phis:
            yield FamilySpec(spec.label, m, spec.k, phi)


def expected_triple(label: str, phi: float | None) -> tuple[float, float, float]:
    return {
        "a": (0.0, 0.0, 0.0), "b": (0.0, HALF_PI, HALF_PI), "c": (HALF_PI,) * 3, "d": (0.0, 0.0, HALF_PI),
        "e": (phi, HALF_PI, HALF_PI), "f": (0.0, phi, phi),
    }[label]


def check_family_angles(cfg: VerifyConfig) -> Outcome:
    worst, count = 0.0, 0
    for n in (2, 3, 4):
        S = quaternionic_structures(SolvableModel(AlgebraTag.H, n))
        for spec in _family_specs(n):
            t = qk_constancy(construct(spec), S, cfg.samples, cfg.seed)
            dev = max(t.max_deviation(expected_triple(spec.label, spec.phi)), t.constancy_defect)
            worst = max(worst, dev)
            count += 1
    return _defect(worst, _thr(cfg, 1e-8), f"{count} family subspaces in H:2..4")


# --- 8: eigen reduction vs brute force --------------------------------------

def fibonacci_sphere(count: int) -> np.ndarray:
    i = np.arange(count) + 0.5
    z = 1 - 2 * i / count
    r = np.sqrt(1 - z * z)
    theta = math.pi * (1 + 5 ** 0.5) * i
    return np.column_stack([r * np.cos(theta), r * np.sin(theta), z])


def brute_force_extremes(W: Subspace, v: np.ndarray, structures, points: int = 10_000) -> tuple[float, float]:
    """Min and max of the Kähler angle ``phi(v, J(a))`` over the 2-sphere of structures.

    Direct evaluation on a Fibonacci lattice, then a local Nelder-Mead polish
    around the best lattice point in its tangent plane (the lattice spacing
    alone only resolves the extremes to about 1e-3).
    """
    Jv = np.column_stack([np.asarray(J) @ v for J in structures])

    def angles(A):
        X = Jv @ (A / np.linalg.norm(A, axis=1, keepdims=True)).T
        inside = W.basis @ (W.basis.T @ X)
        return np.arctan2(np.linalg.norm(X - inside, axis=0), np.linalg.norm(inside, axis=0))

    grid = fibonacci_sphere(points)
    vals = angles(grid)
    extremes = []
    for sign, idx in ((1.0, int(np.argmin(vals))), (-1.0, int(np.argmax(vals)))):
        a0 = grid[idx]
        t1 = np.cross(a0, [1.0, 0.0, 0.0] if abs(a0[0]) < 0.9 else [0.0, 1.0, 0.0])
        t1 /= np.linalg.norm(t1)
        t2 = np.cross(a0, t1)
        res = scipy.optimize.minimize(
            lambda uv: sign * angles((a0 + uv[0] * t1 + uv[1] * t2)[None, :])[0],
            np.zeros(2),
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-15, "initial_simplex": [[0, 0], [0.02, 0], [0, 0.02]]},
        )
        extremes.append(min(sign * vals[idx], res.fun) * sign)
    return extremes[0], extremes[1]


def check_eigen_vs_sampling(cfg: VerifyConfig) -> Outcome:
    rng = rng_from(cfg.seed)
    worst = 0.0
    for i in range(20):
        n = 2 + i % 3
        m = SolvableModel(AlgebraTag.H, n)
        S = quaternionic_structures(m)
        k = int(rng.integers(2, m.dim_v))
        W = Subspace(random_orthonormal(m.dim_v, k, rng), check=False)
        v = W.random_unit(rng)
        t = qk_angle_at(W, v, S)
        lo, hi = brute_force_extremes(W, v, S)
        worst = max(worst, abs(t.phi1 - lo), abs(t.phi3 - hi))
    return _defect(worst, _thr(cfg, 1e-6), "20 random subspaces, 1e4 lattice points + polish")


# --- 9: C H^n moduli ----------------------------------------------------------

def check_complex_moduli(cfg: VerifyConfig) -> Outcome:
    bad, worst = [], 0.0
    for n in (3, 4):
        m = SolvableModel(AlgebraTag.C, n)
        seen_real, seen_angle = set(), set()
        for spec in enumerate_admissible(m):
            phis = PHI_SET if spec.label == "kangle" else (None,)
            for phi in phis:
                rec = classify_normal_space(m, construct(FamilySpec(spec.label, m, spec.k, phi)),
                                            samples=cfg.samples, seed=cfg.seed)
                if spec.label == "complex":
                    ok = rec.verdict is Verdict.TOTALLY_GEODESIC
                elif spec.label == "real":
                    ok = rec.verdict is Verdict.NON_TOTALLY_GEODESIC and rec.family == "real"
                    seen_real.add(rec.codim)
                else:
                    ok = rec.verdict is Verdict.NON_TOTALLY_GEODESIC and rec.family == "kangle"
                    if ok:
                        worst = max(worst, abs(rec.coordinate - phi))
                        seen_angle.add(rec.codim)
                if not ok:
                    bad.append(f"C:{n} {spec.label} k={spec.k}: {rec.verdict.value}")
        table = moduli_table("C", n)["non_totally_geodesic"]["entries"]
        if seen_real != {e["codim"] for e in table if e["family"] == "real"}:
            bad.append(f"C:{n} real codims {sorted(seen_real)}")
        if seen_angle != {e["codim"] for e in table if e["family"] == "kangle"}:
            bad.append(f"C:{n} kangle codims {sorted(seen_angle)}")
    m2 = SolvableModel(AlgebraTag.C, 2)
    rec = classify_subspace(m2, Subspace.zero(2), samples=cfg.samples, seed=cfg.seed)
    if rec.verdict is not Verdict.TOTALLY_GEODESIC:
        bad.append(f"C:2 v0 = 0 gives {rec.verdict.value}")
    return _combine(_exact(bad, "C:3, C:4 verdicts match; C:2 totally geodesic"),
                    _defect(worst, _thr(cfg, 1e-8), f"kangle coordinate error {worst:.1e}"))


# --- 10: H H^2 and codimension two -----------------------------------------

def codim2_oracle(W: Subspace, structures) -> float:
    """Smallest Kähler angle of a 2-plane: ``cos phi1 = |(<J_i u, w>)_i|``."""
    u, w = W.basis.T
    c = math.sqrt(sum(float(w @ (J @ u)) ** 2 for J in structures))
    return math.acos(min(1.0, c))


def check_quaternionic_moduli(cfg: VerifyConfig) -> Outcome:
    rng = rng_from(cfg.seed)
    bad = []
    m2 = SolvableModel(AlgebraTag.H, 2)
    non_tg = set()
    expect = {2: ("b", Verdict.NON_TOTALLY_GEODESIC), 3: ("d", Verdict.NON_TOTALLY_GEODESIC), 4: ("a", Verdict.TOTALLY_GEODESIC)}
    for k, (fam, verdict) in expect.items():
        for _ in range(8):
            W = Subspace(random_orthonormal(4, k, rng), check=False)
            rec = classify_normal_space(m2, W, samples=cfg.samples, seed=cfg.seed)
            if (rec.family, rec.verdict) != (fam, verdict):
                bad.append(f"H:2 dim {k}: {rec.family} {rec.verdict.value}")
            if rec.verdict is Verdict.NON_TOTALLY_GEODESIC:
                non_tg.add(rec.codim)
    if non_tg != {2, 3}:
        bad.append(f"H:2 non-tg codims {sorted(non_tg)}")
    if moduli_table("H", 2)["non_totally_geodesic"]["summary"] != "{2,3}":
        bad.append("H:2 catalog summary")

    worst = 0.0
    thr = _thr(cfg, 1e-8)
    for n in (3, 4):
        m = SolvableModel(AlgebraTag.H, n)
        S = quaternionic_structures(m)
        g = kx_basis(m)
        recs = []
        planes = [Subspace(random_orthonormal(m.dim_v, 2, rng), check=False) for _ in range(6)]
        planes += [construct(FamilySpec("e", m, 1, phi)) for phi in (0.3, 1.1)]
        planes += [construct(FamilySpec("b", m, 1)), construct(FamilySpec("c", m, 2))]
        for W in planes:
            for copy in (W, W.transform(matrix_exp(g.random_element(rng)))):
                rec = classify_normal_space(m, copy, samples=cfg.samples, seed=cfg.seed)
                t = rec.invariant
                if rec.verdict is not Verdict.NON_TOTALLY_GEODESIC or rec.codim != 2:
                    bad.append(f"H:{n} 2-plane: {rec.verdict.value}")
                    continue
                worst = max(worst, abs(t[1] - HALF_PI), abs(t[2] - HALF_PI),
                            abs(t[0] - codim2_oracle(copy, S)), abs(rec.coordinate - t[0]))
                recs.append(rec)
        for r1 in recs:
            for r2 in recs:
                eq = orbit_equivalent(r1, r2)
                want = abs(r1.coordinate - r2.coordinate) < 1e-6
                if (eq is Equivalence.EQUIVALENT) != want or eq is not orbit_equivalent(r2, r1):
                    bad.append(f"H:{n} orbit equivalence mismatch")
        for i in range(0, len(recs), 2):
            if orbit_equivalent(recs[i], recs[i + 1]) is not Equivalence.EQUIVALENT:
                bad.append(f"H:{n} K_x-related planes not equivalent")
    return _combine(_exact(bad, "H:2 = {2,3}; codim-2 classes = [0,pi/2]"),
                    _defect(worst, thr, f"phi recovery error {worst:.1e}"))


# --- 11: equivariance ---------------------------------------------------------

EQUIVARIANCE_MODELS = ("R:4", "C:4", "H:3", "O:2")


def _random_v0(m: SolvableModel, rng, i: int) -> Subspace:
    specs = [FamilySpec(s.label, m, s.k, PHI_SET[i % 3] if s.phi_range else None) for s in enumerate_admissible(m)]
    if i % 2 and specs:
        return construct(specs[i // 2 % len(specs)]).complement()
    k = int(rng.integers(0, m.dim_v + 1))
    return Subspace(random_orthonormal(m.dim_v, k, rng), check=False)


def _record_distance(r1, r2) -> float | None:
    """None when the records disagree structurally, else the coordinate/invariant gap."""
    if (r1.verdict, r1.codim, r1.family, r1.label) != (r2.verdict, r2.codim, r2.family, r2.label):
        return None
    gap = 0.0
    if (r1.coordinate is None) != (r2.coordinate is None):
        return None
    if r1.coordinate is not None:
        gap = abs(r1.coordinate - r2.coordinate)
    if r1.verdict is not Verdict.NOT_COHOMOGENEITY_ONE and r1.invariant is not None:
        gap = max(gap, float(np.max(np.abs(np.subtract(r1.invariant, r2.invariant)))))
    return gap


def check_equivariance(cfg: VerifyConfig) -> Outcome:
    rng = rng_from(cfg.seed)
    bad, worst = [], 0.0
    for name in EQUIVARIANCE_MODELS:
        m = SolvableModel.parse(name)
        g = kx_basis(m)
        for i in range(50):
            v0 = _random_v0(m, rng, i)
            k = matrix_exp(g.random_element(rng))
            r1 = classify_subspace(m, v0, samples=cfg.samples, seed=cfg.seed)
            r2 = classify_subspace(m, v0.transform(k) if v0.dim else v0, samples=cfg.samples, seed=cfg.seed)
            gap = _record_distance(r1, r2)
            if gap is None:
                bad.append(f"{name}: {r1.verdict.value} vs {r2.verdict.value}")
            else:
                worst = max(worst, gap)
    return _combine(_exact(bad, "records agree structurally (200 pairs)"),
                    _defect(worst, _thr(cfg, 1e-8), f"coordinate defect {worst:.1e}"))


# --- 12: Cayley modulus --------------------------------------------------------

def random_four_planes(count: int, rng) -> list[Subspace]:
    """Half Haar-uniform 4-planes, half uniform in the orbit parameter.

    The second half are Spin(7)-random images of
    ``span{1, e1, e2, cos(t) e3 + sin(t) e4}`` with ``t`` uniform in
    ``[0, pi/2]``.  Haar-uniform planes rarely come near the Cayley orbit
    (it has codimension 4 in the Grassmannian), so they alone cannot show the
    top of the range.
    """
    planes = [Subspace(random_orthonormal(8, 4, rng), check=False) for _ in range(count // 2)]
    E = np.eye(8)
    for _ in range(count - count // 2):
        t = rng.uniform(0.0, HALF_PI)
        base = np.column_stack([E[0], E[1], E[2], math.cos(t) * E[3] + math.sin(t) * E[4]])
        planes.append(Subspace(random_spin7_element(rng, 2.0) @ base, check=False))
    return planes


def check_cayley_modulus(cfg: VerifyConfig) -> Outcome:
    rng = rng_from(cfg.seed)
    thr = _thr(cfg, 1e-8)
    V = Subspace(random_orthonormal(8, 4, rng), check=False)
    tau = cayley_modulus(V)
    inv = max(abs(cayley_modulus(V.transform(random_spin7_element(rng, 2.0))) - tau) for _ in range(100))
    one = abs(cayley_modulus(Subspace(np.eye(8)[:, :4])) - 1.0)
    vals = np.array([cayley_modulus(P) for P in random_four_planes(1000, rng)])
    cover = max(vals.min() - 0.0, 1.0 - vals.max())
    return _combine(
        _defect(max(inv, one), thr, f"invariance {inv:.1e}, |tau(H) - 1| = {one:.1e}"),
        _defect(cover, _thr(cfg, 0.02), f"range [{vals.min():.4f}, {vals.max():.4f}]"),
    )


CHECKS: tuple[Check, ...] = (
    Check("A01", "algebra soundness: composition, alternativity, (xZ)Z = -|Z|^2 x", "normed division algebras",
          ("algebra", "R", "C", "H", "O"), check_algebra),
    Check("A02", "model soundness: Jacobi identity, dim z, Heisenberg nilradical", "graded H-type Iwasawa model",
          ("model", "R", "C", "H", "O"), check_model),
    Check("A03", "a + v0 + z is a subalgebra for random v0", "s = a + v0 + z is a subalgebra",
          ("model", "R", "C", "H", "O"), check_closure),
    Check("A04", "spin(7) and g2 dimensions from the Cayley form", "Spin(7) stabilizes the Cayley form; S^7 = Spin(7)/G2",
          ("stabilizers", "O"), check_stabilizer_dims),
    Check("A05", "Spin(7) orbit dimensions on Grassmannians", "Spin(7) orbits on G_k^+(R^8)",
          ("stabilizers", "O"), check_spin7_orbits),
    Check("A06", "O H^2 normalizer transitivity table", "normal spaces of dimension 2,3,4,6,7 but not 5",
          ("stabilizers", "O"), check_octonion_transitivity),
    Check("A07", "quaternionic Kähler angles of families (a)-(f)", "constant quaternionic Kähler angle families",
          ("angles", "H"), check_family_angles),
    Check("A08", "eigenvalue reduction vs brute-force extremes", "min/max of Kähler angles over the structure sphere",
          ("angles", "H"), check_eigen_vs_sampling),
    Check("A09", "C H^n moduli", "C H^n moduli: real codims and constant Kähler angle",
          ("classify", "C"), check_complex_moduli),
    Check("A10", "H H^2 moduli and codimension-two interval", "H H^2 moduli {2,3}; codim 2 moduli [0,pi/2]",
          ("classify", "H"), check_quaternionic_moduli),
    Check("A11", "K_x equivariance of classification records", "K_x-related subspaces give orbit equivalent actions",
          ("classify", "R", "C", "H", "O"), check_equivariance),
    Check("A12", "Cayley modulus: invariance, value on H, range [0,1]", "O H^2 codim-4 moduli [0,1]",
          ("stabilizers", "O"), check_cayley_modulus),
)


def select_checks(only=()) -> list[Check]:
    if not only:
        return list(CHECKS)
    keys = {o.upper() for o in only}
    return [c for c in CHECKS if c.id.upper() in keys or keys & {t.upper() for t in c.tags}]


def _run_one(check: Check, cfg: VerifyConfig) -> dict:
    t0 = time.perf_counter()
    try:
        out = check.run(cfg)
        status = "pass" if out.passed else "fail"
    except Exception as exc:  # a crashing check is a failed check, not an abort
        out = Outcome(False, -math.inf, None, None, f"error: {type(exc).__name__}: {exc}")
        status = "error"
    return {
        "id": check.id,
        "description": check.description,
        "paperAnchor": check.anchor,
        "status": status,
        "margin": out.margin if math.isfinite(out.margin) else None,
        "observed": out.observed,
        "threshold": out.threshold,
        "detail": out.detail,
        "runtimeMs": round((time.perf_counter() - t0) * 1e3, 1),
    }


def verify_suite(config: VerifyConfig = VerifyConfig()) -> dict:
    """Run the selected checks; ``report["passed"]`` is the overall verdict."""
    checks = select_checks(config.only)
    if config.jobs > 1:
        with ThreadPoolExecutor(config.jobs) as pool:
            results = list(pool.map(lambda c: _run_one(c, config), checks))
    else:
        results = [_run_one(c, config) for c in checks]
    results.sort(key=lambda r: r["id"])
    return {
        "toolVersion": __version__,
        "seed": config.seed,
        "samples": config.samples,
        "tolerance": config.tol,
        "passed": all(r["status"] == "pass" for r in results),
        "checks": results,
    }
