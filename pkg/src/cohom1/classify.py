"""Classification of normal spaces into the moduli of cohomogeneity one actions.

Given ``v0`` inside ``v``, the candidate action is generated by the
connected normalizer of ``v0`` in ``k_x`` together with ``a + v0 + z``.  It
has cohomogeneity one iff that normalizer is transitive on the unit sphere
of ``W = v0^perp``.  The record then carries the invariant that pins down the
orbit-equivalence class: nothing for R, the Kähler angle for C, the
quaternionic Kähler angle for H and the Cayley modulus ``|Phi|`` on 4-planes
for O.

For H-models only the families (a)-(f) are known; a constant angle triple
outside them is reported as ``unknown-constant-angle`` instead of being
forced into a family.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .algebra import AlgebraTag
from .angles import DEFAULT_SAMPLES, kahler_constancy, qk_constancy
from .model import SolvableModel, complex_structure, quaternionic_structures
from .numerics import DEFAULT_SEED, DEFAULT_TOL, Subspace, Tolerance
from .stabilizers import cayley_modulus, kx_basis, normalizer_in, sphere_transitivity

HALF_PI = math.pi / 2
MATCH_TOL = 1e-6


class Verdict(str, enum.Enum):
    TRANSITIVE = "transitive"
    FOLIATION_HOROSPHERE = "foliation-horosphere"
    FOLIATION_SOLVABLE = "foliation-solvable"
    TOTALLY_GEODESIC = "cohomogeneity-one-totally-geodesic"
    NON_TOTALLY_GEODESIC = "cohomogeneity-one-non-tg"
    NOT_COHOMOGENEITY_ONE = "not-cohomogeneity-one"
    UNKNOWN_CONSTANT_ANGLE = "unknown-constant-angle"


class Equivalence(str, enum.Enum):
    EQUIVALENT = "equivalent"
    DISTINCT = "distinct"
    UNDECIDABLE = "undecidable"

    def __bool__(self):
        if self is Equivalence.UNDECIDABLE:
            raise ValueError("orbit equivalence is undecidable for these records")
        return self is Equivalence.EQUIVALENT


@dataclass
class ClassificationRecord:
    space: str
    codim: int
    verdict: Verdict
    invariant_kind: str = "none"  # none | kahler | qk_triple | cayley_modulus
    invariant: float | tuple | None = None
    family: str | None = None
    label: str | None = None
    coordinate: float | None = None
    margins: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["verdict"] = self.verdict.value
        if isinstance(self.invariant, tuple):
            out["invariant"] = list(self.invariant)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> ClassificationRecord:
        data = dict(data)
        data["verdict"] = Verdict(data["verdict"])
        if isinstance(data.get("invariant"), list):
            data["invariant"] = tuple(data["invariant"])
        return cls(**data)

    def text(self) -> str:
        parts = [f"space {self.space}", f"codim {self.codim}", f"verdict {self.verdict.value}"]
        if self.label:
            parts.append(f"orbit {self.label}")
        if self.family:
            parts.append(f"family {self.family}")
        if self.coordinate is not None:
            parts.append(f"coordinate {self.coordinate:.10g}")
        if self.invariant is not None:
            inv = self.invariant
            shown = "(" + ", ".join(f"{x:.6g}" for x in inv) + ")" if isinstance(inv, tuple) else f"{inv:.10g}"
            parts.append(f"{self.invariant_kind} {shown}")
        return "; ".join(parts)


# reference triples of the quaternionic families; None marks the free angle
_H_FAMILIES = {
    "a": (0.0, 0.0, 0.0),
    "b": (0.0, HALF_PI, HALF_PI),
    "c": (HALF_PI, HALF_PI, HALF_PI),
    "d": (0.0, 0.0, HALF_PI),
    "e": (None, HALF_PI, HALF_PI),
    "f": (0.0, None, None),
}


def match_quaternionic_family(triple, tol: float = MATCH_TOL) -> tuple[str | None, float | None]:
    """Family label and free angle for a quaternionic Kähler angle triple.

    Fixed-value families win over the one-parameter families at the ends of
    their parameter ranges; ``(None, None)`` when nothing matches.
    """
    t = tuple(float(x) for x in triple)
    for label in ("a", "b", "c", "d"):
        if max(abs(x - y) for x, y in zip(t, _H_FAMILIES[label])) < tol:
            return label, None
    if abs(t[1] - HALF_PI) < tol and abs(t[2] - HALF_PI) < tol:
        return "e", t[0]
    if abs(t[0]) < tol and abs(t[1] - t[2]) < tol:
        return "f", 0.5 * (t[1] + t[2])
    return None, None


def _as_subspace(model: SolvableModel, v0) -> Subspace:
    if not isinstance(v0, Subspace):
        arr = np.asarray(v0, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != model.dim_v:
            raise ValueError(f"v0 must be a {model.dim_v} x k basis array")
        v0 = Subspace.span(arr) if arr.shape[1] else Subspace.zero(model.dim_v)
    if v0.ambient_dim != model.dim_v:
        raise ValueError(f"v0 lives in R^{v0.ambient_dim}, but v of {model} is R^{model.dim_v}")
    return v0


def classify_subspace(
    model: SolvableModel,
    v0,
    tol: Tolerance = DEFAULT_TOL,
    samples: int = DEFAULT_SAMPLES,
    seed=DEFAULT_SEED,
    match_tol: float = MATCH_TOL,
) -> ClassificationRecord:
    """Classify the action built from ``v0`` (a subspace of realified ``v``)."""
    v0 = _as_subspace(model, v0)
    W = v0.complement()
    codim = W.dim
    rec = ClassificationRecord(str(model), codim, Verdict.NOT_COHOMOGENEITY_ONE)
    if codim == 0:
        rec.verdict = Verdict.TRANSITIVE
        return rec
    if codim == 1:
        rec.verdict = Verdict.FOLIATION_SOLVABLE
        return rec

    tag = model.tag
    if tag is AlgebraTag.C:
        report = kahler_constancy(W, complex_structure(model), tol)
        rec.invariant_kind, rec.invariant = "kahler", report.phi
        rec.margins["constancy_defect"] = report.defect
        constant = report.constant
    elif tag is AlgebraTag.H:
        triple = qk_constancy(W, quaternionic_structures(model), samples, seed, tol)
        rec.invariant_kind, rec.invariant = "qk_triple", triple.angles
        rec.margins["constancy_defect"] = triple.constancy_defect
        constant = triple.constancy_defect <= tol.defect_tol
    else:
        constant = True
    if not constant:
        return rec

    nrm = normalizer_in(kx_basis(model), v0, tol)
    trans = sphere_transitivity(nrm, W, samples, seed, tol)
    rec.margins.update(
        normalizer_dim=nrm.dim, transitivity_margin=trans.margin,
        transitivity_min_rank=trans.min_rank,
    )
    if not trans.transitive:
        return rec

    if tag is AlgebraTag.R:
        rec.verdict, rec.label = Verdict.TOTALLY_GEODESIC, f"RH^{v0.dim + 1}"
    elif tag is AlgebraTag.C:
        phi = rec.invariant
        if phi < match_tol:
            rec.verdict, rec.label = Verdict.TOTALLY_GEODESIC, f"CH^{model.n - codim // 2}"
        elif phi > HALF_PI - match_tol:
            rec.verdict, rec.family = Verdict.NON_TOTALLY_GEODESIC, "real"
        else:
            rec.verdict, rec.family, rec.coordinate = Verdict.NON_TOTALLY_GEODESIC, "kangle", phi
    elif tag is AlgebraTag.H:
        label, free = match_quaternionic_family(rec.invariant, match_tol)
        if label is None:
            rec.verdict = Verdict.UNKNOWN_CONSTANT_ANGLE
        elif label == "a":
            rec.verdict, rec.family, rec.label = Verdict.TOTALLY_GEODESIC, "a", f"HH^{model.n - codim // 4}"
        else:
            rec.verdict, rec.family = Verdict.NON_TOTALLY_GEODESIC, label
            if codim == 2:
                rec.coordinate = rec.invariant[0]
            elif free is not None:
                rec.coordinate = free
    else:
        if codim == 8:
            rec.verdict, rec.label = Verdict.TOTALLY_GEODESIC, "OH^1"
        else:
            rec.verdict, rec.family = Verdict.NON_TOTALLY_GEODESIC, f"O{codim}"
            if codim == 4:
                tau = cayley_modulus(W)
                rec.invariant_kind, rec.invariant, rec.coordinate = "cayley_modulus", tau, tau
    return rec


def classify_normal_space(model: SolvableModel, W, **kwargs) -> ClassificationRecord:
    """Same as :func:`classify_subspace`, but given ``W = v0^perp``."""
    W = _as_subspace(model, W)
    return classify_subspace(model, W.complement(), **kwargs)


_DECIDED = (
    Verdict.TRANSITIVE, Verdict.FOLIATION_HOROSPHERE, Verdict.FOLIATION_SOLVABLE,
    Verdict.TOTALLY_GEODESIC, Verdict.NON_TOTALLY_GEODESIC,
)


def orbit_equivalent(r1: ClassificationRecord, r2: ClassificationRecord, tol: float = MATCH_TOL) -> Equivalence:
    """Decide orbit equivalence from the complete invariants of two records."""
    if r1.space != r2.space:
        raise ValueError(f"records live in different spaces: {r1.space} vs {r2.space}")
    if Verdict.UNKNOWN_CONSTANT_ANGLE in (r1.verdict, r2.verdict):
        return Equivalence.UNDECIDABLE
    for r in (r1, r2):
        if r.verdict not in _DECIDED:
            raise ValueError(f"record with verdict {r.verdict.value!r} does not describe a cohomogeneity one action")
    if r1.verdict != r2.verdict or r1.codim != r2.codim:
        return Equivalence.DISTINCT
    if r1.verdict is Verdict.TOTALLY_GEODESIC:
        return Equivalence.EQUIVALENT if r1.label == r2.label else Equivalence.DISTINCT
    if r1.verdict is not Verdict.NON_TOTALLY_GEODESIC:
        return Equivalence.EQUIVALENT
    # in H-models of codimension 2 the families b, c, e form one interval
    h_codim2 = r1.space.startswith("H") and r1.codim == 2
    if r1.family != r2.family and not h_codim2:
        return Equivalence.DISTINCT
    c1, c2 = r1.coordinate, r2.coordinate
    if (c1 is None) != (c2 is None):
        return Equivalence.DISTINCT
    if c1 is None or abs(c1 - c2) < tol:
        return Equivalence.EQUIVALENT
    return Equivalence.DISTINCT
