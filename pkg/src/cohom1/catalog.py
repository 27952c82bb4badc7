"""Static catalogs: foliations, totally geodesic singular orbits, non-totally
geodesic moduli, and homogeneous hypersurfaces.

Entries are plain dicts so they serialize straight to JSON.  Parameter
ranges are ``{"lo", "hi", "closed": [bool, bool]}``.
"""
from __future__ import annotations

import math

from .algebra import AlgebraTag
from .model import SolvableModel

HALF_PI = math.pi / 2


def _range(lo: float, hi: float, closed=(False, False)) -> dict:
    return {"lo": lo, "hi": hi, "closed": list(closed)}


def _set_text(values) -> str:
    return "{" + ",".join(str(v) for v in values) + "}"


def foliations(model: SolvableModel) -> list[dict]:
    return [
        {"label": "horosphere", "verdict": "foliation-horosphere", "algebra": "n",
         "note": "orbits of N; no singular orbit"},
        {"label": "solvable-codim-one", "verdict": "foliation-solvable", "algebra": "a + v0 + z, dim v0 = dim v - 1",
         "note": "exactly one minimal leaf" + ("; it is a totally geodesic RH^%d" % (model.n - 1)
                                               if model.tag is AlgebraTag.R else "")},
    ]


def totally_geodesic(model: SolvableModel) -> list[str]:
    n = model.n
    if model.tag is AlgebraTag.R:
        return ["pt"] + [f"RH^{k}" for k in range(1, n - 1)]
    if model.tag is AlgebraTag.C:
        return ["pt"] + [f"CH^{k}" for k in range(1, n)] + [f"RH^{n}"]
    if model.tag is AlgebraTag.H:
        return ["pt"] + [f"HH^{k}" for k in range(1, n)] + [f"CH^{n}"]
    return ["pt", "OH^1", "HH^2"]


def non_totally_geodesic(model: SolvableModel) -> dict:
    n, tag = model.n, model.tag
    if tag is AlgebraTag.R:
        return {"summary": "{}", "complete": True, "entries": []}
    if tag is AlgebraTag.C:
        real = list(range(2, n))
        even = [2 * k for k in range(1, n) if 2 * k < n]
        entries = [{"family": "real", "codim": c, "parameter": None} for c in real]
        entries += [{"family": "kangle", "codim": c, "parameter": _range(0.0, HALF_PI)} for c in even]
        summary = f"{_set_text(real) if real else '{}'} u ((0,pi/2) x {_set_text(even) if even else '{}'})"
        return {"summary": summary, "complete": True, "entries": entries}
    if tag is AlgebraTag.H:
        m = n - 1
        entries = [{"family": "b", "codim": 2 * k, "parameter": None} for k in range(1, n)]
        entries += [{"family": "c", "codim": k, "parameter": None} for k in range(2, n)]
        entries += [{"family": "d", "codim": 3, "parameter": None}]
        entries += [{"family": "e", "codim": 2 * k, "parameter": _range(0.0, HALF_PI)} for k in range(1, m // 2 + 1)]
        entries += [{"family": "f", "codim": 4 * k, "parameter": _range(0.0, HALF_PI)} for k in range(1, m // 2 + 1)]
        entries.sort(key=lambda e: (e["codim"], e["family"]))
        if n == 2:
            return {"summary": "{2,3}", "complete": True, "entries": entries}
        return {
            "summary": "families (a)-(f); codimension 2 part is [0,pi/2]",
            "complete": False,
            "codim2": _range(0.0, HALF_PI, (True, True)),
            "note": "completeness beyond codimension 2 is conjectural",
            "entries": entries,
        }
    entries = [{"family": f"O{c}", "codim": c, "parameter": None} for c in (2, 3, 6, 7)]
    entries.append({"family": "O4", "codim": 4, "parameter": _range(0.0, 1.0, (True, True))})
    entries.sort(key=lambda e: e["codim"])
    return {"summary": "{2,3,6,7} u ({4} x [0,1])", "complete": True, "entries": entries}


def hypersurfaces(model: SolvableModel) -> list[dict]:
    n = model.n
    if model.tag is AlgebraTag.C:
        half = (n - 1) // 2
        return [
            {"item": 1, "kind": "tube", "around": f"totally geodesic CH^k, k in {{0,...,{n - 1}}}", "radius": "r > 0"},
            {"item": 2, "kind": "tube", "around": f"totally geodesic RH^{n}", "radius": "r > 0"},
            {"item": 3, "kind": "horosphere"},
            {"item": 4, "kind": "minimal ruled real hypersurface",
             "note": "determined by a horocycle in a totally geodesic RH^2, or an equidistant hypersurface to it"},
            {"item": 5, "kind": "tube", "around": f"F_k with real normal bundle of rank k in {{2,...,{n - 1}}}",
             "radius": "r > 0"},
            {"item": 6, "kind": "tube",
             "around": f"F_(k,phi) with normal bundle of rank 2k in {{2,...,{2 * half}}}, "
                       "constant Kähler angle phi in (0,pi/2)",
             "radius": "r > 0"},
        ]
    if model.tag is AlgebraTag.O:
        return [
            {"item": 1, "kind": "geodesic hypersphere", "radius": "r > 0"},
            {"item": 2, "kind": "tube", "around": "totally geodesic OH^1", "radius": "r > 0"},
            {"item": 3, "kind": "tube", "around": "totally geodesic HH^2", "radius": "r > 0"},
            {"item": 4, "kind": "horosphere"},
            {"item": 5, "kind": "minimal homogeneous hypersurface S", "note": "or an equidistant hypersurface to S"},
            {"item": 6, "kind": "tube", "around": "F_k with normal bundle of rank k in {2,3,6,7}", "radius": "r > 0"},
            {"item": 7, "kind": "tube", "around": "F_(4,phi), phi in [0,1]", "radius": "r > 0"},
        ]
    return []


def moduli_table(tag, n: int) -> dict:
    """Full catalog for ``FH^n``; raises ``ValueError`` for O with ``n != 2``."""
    model = SolvableModel(AlgebraTag.parse(tag), n)
    return {
        "space": str(model),
        "foliations": foliations(model),
        "totally_geodesic": totally_geodesic(model),
        "non_totally_geodesic": non_totally_geodesic(model),
        "hypersurfaces": hypersurfaces(model),
    }
