"""Arithmetic in the normed division algebras R, C, H and O.

Elements are stored as real coordinate vectors in the ordered basis
``(1, e1, ..., e_{d-1})``.  Products are evaluated through a structure
tensor ``T`` with ``e_a e_b = sum_c T[a, b, c] e_c``; every entry of ``T`` is
0 or +-1, so products of basis elements are exact.

Octonion convention: the cyclically positive Fano triples are

    (1,2,3) (1,4,5) (2,4,6) (3,4,7) (2,5,7) (3,6,5) (1,7,6)

so that ``e1 e2 = e3``.  The quaternion and complex tables are the
restrictions of this table to ``span(1, e1, e2, e3)`` and ``span(1, e1)``.

With the triple cross product ``x*y*z = (x(conj(y) z) - z(conj(y) x)) / 2``
this table gives ``cross(1, i, j) = -k`` and therefore
``cayley_form(1, i, j, k) = -1``.  Only absolute values of the Cayley form
are used downstream.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

FANO_TRIPLES = ((1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 4, 7), (2, 5, 7), (3, 6, 5), (1, 7, 6))


class AlgebraTag(enum.Enum):
    R = 1
    C = 2
    H = 4
    O = 8

    @property
    def dim(self) -> int:
        return self.value

    @classmethod
    def parse(cls, label: str | AlgebraTag) -> AlgebraTag:
        if isinstance(label, cls):
            return label
        try:
            return cls[str(label).strip().upper()]
        except KeyError:
            raise ValueError(f"unknown algebra {label!r}; expected one of R, C, H, O") from None


@lru_cache(maxsize=None)
def _structure_tensor(d: int) -> np.ndarray:
    T = np.zeros((d, d, d))
    for a in range(d):
        T[0, a, a] = 1.0
        T[a, 0, a] = 1.0
    for a in range(1, d):
        T[a, a, 0] = -1.0
    for triple in FANO_TRIPLES:
        if max(triple) >= d:
            continue
        a, b, c = triple
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            T[x, y, z] = 1.0
            T[y, x, z] = -1.0
    T.setflags(write=False)
    return T


def structure_tensor(tag: AlgebraTag) -> np.ndarray:
    """Read-only ``(d, d, d)`` multiplication tensor for ``tag``."""
    return _structure_tensor(AlgebraTag.parse(tag).dim)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    tag: AlgebraTag
    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float).reshape(-1)
        if coords.size != self.tag.dim:
            raise ValueError(f"{self.tag.name} element needs {self.tag.dim} coordinates, got {coords.size}")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def basis(cls, tag: AlgebraTag, index: int) -> AlgebraElement:
        e = np.zeros(tag.dim)
        e[index] = 1.0
        return cls(tag, e)

    @classmethod
    def one(cls, tag: AlgebraTag) -> AlgebraElement:
        return cls.basis(tag, 0)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return AlgebraElement(self.tag, self.coords * float(other))

    def __rmul__(self, other):
        return AlgebraElement(self.tag, self.coords * float(other))

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        _check_same(self, other)
        return AlgebraElement(self.tag, self.coords + other.coords)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        _check_same(self, other)
        return AlgebraElement(self.tag, self.coords - other.coords)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.tag, -self.coords)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.tag == other.tag and np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash((self.tag, self.coords.tobytes()))

    def __repr__(self):
        return f"AlgebraElement({self.tag.name}, {self.coords.tolist()})"

    def conjugate(self) -> AlgebraElement:
        return conjugate(self)

    def norm(self) -> float:
        return norm(self)

    def imag(self) -> AlgebraElement:
        return imaginary_part(self)

    def allclose(self, other: AlgebraElement, atol: float = 1e-12) -> bool:
        return self.tag == other.tag and bool(np.allclose(self.coords, other.coords, rtol=0, atol=atol))


def _check_same(x: AlgebraElement, y: AlgebraElement) -> None:
    if x.tag != y.tag:
        raise ValueError(f"algebra mismatch: {x.tag.name} vs {y.tag.name}")


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    _check_same(x, y)
    T = structure_tensor(x.tag)
    return AlgebraElement(x.tag, np.einsum("i,j,ijk->k", x.coords, y.coords, T))


def conjugate(x: AlgebraElement) -> AlgebraElement:
    c = -x.coords
    c[0] = x.coords[0]
    return AlgebraElement(x.tag, c)


def norm(x: AlgebraElement) -> float:
    return float(np.linalg.norm(x.coords))


def imaginary_part(x: AlgebraElement) -> AlgebraElement:
    c = x.coords.copy()
    c[0] = 0.0
    return AlgebraElement(x.tag, c)


def left_mult_matrix(tag: AlgebraTag, a) -> np.ndarray:
    """Matrix of ``x -> a x`` acting on coordinate vectors."""
    a = np.asarray(getattr(a, "coords", a), dtype=float)
    return np.einsum("i,ijk->kj", a, structure_tensor(tag))


def right_mult_matrix(tag: AlgebraTag, a) -> np.ndarray:
    """Matrix of ``x -> x a`` acting on coordinate vectors."""
    a = np.asarray(getattr(a, "coords", a), dtype=float)
    return np.einsum("j,ijk->ki", a, structure_tensor(tag))


def _require_octonions(*args: AlgebraElement) -> None:
    for x in args:
        if not isinstance(x, AlgebraElement) or x.tag is not AlgebraTag.O:
            raise ValueError("octonion arguments required")


def triple_cross(x: AlgebraElement, y: AlgebraElement, z: AlgebraElement) -> AlgebraElement:
    """Octonionic triple cross product ``(x(conj(y) z) - z(conj(y) x)) / 2``."""
    _require_octonions(x, y, z)
    yb = conjugate(y)
    return 0.5 * (x * (yb * z) - z * (yb * x))


def cayley_form(x: AlgebraElement, y: AlgebraElement, z: AlgebraElement, w: AlgebraElement) -> float:
    """The Cayley 4-form ``<x*y*z, w>``."""
    _require_octonions(w)
    return float(triple_cross(x, y, z).coords @ w.coords)


@lru_cache(maxsize=1)
def cayley_tensor() -> np.ndarray:
    """Components ``Phi[a, b, c, d]`` of the Cayley form on the standard basis."""
    E = [AlgebraElement.basis(AlgebraTag.O, a) for a in range(8)]
    P = np.zeros((8, 8, 8, 8))
    for a, b, c in itertools.combinations(range(8), 3):
        t = triple_cross(E[a], E[b], E[c]).coords
        for d in range(8):
            if d in (a, b, c) or t[d] == 0.0:
                continue
            for perm in itertools.permutations(range(4)):
                idx = tuple((a, b, c, d)[p] for p in perm)
                P[idx] = _perm_sign(perm) * t[d]
    P.setflags(write=False)
    return P


def _perm_sign(perm) -> int:
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def cayley_form_matrix(frame: np.ndarray) -> float:
    """Evaluate the Cayley form on the four columns of an ``8 x 4`` array."""
    frame = np.asarray(frame, dtype=float)
    return float(np.einsum("abcd,a,b,c,d->", cayley_tensor(), *frame.T))


# A triple witnessing non-associativity of the octonions: (e1 e2) e4 != e1 (e2 e4).
NONASSOCIATIVE_WITNESS = (1, 2, 4)
