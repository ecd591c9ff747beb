"""Model spaces X_P × R^m at the combinatorial level.

Corners and boundaries are represented by faces and flags of faces of the
monoid; points carry exact rational coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import latcone as lc
from .monoid import (AffineMonoid, MonoidError, MonoidFace, dual, face_by_generators,
                     face_census, faces, is_free, is_saturated, relations, unit_splitting)


@dataclass(frozen=True)
class LocalModel:
    monoid: AffineMonoid
    real_dim: int = 0

    def __post_init__(self):
        if self.real_dim < 0:
            raise MonoidError("real dimension must be nonnegative")
        if not is_saturated(self.monoid):
            raise MonoidError("a local model needs a weakly toric monoid")

    @property
    def dim(self):
        return self.monoid.rank + self.real_dim

    def sharpened(self):
        """The equivalent model with units moved into the real factor."""
        s = unit_splitting(self.monoid)
        return LocalModel(s.sharp, self.real_dim + s.unit_rank)

    def __repr__(self):
        return f"LocalModel({self.monoid!r}, m={self.real_dim})"


def _sorted_faces(P):
    return sorted(faces(P), key=lambda F: (F.codim, F.generator_indices))


# ---------------------------------------------------------------------------
# points

@dataclass(frozen=True)
class ModelPoint:
    parent: LocalModel
    generator_values: tuple
    real_coords: tuple


def _rational(x):
    if isinstance(x, float):
        raise MonoidError("point coordinates must be exact rationals")
    return Fraction(x)


def _power(vals, exps):
    out = Fraction(1)
    for v, e in zip(vals, exps):
        if e:
            out *= v ** e
    return out


def point_from_values(M, vals, reals=()):
    P = M.monoid
    vals = tuple(_rational(v) for v in vals)
    reals = tuple(_rational(x) for x in reals)
    if len(vals) != P.ngens:
        raise MonoidError(f"expected {P.ngens} generator values, got {len(vals)}")
    if len(reals) != M.real_dim:
        raise MonoidError(f"expected {M.real_dim} real coordinates, got {len(reals)}")
    if any(v < 0 for v in vals):
        raise MonoidError("generator values must be nonnegative")
    for a, b in relations(P):
        if _power(vals, a) != _power(vals, b):
            raise MonoidError(f"values violate the relation {list(a)} ~ {list(b)}")
    support = tuple(i for i, v in enumerate(vals) if v != 0)
    try:
        face_by_generators(P, support)
    except MonoidError:
        raise MonoidError("support of the point is not a face") from None
    return ModelPoint(M, vals, reals)


def vertex_point(M):
    """δ0: value 1 on unit generators and 0 elsewhere, reals 0."""
    P = M.monoid
    units = set(P.unit_indices)
    return point_from_values(M, [1 if i in units else 0 for i in range(P.ngens)], [0] * M.real_dim)


def support_and_depth(x):
    P = x.parent.monoid
    support = tuple(i for i, v in enumerate(x.generator_values) if v != 0)
    F = face_by_generators(P, support)
    return F, F.codim


# ---------------------------------------------------------------------------
# strata, corners, boundaries

def strata_census(M):
    return face_census(M.monoid)


@dataclass(frozen=True)
class CornerComponent:
    parent: LocalModel
    face: MonoidFace
    codim: int

    @property
    def model(self):
        return LocalModel(self.face.monoid, self.parent.real_dim)


def _check_k(M, k):
    if not 0 <= k <= M.monoid.rank:
        raise MonoidError(f"k = {k} is outside 0..{M.monoid.rank}")


def corners(M, k):
    _check_k(M, k)
    return [CornerComponent(M, F, k) for F in _sorted_faces(M.monoid) if F.codim == k]


@dataclass(frozen=True)
class FlagChain:
    faces: tuple

    @property
    def depth(self):
        return len(self.faces)

    def __post_init__(self):
        for i, F in enumerate(self.faces):
            if F.codim != i + 1:
                raise MonoidError("flag codimensions must step by one")
            if i and not set(F.generator_indices) <= set(self.faces[i - 1].generator_indices):
                raise MonoidError("flag faces must be nested")

    def model(self, parent):
        last = self.faces[-1].monoid if self.faces else parent.monoid
        return LocalModel(last, parent.real_dim)


def _facets_of(P, F, by_codim):
    return [G for G in by_codim.get(F.codim + 1, [])
            if set(G.generator_indices) <= set(F.generator_indices)]


def iterated_boundary(M, k):
    _check_k(M, k)
    P = M.monoid
    by_codim = {}
    for F in _sorted_faces(P):
        by_codim.setdefault(F.codim, []).append(F)
    top = by_codim[0][0]
    current = [(top, ())]
    for _ in range(k):
        nxt = []
        for F, chain in current:
            for G in _facets_of(P, F, by_codim):
                nxt.append((G, chain + (G,)))
        current = nxt
    flags = [FlagChain(chain) for _, chain in current]
    flags.sort(key=lambda fl: [(F.codim, F.generator_indices) for F in fl.faces])
    return flags


def corner_fibre_monoid(M, F):
    """(F^∧, codim F): the monoid {β ∈ P^∨ : β|_F = 0} and the normal rank."""
    P = M.monoid
    if F.parent != P:
        raise MonoidError("face does not belong to this model's monoid")
    D = dual(P)
    idx = [j for j, h in enumerate(D.generators)
           if all(lc.dot(h, P.coords[i]) == 0 for i in F.generator_indices)]
    return AffineMonoid(D.ambient, tuple(D.generators[j] for j in idx)), F.codim


def is_manifold_with_corners(M):
    for F in faces(M.monoid):
        fib, _ = corner_fibre_monoid(M, F)
        if not is_free(fib):
            return False
    return True


def btangent_rank(M):
    return M.monoid.rank + M.real_dim
