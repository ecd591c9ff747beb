"""Interior map germs X_Q × R^m → X_S × R^q at the vertex.

A germ is recorded by its exponent morphism α: S → Q (each coordinate
function λ_s pulls back to a positive multiple of λ_α(s)) together with the
first-order data of the positive factors and of the real coordinates:

* ``D``: one row per generator of S, the derivatives of log of the
  positive factor along the m real directions of the source;
* ``C``: the q × m derivative of the real coordinates.

In intrinsic coordinates the b-derivative at the vertex is

    L = [[A^T, D'], [0, C]]

with A the lattice matrix of α and D' the rows of D rewritten on a basis
of S^gp.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import latcone as lc
from .model import LocalModel
from .monoid import (AffineMonoid, MonoidError, MonoidMorphism, dual, face_by_generators,
                     face_dual, faces, hilbert_basis_intrinsic, is_toric)


class PreconditionError(MonoidError):
    """A germ-level precondition (vertex to vertex, transversality) fails."""


def _qmatrix(rows, nrows, ncols, what):
    if rows is None:
        return tuple((Fraction(0),) * ncols for _ in range(nrows))
    rows = list(rows)
    if ncols == 0 and not rows:
        rows = [[] for _ in range(nrows)]
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise MonoidError(f"{what} must be a {nrows} x {ncols} matrix")
    out = []
    for r in rows:
        row = []
        for x in r:
            if isinstance(x, float):
                raise MonoidError(f"{what} entries must be exact rationals")
            row.append(Fraction(x))
        out.append(tuple(row))
    return tuple(out)


@dataclass(frozen=True)
class MapGerm:
    source: LocalModel
    target: LocalModel
    exponent: MonoidMorphism
    D: tuple = None
    C: tuple = None

    def __post_init__(self):
        Q, S = self.source.monoid, self.target.monoid
        m, q = self.source.real_dim, self.target.real_dim
        if not is_toric(Q) or not is_toric(S):
            raise MonoidError("germs need toric monoids; sharpen weakly toric models first")
        if self.exponent.source != S or self.exponent.target != Q:
            raise MonoidError("the exponent must be a morphism from the target monoid to the source monoid")
        object.__setattr__(self, "D", _qmatrix(self.D, S.ngens, m, "D"))
        object.__setattr__(self, "C", _qmatrix(self.C, q, m, "C"))
        self.D_intrinsic  # validates consistency of D with the relations of S

    @classmethod
    def build(cls, source, target, images, D=None, C=None):
        """Germ with α given by the images of the target monoid's generators."""
        alpha = MonoidMorphism.from_images(target.monoid, source.monoid, images)
        return cls(source, target, alpha, D, C)

    @classmethod
    def identity(cls, model):
        P = model.monoid
        eye = tuple(tuple(1 if i == j else 0 for j in range(P.ambient)) for i in range(P.ambient))
        m = model.real_dim
        C = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
        return cls(model, model, MonoidMorphism(P, P, eye), None, C)

    # -- linear data -----------------------------------------------------

    @cached_property
    def A(self):
        """Lattice matrix of α: rank Q × rank S."""
        return self.exponent.lattice_matrix()

    @cached_property
    def A_dual(self):
        """α^∨ on group duals: rank S × rank Q."""
        rS, rQ = self.target.monoid.rank, self.source.monoid.rank
        return [[self.A[j][i] for j in range(rQ)] for i in range(rS)]

    @cached_property
    def D_intrinsic(self):
        S = self.target.monoid
        m = self.source.real_dim
        rows = []
        for comb in S.basis_combinations:
            rows.append(tuple(sum(c * self.D[i][j] for i, c in enumerate(comb)) for j in range(m)))
        for y, d in zip(S.coords, self.D):
            got = tuple(sum(y[k] * rows[k][j] for k in range(len(rows))) for j in range(m))
            if got != tuple(d):
                raise MonoidError("D is not compatible with the relations of the target monoid")
        return tuple(rows)

    @cached_property
    def L(self):
        rS, rQ = self.target.monoid.rank, self.source.monoid.rank
        m, q = self.source.real_dim, self.target.real_dim
        top = [list(map(Fraction, self.A_dual[i])) + list(self.D_intrinsic[i]) for i in range(rS)]
        bottom = [[Fraction(0)] * rQ + list(self.C[i]) for i in range(q)]
        return top + bottom

    @property
    def interior(self):
        return True

    def vertex_to_vertex(self):
        return corner_image_face(self, _vertex_face(self.source.monoid)).codim == self.target.monoid.rank


def _vertex_face(P):
    return next(F for F in faces(P) if F.codim == P.rank)


def _top_face(P):
    return next(F for F in faces(P) if F.codim == 0)


def validate_germ(g):
    """Re-check the germ invariants and return it with L assembled."""
    S, Q = g.target.monoid, g.source.monoid
    for s in S.generators:
        if g.exponent(s) not in Q:
            raise MonoidError(f"α({list(s)}) is not in the source monoid")
    _ = g.L
    return g


# ---------------------------------------------------------------------------
# faces

def corner_image_face(g, G):
    """H = {s ∈ S : α(s) ∈ G}."""
    Q, S = g.source.monoid, g.target.monoid
    if G.parent != Q:
        raise MonoidError("face does not belong to the source monoid")
    facets = Q.cone.facets
    idx = []
    for i, s in enumerate(S.generators):
        y = Q.to_intrinsic(g.exponent(s))
        if all(lc.dot(facets[k], y) == 0 for k in G.handle.inequality_indices):
            idx.append(i)
    return face_by_generators(S, idx)


def _dual_face_images(g, G, H):
    """Images under α^∨ of the Hilbert basis of G^∧, and the Hilbert basis of H^∧."""
    Gd, Hd = face_dual(G), face_dual(H)
    DQ, DS = dual(g.source.monoid), dual(g.target.monoid)
    imgs = [lc.matvec(g.A_dual, DQ.generators[j]) for j in Gd.generator_indices]
    targets = [DS.generators[j] for j in Hd.generator_indices]
    return imgs, targets


def _dual_iso(g, G, H):
    if G.codim != H.codim:
        return False
    imgs, targets = _dual_face_images(g, G, H)
    return len(imgs) == len(targets) and sorted(imgs) == sorted(targets)


@dataclass(frozen=True)
class SimpleVerdict:
    at_vertex: bool
    local: bool
    failing_face: object = None

    def __iter__(self):
        return iter((self.at_vertex, self.local))


def is_simple(g):
    Q = g.source.monoid
    fail = None
    local = True
    at_vertex = None
    for G in faces(Q):
        H = corner_image_face(g, G)
        ok = _dual_iso(g, G, H)
        if G.codim == Q.rank:
            at_vertex = ok
        if not ok and local:
            local = False
            fail = G
    return SimpleVerdict(at_vertex, local, fail)


def is_b_normal(g):
    return _b_normal_failure(g) is None


def _b_normal_failure(g):
    for G in faces(g.source.monoid):
        if corner_image_face(g, G).codim > G.codim:
            return G
    return None


def is_b_submersion(g):
    return lc.rank(g.L) == len(g.L)


def is_b_fibration(g):
    return is_b_normal(g) and is_b_submersion(g)


@dataclass(frozen=True)
class ImmersionVerdict:
    immersion: bool
    stratum_injective: bool
    dual_injective: bool
    torsion_free: bool

    def __bool__(self):
        return self.immersion


def is_immersion_at_vertex(g):
    if not g.vertex_to_vertex():
        raise PreconditionError("the vertex does not map to the target vertex")
    m = g.source.real_dim
    C = [list(r) for r in g.C]
    stratum = (lc.rank(C) if C else 0) == m
    rQ = g.source.monoid.rank
    Ad = g.A_dual
    dual_inj = (lc.rank(Ad) if Ad else 0) == rQ
    torsion = lc.cokernel_torsion_free(Ad) if rQ else True
    return ImmersionVerdict(stratum and dual_inj and torsion, stratum, dual_inj, torsion)


def is_etale_at_vertex(g):
    L = g.L
    n = len(L[0]) if L else g.source.dim
    if len(L) != n:
        return False
    if n and lc.rank(L) != n:
        return False
    return is_simple(g).local


@dataclass(frozen=True)
class GermClassification:
    interior: bool
    simple_at_vertex: bool
    simple_local: bool
    b_normal: bool
    b_submersion: bool
    b_fibration: bool
    immersion_at_vertex: object
    etale_at_vertex: bool
    diagnostics: dict = field(default_factory=dict, compare=False, hash=False)


def classify_germ(g):
    validate_germ(g)
    simp = is_simple(g)
    bn_fail = _b_normal_failure(g)
    sub = is_b_submersion(g)
    diag = {}
    if simp.failing_face is not None:
        diag["simple_failing_face"] = list(simp.failing_face.generator_indices)
    if bn_fail is not None:
        diag["b_normal_failing_face"] = list(bn_fail.generator_indices)
    if not sub:
        k = _left_kernel_vector(g.L)
        diag["b_submersion_cokernel"] = [str(x) for x in k]
    try:
        imm = is_immersion_at_vertex(g)
        immersion = imm.immersion
        diag["immersion"] = {"stratum_injective": imm.stratum_injective,
                             "dual_injective": imm.dual_injective,
                             "torsion_free": imm.torsion_free}
    except PreconditionError:
        immersion = None
        diag["immersion"] = "vertex does not map to the target vertex"
    return GermClassification(True, simp.at_vertex, simp.local, bn_fail is None, sub,
                              bn_fail is None and sub, immersion, is_etale_at_vertex(g), diag)


def _left_kernel_vector(M):
    """A nonzero y with y^T M = 0, as a primitive integer vector."""
    Mt = lc.transpose(M) if M and M[0] else []
    n = len(M)
    if not Mt:
        return tuple(1 if i == 0 else 0 for i in range(n))
    R, piv = lc.row_echelon(Mt)
    free = next(j for j in range(n) if j not in piv)
    y = [Fraction(0)] * n
    y[free] = Fraction(1)
    for row, c in zip(R, piv):
        y[c] = -row[free]
    return lc.primitive(y)


# ---------------------------------------------------------------------------
# restriction

def restrict_germ(g, G):
    """The germ X_G × R^m → X_H × R^q with H = corner_image_face(G)."""
    H = corner_image_face(g, G)
    Gm, Hm = G.monoid, H.monoid
    alpha = MonoidMorphism(Hm, Gm, g.exponent.matrix)
    D = [g.D[i] for i in H.generator_indices]
    return MapGerm(LocalModel(Gm, g.source.real_dim), LocalModel(Hm, g.target.real_dim),
                   alpha, D, g.C)
