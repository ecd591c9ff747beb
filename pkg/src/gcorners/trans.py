"""Transversality of germ pairs g: X → Z, h: Y → Z and fibre local models."""

from __future__ import annotations

from dataclasses import dataclass

from . import latcone as lc
from .germ import MapGerm, PreconditionError, _left_kernel_vector, corner_image_face, restrict_germ
from .monoid import (AffineMonoid, MonoidError, dual, dual_morphism, faces, fibre_product,
                     is_isomorphic)


def _check_pair(g, h):
    if g.target != h.target:
        raise MonoidError("the two germs must have the same target model")
    # the base vertices must meet at the target vertex, where the b-normal data live
    for name, k in (("g", g), ("h", h)):
        if not k.vertex_to_vertex():
            raise PreconditionError(f"{name} does not map the vertex to the target vertex")


def _hstack(A, B, nrows):
    A = A if A else [[] for _ in range(nrows)]
    B = B if B else [[] for _ in range(nrows)]
    return [list(a) + list(b) for a, b in zip(A, B)]


def _full_row_rank(M, nrows):
    if nrows == 0:
        return True
    return lc.rank(M) == nrows


def is_b_transverse(g, h):
    _check_pair(g, h)
    n = len(g.L)
    return _full_row_rank(_hstack(g.L, h.L, n), n)


def dual_fibre_monoid(g, h):
    """{(λ, μ) ∈ Q^∨ × R^∨ : λ∘α_g = μ∘α_h}, in Z^(rank Q + rank R)."""
    _check_pair(g, h)
    return fibre_product(dual_morphism(g.exponent), dual_morphism(h.exponent))


def _product_dual_cone(g, h):
    DQ, DR = dual(g.source.monoid), dual(h.source.monoid)
    a, b = DQ.ambient, DR.ambient
    gens = [tuple(v) + (0,) * b for v in DQ.generators] + [(0,) * a + tuple(v) for v in DR.generators]
    return lc.Cone.from_generators(a + b, gens)


def _monoid_condition(g, h, W):
    C = _product_dual_cone(g, h)
    s = tuple(sum(col) for col in zip(*W.generators)) if W.generators else (0,) * C.ambient
    ok = lc.relative_interior_contains(C, s)
    violated = [list(f) for f in C.facets if lc.dot(f, s) == 0]
    return ok, s, violated


@dataclass(frozen=True)
class TransversalityReport:
    b_transverse: bool
    btilde_surjective: bool
    monoid_condition: bool
    c_transverse: bool
    witness: dict

    def as_dict(self):
        return {"b_transverse": self.b_transverse, "btilde_surjective": self.btilde_surjective,
                "monoid_condition": self.monoid_condition, "c_transverse": self.c_transverse,
                "witness": self.witness}


def is_c_transverse(g, h):
    _check_pair(g, h)
    n = len(g.L)
    L = _hstack(g.L, h.L, n)
    bt = _full_row_rank(L, n)
    rS = g.target.monoid.rank
    N = _hstack(g.A_dual, h.A_dual, rS)
    nt = _full_row_rank(N, rS)
    W = dual_fibre_monoid(g, h)
    mc, s, violated = _monoid_condition(g, h, W)
    witness = {}
    if not bt:
        witness["b_cokernel"] = list(_left_kernel_vector(L))
    if not nt:
        witness["btilde_cokernel"] = list(_left_kernel_vector(N))
    if mc:
        witness["interior_element"] = list(s)
    else:
        witness["hilbert_sum"] = list(s)
        witness["violated_facets"] = violated
    return TransversalityReport(bt, nt, mc, bt and nt and mc, witness)


def c_transverse_sufficiency(g, h):
    from .germ import is_b_normal
    return is_b_transverse(g, h) and (is_b_normal(g) or is_b_normal(h))


@dataclass(frozen=True)
class FibreModel:
    monoid: AffineMonoid
    dual_fibre: AffineMonoid
    extra_real_dim: object
    vertex_in_fibre: bool
    dimension: int


def fibre_local_model(g, h):
    _check_pair(g, h)
    if not is_b_transverse(g, h):
        raise PreconditionError("the germs are not b-transverse")
    W = dual_fibre_monoid(g, h)
    P = dual(W)
    vin, _, _ = _monoid_condition(g, h, W)
    dim = g.source.dim + h.source.dim - g.target.dim
    extra = dim - P.rank if vin else None
    return FibreModel(P, W, extra, vin, dim)


# ---------------------------------------------------------------------------
# corner formula

@dataclass(frozen=True)
class CornerFormulaResult:
    left: int
    right: int
    match: bool
    left_components: tuple
    right_components: tuple

    def __iter__(self):
        return iter((self.left, self.right, self.match))


def _multiset_match(xs, ys):
    """Greedy matching of (monoid, real dim) pairs up to isomorphism."""
    if len(xs) != len(ys):
        return False
    remaining = list(ys)
    for P, m in xs:
        for k, (Q, n) in enumerate(remaining):
            if m == n and is_isomorphic(P, Q)[0]:
                del remaining[k]
                break
        else:
            return False
    return True


def corner_formula_check(g, h, i):
    rep = is_c_transverse(g, h)
    if not rep.c_transverse:
        raise PreconditionError("corner formula needs a c-transverse pair")
    fm = fibre_local_model(g, h)
    P = fm.monoid
    left = [(F.monoid, fm.extra_real_dim) for F in faces(P) if F.codim == i]
    right = []
    Q, R = g.source.monoid, h.source.monoid
    img_g = [(G, corner_image_face(g, G)) for G in faces(Q)]
    img_h = [(H, corner_image_face(h, H)) for H in faces(R)]
    for G, T in img_g:
        for H, T2 in img_h:
            if T.generator_indices != T2.generator_indices:
                continue
            if G.codim + H.codim - T.codim != i:
                continue
            gr, hr = restrict_germ(g, G), restrict_germ(h, H)
            if not is_b_transverse(gr, hr):
                continue
            sub = fibre_local_model(gr, hr)
            if sub.vertex_in_fibre:
                right.append((sub.monoid, sub.extra_real_dim))
    match = _multiset_match(left, right)
    describe = lambda xs: tuple((M.rank, len(M.generators), m) for M, m in xs)
    return CornerFormulaResult(len(left), len(right), match, describe(left), describe(right))
