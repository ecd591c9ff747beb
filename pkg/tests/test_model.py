from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from gcorners.model import (LocalModel, btangent_rank, corner_fibre_monoid, corners,
                            is_manifold_with_corners, iterated_boundary, point_from_values,
                            strata_census, support_and_depth, vertex_point)
from gcorners.monoid import (AffineMonoid, MonoidError, classify, face_by_generators, faces,
                             is_isomorphic)

import oracles
from strategies import monoids, transform, unimodular

PYRAMID = AffineMonoid(3, ((1, 0, 0), (0, 1, 1), (0, 1, 0), (1, 0, 1)))
X = LocalModel(PYRAMID)
N = AffineMonoid.free(1)


def free_times_lattice(k, l):
    n = k + l
    e = lambda i: tuple(1 if j == i else 0 for j in range(n))
    gens = [e(i) for i in range(n)] + [tuple(-x for x in e(i)) for i in range(k, n)]
    return AffineMonoid(n, tuple(gens))


def test_model_needs_weakly_toric():
    with pytest.raises(MonoidError):
        LocalModel(AffineMonoid(1, ((2,), (3,))))
    with pytest.raises(MonoidError):
        LocalModel(N, -1)


def test_points():
    x = point_from_values(X, [1, 1, 1, 1])
    assert support_and_depth(x)[1] == 0
    point_from_values(X, [2, 3, 1, 6])
    with pytest.raises(MonoidError):
        point_from_values(X, [1, 1, 1, 2])
    with pytest.raises(MonoidError):
        point_from_values(X, [1, 1, 1])
    with pytest.raises(MonoidError):
        point_from_values(X, [0.5, 1, 1, 0.5])


def test_vertex_depth():
    F, d = support_and_depth(vertex_point(X))
    assert d == 3 and F.generator_indices == ()
    M = LocalModel(free_times_lattice(2, 1), 1)
    F, d = support_and_depth(vertex_point(M))
    assert d == 2


def test_boundary_point_support():
    F, d = support_and_depth(point_from_values(X, [2, 0, 5, 0]))
    assert F.generator_indices == (0, 2) and d == 1


def test_strata_census():
    assert strata_census(X) == (1, 4, 4, 1)
    for n in range(1, 5):
        assert strata_census(LocalModel(AffineMonoid.free(n))) == tuple(comb(n, l) for l in range(n + 1))
    assert strata_census(LocalModel(AffineMonoid.lattice(2))) == (1, 0, 0)


def test_corners_pyramid():
    c1 = corners(X, 1)
    assert len(c1) == 4
    assert all(is_isomorphic(c.face.monoid.intrinsic(), AffineMonoid.free(2))[0] for c in c1)
    assert len(corners(X, 2)) == 4
    c3 = corners(X, 3)
    assert len(c3) == 1 and c3[0].model.dim == 0
    assert [c.face.codim for c in corners(X, 0)] == [0]
    with pytest.raises(MonoidError):
        corners(X, 4)


def test_iterated_boundary_pyramid():
    assert len(iterated_boundary(X, 1)) == 4
    assert len(iterated_boundary(X, 2)) == 8 == 2 * len(corners(X, 2))
    assert len(iterated_boundary(X, 3)) == 8


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_iterated_boundary_free(n):
    M = LocalModel(AffineMonoid.free(n))
    for k in range(n + 1):
        assert len(iterated_boundary(M, k)) == oracles.arrangements(n, k)


def test_corner_fibre_monoid():
    top = face_by_generators(PYRAMID, range(4))
    fib, r = corner_fibre_monoid(X, top)
    assert fib.generators == () and r == 0
    bottom = face_by_generators(PYRAMID, ())
    fib, r = corner_fibre_monoid(X, bottom)
    assert r == 3 and len(fib.generators) == 4
    fib, r = corner_fibre_monoid(X, face_by_generators(PYRAMID, (0, 2)))
    assert r == 1 and is_isomorphic(fib.intrinsic(), N)[0]


def test_manifold_with_corners():
    assert not is_manifold_with_corners(X)
    for k, l in [(0, 2), (2, 1), (3, 0), (1, 2)]:
        assert is_manifold_with_corners(LocalModel(free_times_lattice(k, l)))
    assert is_manifold_with_corners(LocalModel(AffineMonoid.zero(0), 5))


def test_btangent_rank_and_sharpening():
    M = LocalModel(free_times_lattice(2, 1), 1)
    assert btangent_rank(M) == 4 == M.dim
    S = M.sharpened()
    assert S.real_dim == 2 and S.monoid.rank == 2 and S.dim == M.dim


weakly_toric = monoids(max_dim=3, max_gens=5).filter(lambda P: classify(P).weakly_toric)


@settings(max_examples=200, deadline=None)
@given(weakly_toric)
def test_corner_counts(P):
    M = LocalModel(P)
    r = P.rank - len(P.cone.lineality)
    total = sum(len(corners(M, k)) for k in range(P.rank + 1))
    assert total == len(faces(P))
    assert len(iterated_boundary(M, 1)) == len(corners(M, 1))
    if r >= 2:
        assert len(iterated_boundary(M, 2)) == 2 * len(corners(M, 2))
    for k in range(P.rank + 1):
        flags = iterated_boundary(M, k)
        assert len(flags) >= len(corners(M, k))
        ends = {fl.faces[-1].generator_indices for fl in flags} if k else {tuple(range(P.ngens))}
        assert ends == {c.face.generator_indices for c in corners(M, k)}


@settings(max_examples=200, deadline=None)
@given(weakly_toric, st.data())
def test_vertex_depth_property(P, data):
    M = LocalModel(P)
    F, d = support_and_depth(vertex_point(M))
    assert d == P.rank - len(P.cone.lineality)
    assert F.codim == max(G.codim for G in faces(P))


@settings(max_examples=200, deadline=None)
@given(weakly_toric, st.data())
def test_corners_invariance(P, data):
    M = LocalModel(P)
    U = data.draw(unimodular(P.ambient))
    m = data.draw(st.integers(0, 2))
    M2 = LocalModel(transform(P, U), m)
    assert is_manifold_with_corners(M) == is_manifold_with_corners(M2)
    assert strata_census(M) == strata_census(M2)
