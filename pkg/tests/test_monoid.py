import pytest
from hypothesis import given, settings, strategies as st

from gcorners import latcone as lc
from gcorners.monoid import (AffineMonoid, MonoidError, MonoidMorphism, PresentedMonoid,
                             classify, classify_presented, decompose, direct_sum,
                             double_dual_map, dual, face_by_generators, face_census, face_dual,
                             faces, fibre_product, hilbert_basis, is_free, is_isomorphic,
                             is_toric, membership, minimal_generators, presented_groupification,
                             pushout_fg, pushout_toric, relations, spec, units_and_split,
                             word_problem)

import oracles
from strategies import monoids, pointed_monoids, transform, unimodular

PYRAMID = AffineMonoid(3, ((1, 0, 0), (0, 1, 1), (0, 1, 0), (1, 0, 1)))
TWOTHREE = AffineMonoid(1, ((2,), (3,)))
N = AffineMonoid.free(1)


def scale(P, Q, k):
    return MonoidMorphism(P, Q, ((k,),))


# -- groupification and membership -----------------------------------------------

def test_groupification_examples():
    assert AffineMonoid.free(3).rank == 3
    assert TWOTHREE.group.basis == ((1,),)
    diag = AffineMonoid(2, ((1, 1),))
    assert diag.rank == 1 and (3, 3) in diag.group and (1, 0) not in diag.group


def test_membership_examples():
    assert not membership(TWOTHREE, (1,))
    assert membership(TWOTHREE, (5,))
    assert membership(PYRAMID, (0, 0, 0))
    for v in range(0, 12):
        assert membership(TWOTHREE, (v,)) == oracles.in_monoid([(2,), (3,)], (v,), 6)


def test_decompose_returns_valid_coefficients():
    v = (3, 4, 5)
    c = decompose(PYRAMID, v)
    assert c is not None and all(x >= 0 for x in c)
    assert tuple(sum(ci * g[j] for ci, g in zip(c, PYRAMID.generators)) for j in range(3)) == v


def test_decompose_with_units():
    P = AffineMonoid(2, ((1, 0), (0, 1), (0, -1)))
    c = decompose(P, (2, -3))
    assert c is not None and all(x >= 0 for x in c)
    assert (2 * 0 + c[0], c[1] - c[2]) == (2, -3)


def test_constructor_validation():
    with pytest.raises(MonoidError):
        AffineMonoid(2, ((1, 0), (1, 0)))
    with pytest.raises(MonoidError):
        AffineMonoid(2, ((0, 0),))
    with pytest.raises(MonoidError):
        AffineMonoid(2, ((1, 0, 0),))


# -- classification ----------------------------------------------------------

@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_free_is_toric(k):
    c = classify(AffineMonoid.free(k))
    assert c.toric and c.saturated and c.sharp and c.rank == k


@pytest.mark.parametrize("k", [1, 2, 3])
def test_lattice_is_weakly_toric_not_sharp(k):
    c = classify(AffineMonoid.lattice(k))
    assert c.weakly_toric and not c.sharp and not c.toric


def test_twothree_classification():
    c = classify(TWOTHREE)
    assert c.integral and c.sharp and c.torsion_free
    assert not c.saturated and not c.toric


def test_presented_e_not_integral():
    P = PresentedMonoid(2, (((1, 1), (2, 0)), ((0, 2), (2, 0))))
    c = classify_presented(P, 6)
    assert c.integral is False and c.torsion_free and c.sharp and not c.toric
    assert "integral" not in c.up_to_bound
    assert word_problem(P, (1, 0), (0, 1), 6) == "distinct-up-to-bound"
    assert word_problem(P, (1, 1), (2, 0), 6) == "equal"
    assert presented_groupification(P) == (1, [])


def test_presented_f_not_integral():
    P = PresentedMonoid(1, (((2,), (1,)),))
    c = classify_presented(P, 6)
    assert c.integral is False
    assert presented_groupification(P) == (0, [])


def test_presented_h_torsion():
    P = PresentedMonoid(2, (((0, 2), (2, 0)),))
    c = classify_presented(P, 6)
    assert presented_groupification(P) == (1, [2])
    assert not c.torsion_free and c.integral and not c.toric


def test_presented_free():
    c = classify_presented(PresentedMonoid(2, ()), 4)
    assert c.integral and c.saturated and c.toric


def test_presented_bound_check():
    P = PresentedMonoid(1, (((3,), (1,)),))
    with pytest.raises(MonoidError):
        classify_presented(P, 2)


@st.composite
def presented(draw):
    m = draw(st.integers(1, 2))
    side = st.tuples(*[st.integers(0, 2) for _ in range(m)])
    rels = draw(st.lists(st.tuples(side, side), max_size=2))
    return PresentedMonoid(m, tuple(rels))


@settings(max_examples=200, deadline=None)
@given(presented(), st.data())
def test_word_problem_matches_bfs(P, data):
    bound = 5
    side = st.tuples(*[st.integers(0, 2) for _ in range(P.ngens)])
    u, v = data.draw(side), data.draw(side)
    expected = oracles.word_equal(P.relations, u, v, bound)
    assert (word_problem(P, u, v, bound) == "equal") == expected


def test_units_and_split_examples():
    assert units_and_split(AffineMonoid.lattice(2))[1] == 2
    assert units_and_split(AffineMonoid.lattice(2))[0].rank == 0
    S, l = units_and_split(AffineMonoid.free(2))
    assert l == 0 and is_isomorphic(S, AffineMonoid.free(2))[0]
    S, l = units_and_split(AffineMonoid(2, ((1, 0), (0, 1), (0, -1))))
    assert l == 1 and is_isomorphic(S, N)[0]


# -- duals -----------------------------------------------------------------

@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_dual_of_free_and_lattice(k):
    assert is_isomorphic(dual(AffineMonoid.free(k)), AffineMonoid.free(k))[0]
    assert dual(AffineMonoid.lattice(k)).rank == 0


def test_pyramid_dual():
    D = dual(PYRAMID)
    assert D.rank == 3 and len(D.generators) == 4 and face_census(D) == (1, 4, 4, 1)


def test_double_dual_examples():
    assert double_dual_map(AffineMonoid.free(2))[0]
    assert not double_dual_map(AffineMonoid.lattice(2))[0]
    iso, w = double_dual_map(TWOTHREE)
    assert not iso and is_isomorphic(w["double_dual"], N)[0]


# -- faces -----------------------------------------------------------------

def test_face_examples():
    assert face_census(PYRAMID) == (1, 4, 4, 1)
    assert len(faces(AffineMonoid.free(2))) == 4
    assert len(faces(AffineMonoid.zero(2))) == 1
    assert len(spec(N)) == 2 and len(spec(PYRAMID)) == 10 and len(spec(AffineMonoid.zero())) == 1


def test_faces_against_bruteforce():
    for P in (AffineMonoid.free(2), PYRAMID):
        got = sorted(F.generator_indices for F in faces(P))
        assert got == sorted(oracles.faces_bruteforce(list(P.generators), 2))


def test_face_dual_examples():
    top = face_by_generators(PYRAMID, range(4))
    assert face_dual(top).generator_indices == ()
    bottom = face_by_generators(PYRAMID, ())
    assert len(face_dual(bottom).generator_indices) == 4
    Fd = face_dual(face_by_generators(PYRAMID, (0, 2)))
    assert Fd.monoid.rank == 1 and is_isomorphic(Fd.monoid.intrinsic(), N)[0]


def test_face_contains():
    F = face_by_generators(PYRAMID, (0, 2))
    assert F.contains((2, 3, 0)) and not F.contains((1, 1, 1))


# -- morphisms and constructions --------------------------------------------

def test_fibre_product_examples():
    N2 = AffineMonoid.free(2)
    Z0 = AffineMonoid.zero(0)
    mu = MonoidMorphism(N2, Z0, ())
    nu = MonoidMorphism(N, Z0, ())
    W = fibre_product(mu, nu)
    assert is_isomorphic(W, AffineMonoid.free(3))[0]
    W = fibre_product(scale(N, N, 2), scale(N, N, 3))
    assert W.generators == ((3, 2),)
    s = MonoidMorphism(N2, N, ((1, 1),))
    W = fibre_product(s, s)
    assert W.rank == 3 and len(W.generators) == 4
    assert is_isomorphic(W, PYRAMID)[0]
    assert len(relations(W)) == 1


def test_relations_of_pyramid():
    (a, b), = relations(PYRAMID)
    assert sorted([a, b]) == [(0, 0, 1, 1), (1, 1, 0, 0)]


def test_relations_of_twothree():
    rels = relations(TWOTHREE)
    assert ((3, 0), (0, 2)) in rels or ((0, 2), (3, 0)) in rels


def test_pushout_fg_examples():
    P = pushout_fg(scale(N, N, 1), scale(N, N, 2))
    assert P.ngens == 2 and P.relations == (((1, 0), (0, 2)),)
    P = pushout_fg(scale(N, N, 1), scale(N, N, 1))
    assert classify_presented(P, 4).toric and presented_groupification(P) == (1, [])
    Z0 = AffineMonoid.zero(0)
    P = pushout_fg(MonoidMorphism(Z0, N, ((),)), MonoidMorphism(Z0, N, ((),)))
    assert P.relations == () and P.ngens == 2


def test_pushout_toric_examples():
    N2 = AffineMonoid.free(2)
    Z0 = AffineMonoid.zero(0)
    e = lambda T: MonoidMorphism(Z0, T, tuple(() for _ in range(T.ambient)))
    assert is_isomorphic(pushout_toric(e(N2), e(N)), AffineMonoid.free(3))[0]
    assert is_isomorphic(pushout_toric(scale(N, N, 1), scale(N, N, 1)), N)[0]
    d = MonoidMorphism(N, N2, ((1,), (1,)))
    R = pushout_toric(d, d)
    assert R.rank == 3 and face_census(R) == (1, 4, 4, 1)


def test_is_free_examples():
    assert is_free(AffineMonoid.free(2))
    assert not is_free(PYRAMID)
    assert not is_free(TWOTHREE)


def test_isomorphism_examples():
    A = AffineMonoid(2, ((0, 1), (1, 0)))
    ok, T = is_isomorphic(AffineMonoid.free(2), A)
    assert ok and abs(lc.determinant(T)) == 1
    assert not is_isomorphic(AffineMonoid.free(2), PYRAMID)[0]
    with pytest.raises(MonoidError):
        is_isomorphic(TWOTHREE, N)


def test_hilbert_and_minimal_generators():
    P = AffineMonoid(2, ((1, 0), (1, 1), (1, 2), (2, 2)))
    assert minimal_generators(P) == ((1, 0), (1, 1), (1, 2))
    assert hilbert_basis(P) == ((1, 0), (1, 1), (1, 2))


def test_morphism_rejects_bad_images():
    with pytest.raises(MonoidError):
        MonoidMorphism.from_images(N, TWOTHREE, [(1,)])
    with pytest.raises(MonoidError):
        MonoidMorphism(N, N, ((-1,),))


# -- properties ------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(monoids())
def test_double_dual_iso_iff_toric(P):
    assert double_dual_map(P)[0] == classify(P).toric


@settings(max_examples=200, deadline=None)
@given(monoids())
def test_triple_dual(P):
    D = dual(P)
    assert is_toric(D)
    assert is_isomorphic(dual(dual(D)), D)[0]


@settings(max_examples=200, deadline=None)
@given(monoids())
def test_face_rank_identities(P):
    if not is_toric(P):
        return
    iso, w = double_dual_map(P)
    eta = w["images"]
    for F in faces(P):
        assert F.monoid.rank + F.codim == P.rank
        Fd = face_dual(F)
        assert Fd.monoid.rank == F.codim
        Fdd = face_dual(Fd)
        assert Fdd.codim == F.codim
        for i in range(P.ngens):
            assert Fdd.contains(tuple(eta[i])) == (i in F.generator_indices)


@settings(max_examples=200, deadline=None)
@given(monoids(), st.data())
def test_classification_unimodular_invariant(P, data):
    U = data.draw(unimodular(P.ambient))
    Q = transform(P, U)
    assert classify(P) == classify(Q)
    if classify(P).weakly_toric:
        assert face_census(P) == face_census(Q)
        assert len(spec(P)) == len(faces(P))


@settings(max_examples=200, deadline=None)
@given(monoids(), st.randoms(use_true_random=False))
def test_generator_order_irrelevant(P, rnd):
    gens = list(P.generators)
    rnd.shuffle(gens)
    Q = AffineMonoid(P.ambient, tuple(gens))
    assert classify(P) == classify(Q)
    assert double_dual_map(P)[0] == double_dual_map(Q)[0]
    if classify(P).weakly_toric:
        assert face_census(P) == face_census(Q)


@settings(max_examples=200, deadline=None)
@given(monoids())
def test_union_of_primes_is_prime(P):
    if not classify(P).weakly_toric:
        return
    fs = faces(P)
    for F in fs:
        for G in fs:
            common = set(F.generator_indices) & set(G.generator_indices)
            face_by_generators(P, common)


@settings(max_examples=200, deadline=None)
@given(pointed_monoids(max_gens=3))
def test_hilbert_basis_minimal(P):
    # the oracle enumerates Z^d, so restrict to P^gp = Z^d
    if not is_toric(P) or P.rank != P.ambient or abs(lc.determinant(P.group.matrix())) != 1:
        return
    hb = hilbert_basis(P)
    assert list(hb) == oracles.hilbert_basis_bruteforce(list(P.generators))
    for i, h in enumerate(hb):
        rest = [x for j, x in enumerate(hb) if j != i]
        assert not rest or not oracles.in_monoid(rest, h, 3)


@settings(max_examples=200, deadline=None)
@given(pointed_monoids(max_dim=2, max_gens=3), pointed_monoids(max_dim=2, max_gens=3))
def test_pushout_toric_symmetric(P, Q):
    P = P.intrinsic() if is_toric(P) else AffineMonoid.free(1)
    Q = Q.intrinsic() if is_toric(Q) else AffineMonoid.free(2)
    Z0 = AffineMonoid.zero(0)
    e = lambda T: MonoidMorphism(Z0, T, tuple(() for _ in range(T.ambient)))
    A, B = pushout_toric(e(P), e(Q)), pushout_toric(e(Q), e(P))
    assert is_isomorphic(A, B)[0]
    assert is_isomorphic(A, direct_sum(P, Q))[0]

