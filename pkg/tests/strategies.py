"""Hypothesis strategies shared by the property suites."""

from hypothesis import strategies as st

from gcorners.germ import MapGerm
from gcorners.model import LocalModel
from gcorners.monoid import AffineMonoid


def vectors(dim, lo=-2, hi=2):
    return st.tuples(*[st.integers(lo, hi) for _ in range(dim)]).filter(any)


@st.composite
def monoids(draw, max_dim=3, max_gens=4, lo=-2, hi=2):
    d = draw(st.integers(1, max_dim))
    gens = draw(st.lists(vectors(d, lo, hi), min_size=1, max_size=max_gens, unique=True))
    return AffineMonoid(d, tuple(gens))


@st.composite
def pointed_monoids(draw, max_dim=3, max_gens=4, hi=2):
    """Monoids with every generator in the half-space x_0 >= 1."""
    d = draw(st.integers(1, max_dim))
    vec = st.tuples(st.integers(1, hi), *[st.integers(-hi, hi) for _ in range(d - 1)])
    gens = draw(st.lists(vec, min_size=1, max_size=max_gens, unique=True))
    return AffineMonoid(d, tuple(gens))


@st.composite
def unimodular(draw, n, steps=4):
    """A product of random elementary integer matrices and sign flips."""
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n == 0:
        return U
    for _ in range(draw(st.integers(0, steps))):
        i = draw(st.integers(0, n - 1))
        j = draw(st.integers(0, n - 1))
        if i == j:
            U[i] = [-x for x in U[i]]
        else:
            c = draw(st.integers(-2, 2))
            U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    if n > 1 and draw(st.booleans()):
        p = draw(st.permutations(range(n)))
        U = [U[k] for k in p]
    return U


def apply(U, v):
    return tuple(sum(a * x for a, x in zip(row, v)) for row in U)


def transform(P, U):
    return AffineMonoid(P.ambient, tuple(apply(U, g) for g in P.generators))


# -- germs -------------------------------------------------------------------

FREE1 = AffineMonoid.free(1)
FREE2 = AffineMonoid.free(2)
CONE = AffineMonoid(2, ((1, 0), (1, 1), (1, 2)))
PYRAMID = AffineMonoid(3, ((1, 0, 0), (0, 1, 1), (0, 1, 0), (1, 0, 1)))
TORIC_POOL = (FREE1, FREE2, CONE, PYRAMID)


@st.composite
def elements(draw, Q, max_coeff=2, nonzero=False):
    cs = draw(st.lists(st.integers(0, max_coeff), min_size=Q.ngens, max_size=Q.ngens))
    if nonzero and not any(cs):
        cs[draw(st.integers(0, Q.ngens - 1))] = 1
    return tuple(sum(c * g[j] for c, g in zip(cs, Q.generators)) for j in range(Q.ambient))


def _add(*vs):
    return tuple(map(sum, zip(*vs)))


@st.composite
def exponent_images(draw, S, Q, vertex=False):
    """Images in Q of the generators of S respecting the relations of S.

    With ``vertex`` every image is nonzero, so the germ sends the vertex to
    the target vertex (Q is sharp).
    """
    if S == CONE:
        u, v = draw(elements(Q, nonzero=vertex)), draw(elements(Q))
        return [u, _add(u, v), _add(u, v, v)]
    if S == PYRAMID:
        u, v, w = (draw(elements(Q, nonzero=vertex and k == 0)) for k in range(3))
        z = draw(elements(Q, nonzero=vertex))
        return [_add(u, v), _add(w, z), _add(u, w), _add(v, z)]
    return [draw(elements(Q, nonzero=vertex)) for _ in range(S.ngens)]


def small_matrix(draw, rows, cols, lo=-2, hi=2):
    return [[draw(st.integers(lo, hi)) for _ in range(cols)] for _ in range(rows)]


@st.composite
def germ_data(draw, S=None, q=None, vertex=False):
    """(Q, m, S, q, images, D, C) for a random interior germ."""
    Q = draw(st.sampled_from(TORIC_POOL))
    if S is None:
        S = draw(st.sampled_from(TORIC_POOL))
    m = draw(st.integers(0, 2))
    if q is None:
        q = draw(st.integers(0, 2))
    images = draw(exponent_images(S, Q, vertex))
    Dint = small_matrix(draw, S.rank, m)
    D = [[sum(y[k] * Dint[k][j] for k in range(S.rank)) for j in range(m)] for y in S.coords]
    C = small_matrix(draw, q, m)
    return Q, m, S, q, images, D, C


def build_germ(data):
    Q, m, S, q, images, D, C = data
    return MapGerm.build(LocalModel(Q, m), LocalModel(S, q), images, D, C)


def transform_germ_data(data, U, V):
    """Re-coordinatize Q by U and S by V; D and C are per generator so they stay."""
    Q, m, S, q, images, D, C = data
    return (transform(Q, U), m, transform(S, V), q, [apply(U, v) for v in images], D, C)
