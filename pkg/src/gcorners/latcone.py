"""Exact integer linear algebra and rational polyhedral cones.

Matrices are lists of rows of Python ints (or Fractions where noted).
Vectors are tuples of ints.  Nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import gcd
from typing import Sequence

Vector = tuple
Matrix = list


# ---------------------------------------------------------------------------
# small helpers

def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def transpose(M, ncols=None):
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*M)]


def matmul(A, B):
    """Product of two matrices given as lists of rows.

    Shapes are taken from the operands; an empty A gives an empty result.
    """
    if not A:
        return []
    inner = len(A[0])
    if inner == 0:
        ncols = len(B[0]) if B else 0
        return [[0] * ncols for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def columns(M, ncols):
    return [tuple(r[j] for r in M) for j in range(ncols)]


def from_columns(cols, nrows):
    return [[c[i] for c in cols] for i in range(nrows)]


def primitive(v):
    """Scale a rational vector to the unique primitive integer vector
    pointing the same way.  The zero vector is returned unchanged."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    w = [int(x * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g == 0:
        return tuple(w)
    return tuple(x // g for x in w)


def determinant(M):
    n = len(M)
    if n == 0:
        return 1
    A = [[Fraction(x) for x in r] for r in M]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return int(det) if det.denominator == 1 else det


def row_echelon(M):
    """Reduced row echelon form over Q.  Returns (rows, pivot columns)."""
    A = [[Fraction(x) for x in r] for r in M]
    if not A:
        return [], []
    n = len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        A[r] = [x / piv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(M):
    return len(row_echelon(M)[1])


def solve(A, b):
    """One rational solution x of A x = b, or None if inconsistent."""
    m = len(A)
    n = len(A[0]) if A else 0
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R, piv = row_echelon(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(R, piv):
        x[c] = row[n]
    return tuple(x)


def inverse(M):
    n = len(M)
    aug = [list(M[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    R, piv = row_echelon(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def integer_inverse(U):
    inv = inverse(U)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


# ---------------------------------------------------------------------------
# normal forms

def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_normal_form(M):
    """Column-style Hermite normal form.

    Returns (H, U) with H = M U, U unimodular, H lower triangular in the
    echelon sense: each pivot is positive, everything to its right in the
    pivot row is zero and entries to its left are reduced modulo it.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    H = [list(r) for r in M]
    U = identity(n)

    def colop(j, k, a, b, c, d):
        # (col j, col k) <- (a*col j + b*col k, c*col j + d*col k)
        for T in (H, U):
            for r in T:
                x, y = r[j], r[k]
                r[j], r[k] = a * x + b * y, c * x + d * y

    piv = 0
    for i in range(m):
        if piv == n:
            break
        for k in range(piv + 1, n):
            if H[i][k] == 0:
                continue
            a, b = H[i][piv], H[i][k]
            g, x, y = _xgcd(a, b)
            # new piv col = x*a_col + y*b_col, new k col = -(b/g) a_col + (a/g) b_col
            colop(piv, k, x, y, -b // g, a // g)
        if H[i][piv] == 0:
            continue
        if H[i][piv] < 0:
            for T in (H, U):
                for r in T:
                    r[piv] = -r[piv]
        p = H[i][piv]
        for j in range(piv):
            q = H[i][j] // p
            if q:
                for T in (H, U):
                    for r in T:
                        r[j] -= q * r[piv]
        piv += 1
    return H, U


def smith_normal_form(M):
    """Returns (D, U, V) with D = U M V diagonal, d1 | d2 | ..., U, V unimodular."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(r) for r in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for T in (A, V):
            for r in T:
                r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for T in (A, V):
            for r in T:
                r[dst] += q * r[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return _smith_finish(A, U, V)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return _smith_finish(A, U, V)


def _smith_finish(A, U, V):
    # enforce the divisibility chain on the diagonal
    k = min(len(A), len(A[0]) if A else 0)
    diag = [A[i][i] for i in range(k)]
    if all(diag[i] == 0 or (diag[i + 1] % diag[i] == 0) for i in range(k - 1)) and \
            all(diag[i] != 0 or diag[i + 1] == 0 for i in range(k - 1)):
        return A, U, V
    raise AssertionError("smith form lost divisibility")


def smith_invariants(M):
    """Nonzero diagonal entries of the Smith form."""
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def cokernel_torsion_free(M):
    """True iff Z^rows / (column span of M) has no torsion."""
    if not M or not M[0]:
        return True
    return all(d == 1 for d in smith_invariants(M))


def kernel_lattice(M, n=None):
    """Basis (list of vectors) of the saturated lattice {x in Z^n : M x = 0}."""
    if n is None:
        n = len(M[0]) if M else 0
    if not M:
        return [tuple(r) for r in identity(n)]
    H, U = hermite_normal_form(M)
    r = sum(1 for j in range(n) if any(row[j] for row in H))
    return [tuple(U[i][j] for i in range(n)) for j in range(r, n)]


def image_lattice(vectors, n):
    """Basis of the sublattice of Z^n spanned by the given vectors."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return []
    M = from_columns(vectors, n)
    H, _ = hermite_normal_form(M)
    cols = columns(H, len(vectors))
    return [c for c in cols if any(c)]


def saturate(vectors, n):
    """Basis of the saturation (span over Q intersected with Z^n)."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return []
    orth = kernel_lattice([list(v) for v in vectors], n)
    if not orth:
        return [tuple(r) for r in identity(n)]
    return kernel_lattice([list(v) for v in orth], n)


def unimodular_completion(basis, n):
    """A unimodular n x n matrix whose first columns span the same lattice as
    ``basis``.  The basis must span a saturated sublattice."""
    if not basis:
        return identity(n)
    H, W = hermite_normal_form([list(v) for v in basis])
    Ui = integer_inverse(W)
    return transpose(Ui)


@dataclass(frozen=True)
class Lattice:
    ambient: int
    basis: tuple = ()

    @property
    def rank(self):
        return len(self.basis)

    def matrix(self):
        """Basis vectors as columns."""
        return from_columns(self.basis, self.ambient)

    @cached_property
    def _solver(self):
        # an invertible square block of the basis matrix, inverted once as adj / det
        _, rows = row_echelon([list(b) for b in self.basis])
        block = [[b[i] for b in self.basis] for i in rows]
        det = determinant(block)
        adj = [[int(x * det) for x in row] for row in inverse(block)]
        return rows, adj, det

    def coordinates(self, v):
        """Integer coordinates of v in the basis, or None if v is not in the lattice."""
        if self.rank == 0:
            return () if not any(v) else None
        rows, adj, det = self._solver
        num = matvec(adj, [v[i] for i in rows])
        if any(x % det for x in num):
            return None
        x = tuple(a // det for a in num)
        if any(sum(c * b[j] for c, b in zip(x, self.basis)) != v[j] for j in range(self.ambient)):
            return None
        return x

    def __contains__(self, v):
        return self.coordinates(v) is not None


# ---------------------------------------------------------------------------
# double description

def _double_description(n, inequalities):
    """Cone {x : a.x >= 0 for a in inequalities} in Q^n.

    Returns (rays, lineality) as lists of primitive integer vectors; rays are
    extreme modulo lineality, lineality spans the lineality space.
    """
    lin = [tuple(r) for r in identity(n)]
    rays = []
    tight = []
    for idx, a in enumerate(inequalities):
        vals = [dot(a, l) for l in lin]
        j = next((k for k, v in enumerate(vals) if v), None)
        if j is not None:
            l0 = lin.pop(j)
            s = vals[j]
            if s < 0:
                l0 = tuple(-x for x in l0)
                s = -s
            lin = [primitive([s * x - dot(a, l) * y for x, y in zip(l, l0)]) for l in lin]
            rays = [primitive([s * x - dot(a, r) * y for x, y in zip(r, l0)]) for r in rays]
            tight = [t | {idx} for t in tight]
            rays.append(l0)
            tight.append(frozenset(range(idx)))
            continue
        vals = [dot(a, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        new_rays = [rays[k] for k in pos] + [rays[k] for k in zer]
        new_tight = [tight[k] for k in pos] + [tight[k] | {idx} for k in zer]
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if any(k != p and k != q and common <= tight[k] for k in range(len(rays))):
                    continue
                v = primitive([vals[p] * x - vals[q] * y for x, y in zip(rays[q], rays[p])])
                new_rays.append(v)
                new_tight.append(common | {idx})
        rays, tight = new_rays, new_tight
    return rays, lin


def _project_out(vectors, space, n):
    """Canonical representatives: orthogonally project each vector onto the
    complement of ``space`` and make it primitive."""
    if not space:
        return [tuple(v) for v in vectors]
    G = [[Fraction(dot(a, b)) for b in space] for a in space]
    Gi = inverse(G)
    out = []
    for v in vectors:
        c = [dot(s, v) for s in space]
        coef = [sum(Gi[i][j] * c[j] for j in range(len(space))) for i in range(len(space))]
        w = [Fraction(v[k]) - sum(coef[i] * space[i][k] for i in range(len(space)))
             for k in range(n)]
        out.append(primitive(w))
    return out


def _dedupe(vectors):
    seen = []
    for v in vectors:
        if any(v) and v not in seen:
            seen.append(v)
    return sorted(seen)


@dataclass(frozen=True, eq=False)
class Cone:
    """A rational polyhedral cone in Q^ambient, stored in both forms.

    ``rays`` are the extreme rays modulo the lineality space, ``lineality``
    is a lattice basis of the lineality space.  ``facets`` are the
    irredundant inequalities and ``equations`` a lattice basis of the linear
    forms vanishing on the cone.  All four lists are canonical, so two cones
    are equal iff these agree.
    """

    ambient: int
    rays: tuple
    lineality: tuple
    facets: tuple
    equations: tuple

    @classmethod
    def from_generators(cls, ambient, generators, lineality=()):
        gens = [tuple(int(x) for x in g) for g in generators]
        lin_in = [tuple(int(x) for x in g) for g in lineality]
        for g in gens + lin_in:
            if len(g) != ambient:
                raise ValueError(f"vector {g} does not have length {ambient}")
        ineq = gens + lin_in + [tuple(-x for x in g) for g in lin_in]
        dual_rays, dual_lin = _double_description(ambient, ineq)
        return cls._from_dual(ambient, dual_rays, dual_lin)

    @classmethod
    def from_inequalities(cls, ambient, inequalities, equations=()):
        ineq = [tuple(int(x) for x in a) for a in inequalities]
        eqs = [tuple(int(x) for x in a) for a in equations]
        for a in ineq + eqs:
            if len(a) != ambient:
                raise ValueError(f"covector {a} does not have length {ambient}")
        rays, lin = _double_description(ambient, ineq + eqs + [tuple(-x for x in e) for e in eqs])
        return cls._from_primal(ambient, rays, lin)

    @classmethod
    def _from_primal(cls, n, rays, lin):
        # canonical lineality and equations
        lin = image_lattice(saturate(lin, n), n)
        gens = [list(r) for r in rays] + [list(l) for l in lin]
        equations = kernel_lattice(gens, n) if gens else [tuple(r) for r in identity(n)]
        equations = image_lattice(equations, n)
        # facets from the dual description
        ineq = [tuple(r) for r in rays] + list(lin) + [tuple(-x for x in l) for l in lin]
        frays, _ = _double_description(n, ineq)
        facets = _dedupe(_project_out(frays, equations, n))
        rays = _dedupe(_project_out(rays, lin, n))
        return cls(n, tuple(rays), tuple(lin), tuple(facets), tuple(equations))

    @classmethod
    def _from_dual(cls, n, dual_rays, dual_lin):
        equations = saturate(dual_lin, n)
        ineq = list(dual_rays) + list(equations) + [tuple(-x for x in e) for e in equations]
        rays, lin = _double_description(n, ineq)
        return cls._from_primal(n, rays, lin)

    # -- queries ---------------------------------------------------------

    @property
    def dim(self):
        return self.ambient - len(self.equations)

    @property
    def is_pointed(self):
        return not self.lineality

    def generators(self):
        """Rays plus both signs of the lineality basis: a conic generating set."""
        return list(self.rays) + list(self.lineality) + [tuple(-x for x in l) for l in self.lineality]

    def inequalities(self):
        return list(self.facets) + list(self.equations) + [tuple(-x for x in e) for e in self.equations]

    def contains(self, v):
        if len(v) != self.ambient:
            raise ValueError("dimension mismatch")
        return all(dot(e, v) == 0 for e in self.equations) and all(dot(f, v) >= 0 for f in self.facets)

    def __contains__(self, v):
        return self.contains(v)

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        return (self.ambient, self.rays, self.lineality, self.facets, self.equations) == (
            other.ambient, other.rays, other.lineality, other.facets, other.equations)

    def __hash__(self):
        return hash((self.ambient, self.rays, self.facets))

    def __repr__(self):
        return f"Cone(ambient={self.ambient}, rays={list(self.rays)}, lineality={list(self.lineality)})"


def dual_cone(C):
    """{u : u.c >= 0 for all c in C}."""
    n = C.ambient
    return Cone(n, C.facets, C.equations, C.rays, C.lineality)


def relative_interior_contains(C, v):
    return C.contains(v) and all(dot(f, v) > 0 for f in C.facets)


# ---------------------------------------------------------------------------
# faces

@dataclass(frozen=True)
class FaceHandle:
    inequality_indices: tuple
    codim: int
    generator_indices: tuple

    def __repr__(self):
        return f"FaceHandle(ineq={list(self.inequality_indices)}, codim={self.codim}, gens={list(self.generator_indices)})"


def _face_closure(C, ray_set):
    """Facet indices tight on every ray in ray_set (all facets if empty)."""
    return frozenset(i for i, f in enumerate(C.facets)
                     if all(dot(f, C.rays[r]) == 0 for r in ray_set))


def cone_faces(C, points=None):
    """All faces of C, sorted lexicographically by their inequality-index sets.

    ``points`` optionally lists vectors of C (e.g. monoid generators) whose
    indices are reported per face as ``generator_indices``; by default the
    rays are used.
    """
    rays = C.rays
    tight_of_ray = [frozenset(i for i, f in enumerate(C.facets) if dot(f, r) == 0) for r in rays]
    start = frozenset()
    seen = {start}
    queue = [start]
    while queue:
        T = queue.pop()
        face_rays = [k for k in range(len(rays)) if T <= tight_of_ray[k]]
        for i in range(len(C.facets)):
            if i in T:
                continue
            sub = [k for k in face_rays if i in tight_of_ray[k]]
            T2 = _face_closure(C, sub)
            if T2 not in seen:
                seen.add(T2)
                queue.append(T2)
    pts = rays if points is None else [tuple(p) for p in points]
    out = []
    for T in seen:
        face_rays = [rays[k] for k in range(len(rays)) if T <= tight_of_ray[k]]
        d = rank([list(v) for v in face_rays] + [list(l) for l in C.lineality]) if (face_rays or C.lineality) else 0
        gidx = tuple(j for j, p in enumerate(pts) if all(dot(C.facets[i], p) == 0 for i in T))
        out.append(FaceHandle(tuple(sorted(T)), C.dim - d, gidx))
    out.sort(key=lambda h: h.inequality_indices)
    return out


def face_rays(C, handle):
    return [r for r in C.rays if all(dot(C.facets[i], r) == 0 for i in handle.inequality_indices)]


# ---------------------------------------------------------------------------
# Hilbert bases

def _triangulate_face(rays, k, n):
    """Triangulate a pointed cone of dimension k spanned by ``rays`` in Q^n."""
    if len(rays) == k:
        return [list(rays)]
    C = Cone.from_generators(n, rays)
    v = rays[0]
    out = []
    for f in C.facets:
        if dot(f, v) == 0:
            continue
        on = [r for r in rays if dot(f, r) == 0]
        for simplex in _triangulate_face(on, k - 1, n):
            out.append([v] + simplex)
    return out


def _parallelepiped_points(simplex, d):
    """Nonzero lattice points of the half-open fundamental parallelepiped."""
    S = from_columns(simplex, d)
    D, U, V = smith_normal_form(S)
    Ui = integer_inverse(U)
    diag = [D[i][i] for i in range(d)]
    delta = determinant(S)
    sign, delta = (1, delta) if delta > 0 else (-1, -delta)
    # S^-1 = adj / det, kept integral
    adj = [[int(x * delta) * sign for x in row] for row in inverse(S)]
    pts = []
    for c in product(*[range(x) for x in diag]):
        if not any(c):
            continue
        x = matvec(Ui, c)
        r = [v % delta for v in matvec(adj, x)]
        p = tuple(v // delta for v in matvec(S, r))
        if any(p):
            pts.append(p)
    return pts


@lru_cache(maxsize=1024)
def _pointed_full_hilbert_cached(rays, d):
    C = Cone.from_generators(d, rays)
    cands = set(tuple(r) for r in C.rays)
    for simplex in _triangulate_face(list(C.rays), d, d):
        cands.update(_parallelepiped_points(simplex, d))
    cands = sorted(cands)
    # g - c lies in the full-dimensional cone iff every facet value drops
    values = [tuple(dot(f, g) for f in C.facets) for g in cands]
    basis = []
    for g, vg in zip(cands, values):
        if not any(c != g and all(a <= b for a, b in zip(vc, vg))
                   for c, vc in zip(cands, values)):
            basis.append(g)
    return tuple(basis)


def _pointed_full_hilbert(rays, d):
    if d == 0:
        return []
    return list(_pointed_full_hilbert_cached(tuple(sorted(tuple(r) for r in rays)), d))


def hilbert_basis(C, L=None):
    """Generators of the monoid C ∩ L.

    For pointed C this is the Hilbert basis.  Otherwise the result is a
    lattice basis of the lineality part, its negatives, and lifts of the
    Hilbert basis of the pointed quotient.  ``L`` is a full-rank Lattice of
    the ambient space (default Z^n).
    """
    n = C.ambient
    if L is not None:
        if L.ambient != n or L.rank != n:
            raise ValueError("lattice must have full rank in the cone's ambient space")
        B = L.matrix()
        facets = [tuple(matvec(transpose(B), f)) for f in C.facets]
        eqs = [tuple(matvec(transpose(B), e)) for e in C.equations]
        Cy = Cone.from_inequalities(n, facets, eqs)
        return sorted(tuple(matvec(B, y)) for y in hilbert_basis(Cy))
    for r in C.rays:
        if not C.contains(r):
            raise ValueError("inconsistent cone representation")
    lin = list(C.lineality)
    l = len(lin)
    U = unimodular_completion(lin, n)
    Ui = integer_inverse(U)
    quot_rays = [tuple(matvec(Ui, r)[l:]) for r in C.rays]
    k = n - l
    # the pointed quotient may not be full dimensional; pass to its span
    span = saturate(quot_rays, k)
    d = len(span)
    Lspan = Lattice(k, tuple(span))
    coords = [Lspan.coordinates(r) for r in quot_rays]
    pointed = _pointed_full_hilbert(coords, d)
    out = []
    for y in pointed:
        z = [0] * l + [sum(y[i] * span[i][j] for i in range(d)) for j in range(k)]
        out.append(tuple(matvec(U, z)))
    lin_basis = [tuple(U[i][j] for i in range(n)) for j in range(l)]
    out = sorted(set(out))
    return lin_basis + [tuple(-x for x in v) for v in lin_basis] + out
