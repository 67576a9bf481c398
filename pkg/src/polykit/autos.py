"""Elementary graded automorphisms as sparse exact matrices.

An automorphism of R[P] is determined by its action on the degree-one
monomials, i.e. on the lattice points of P.  Matrices act on coordinate
vectors from the left; column ``j`` holds the image of the ``j``-th
lattice point.  Composition ``compose(f, g)`` means ``f o g``.
"""

import random
from functools import lru_cache
from math import comb

from . import intlin
from .columns import ColSet, base_facet
from .errors import (BalancedRequired, BaseFacetMismatch, CaseNotCovered,
                     NotInvariant, SingularMatrix, StageMismatch, ValidationFailure)
from .lattice import make
from .rings import Integers, IntegersMod, Polynomials, make_ring


class GradedAutomorphism:
    __slots__ = ("basis", "index", "cols", "ring", "provenance", "stage")

    def __init__(self, basis, cols, ring, provenance=None, stage=None):
        self.basis = tuple(basis)
        self.index = {x: i for i, x in enumerate(self.basis)}
        self.cols = tuple(cols)
        self.ring = ring
        self.provenance = provenance
        self.stage = stage

    @property
    def size(self):
        return len(self.basis)

    def entry(self, i, j):
        return self.cols[j].get(i, self.ring.zero())

    def dense(self):
        n = self.size
        return [[self.entry(i, j) for j in range(n)] for i in range(n)]

    def __eq__(self, other):
        return equals(self, other)

    def __hash__(self):
        return hash((self.basis, tuple(tuple(sorted(c.items())) for c in self.cols)))

    def is_identity(self):
        one = self.ring.one()
        return all(len(c) == 1 and c.get(j) == one for j, c in enumerate(self.cols))

    def to_json(self):
        fmt = self.ring.fmt
        return {"basis": [list(x) for x in self.basis],
                "ring": self.ring.spec(),
                "matrix": [[fmt(x) for x in row] for row in self.dense()]}


def identity(P, ring):
    basis = P.lattice_points
    one = ring.one()
    return GradedAutomorphism(basis, [{j: one} for j in range(len(basis))],
                              ring, (), P)


def elementary(P, v, lam, ring):
    """Matrix of e_v^lam: x -> sum_k binom(h,k) lam^k (x + k v), h = ht_v(x)."""
    v = tuple(v)
    fid = base_facet(P, v)
    if fid is None:
        raise ValidationFailure("%r is not a column vector" % (v,))
    F = P.facets[fid]
    lam = ring.norm(lam)
    idx = P.point_index
    cols = []
    for x in P.lattice_points:
        h = F(x, 1)
        col = {}
        y = x
        for k in range(h + 1):
            c = ring.binom_pow(comb(h, k), lam, k)
            if not ring.is_zero(c):
                col[idx[y]] = c
            y = intlin.add(y, v)
        cols.append(col)
    return GradedAutomorphism(P.lattice_points, cols, ring, ((v, lam),), P)


def _same_stage(f, g):
    if f.basis != g.basis or f.ring != g.ring:
        raise StageMismatch("automorphisms live on different stages or rings")


def compose(f, g):
    _same_stage(f, g)
    R = f.ring
    cols = []
    for gc in g.cols:
        out = {}
        for k, a in gc.items():
            for i, b in f.cols[k].items():
                s = R.add(out.get(i, R.zero()), R.mul(b, a))
                if R.is_zero(s):
                    out.pop(i, None)
                else:
                    out[i] = s
        cols.append(out)
    prov = None
    if f.provenance is not None and g.provenance is not None:
        prov = f.provenance + g.provenance
    return GradedAutomorphism(f.basis, cols, R, prov, f.stage)


def compose_all(fs, P=None, ring=None):
    out = None
    for f in fs:
        out = f if out is None else compose(out, f)
    if out is None:
        out = identity(P, ring)
    return out


def evaluate(P, letters, ring):
    """e_{v1}^{l1} o e_{v2}^{l2} o ... for a list of (v, lam) letters."""
    return compose_all([elementary(P, v, lam, ring) for v, lam in letters], P, ring)


def inverse(f):
    R = f.ring
    if f.provenance is not None and f.stage is not None:
        letters = [(v, R.neg(lam)) for v, lam in reversed(f.provenance)]
        g = evaluate(f.stage, letters, R)
        g.provenance = tuple(letters)
        return g
    return _generic_inverse(f)


def _generic_inverse(f):
    from sympy import Matrix
    R = f.ring
    if isinstance(R, Polynomials):
        M = Matrix([[R.R(x).as_expr() for x in row] for row in f.dense()])
    else:
        M = Matrix([[x for x in row] for row in f.dense()])
    d = M.det()
    try:
        if isinstance(R, IntegersMod):
            N = M.inv_mod(R.m)
        else:
            if isinstance(R, (Integers, Polynomials)) and d not in (1, -1):
                raise SingularMatrix("determinant %s is not a unit" % d)
            N = M.inv()
    except ValueError as exc:
        raise SingularMatrix(str(exc))
    conv = (lambda x: R.R.from_expr(x)) if isinstance(R, Polynomials) else R.norm
    cols = []
    for j in range(N.shape[1]):
        cols.append({i: conv(N[i, j]) for i in range(N.shape[0])
                     if not R.is_zero(conv(N[i, j]))})
    return GradedAutomorphism(f.basis, cols, R, None, f.stage)


def commutator(f, g):
    """[f, g] = f o g o f^-1 o g^-1."""
    return compose_all([f, g, inverse(f), inverse(g)])


def equals(f, g):
    _same_stage(f, g)
    return f.cols == g.cols


def restrict(f, points):
    """Block of f on the span of the given lattice points."""
    points = tuple(sorted(tuple(p) for p in points))
    pos = [f.index[p] for p in points]
    inside = set(pos)
    new = {k: i for i, k in enumerate(pos)}
    cols = []
    for k in pos:
        col = f.cols[k]
        if not set(col) <= inside:
            raise NotInvariant("column of %r leaves the sub-polytope" % (f.basis[k],))
        cols.append({new[i]: a for i, a in col.items()})
    return GradedAutomorphism(points, cols, f.ring, None, None)


def relabel(f, mapping):
    """Same matrix over renamed basis points (mapping: old -> new)."""
    new_basis = [tuple(mapping(x)) for x in f.basis]
    order = sorted(range(len(new_basis)), key=lambda i: new_basis[i])
    pos = {old: k for k, old in enumerate(order)}
    cols = [{pos[i]: a for i, a in f.cols[old].items()} for old in order]
    return GradedAutomorphism([new_basis[i] for i in order], cols, f.ring)


# -- the commutator sign ----------------------------------------------------------

@lru_cache(maxsize=None)
def commutator_sign():
    """Sign s with [e_u^lam, e_v^mu] = e_{uv}^{s lam mu}, read off the unit
    triangle over Z[lam, mu]."""
    P = make("simplex(2,1)")
    C = ColSet(P)
    R = Polynomials(("lam", "mu"))
    lam, mu = R.gens
    u, v = next((a.v, b.v) for a in C for b in C if C.product(a.v, b.v) is not None)
    w = C.product(u, v).v
    lhs = commutator(elementary(P, u, lam, R), elementary(P, v, mu, R))
    for s in (-1, 1):
        if equals(lhs, elementary(P, w, s * lam * mu, R)):
            return s
    raise ValidationFailure("commutator on the unit triangle is not elementary")


SIGN = None


def sign():
    global SIGN
    if SIGN is None:
        SIGN = commutator_sign()
        assert SIGN == -1
    return SIGN


# -- Steinberg relations ------------------------------------------------------------

def verify_steinberg(P, u, v, mode="symbolic", samples=10, seed=0, C=None):
    from .columns import is_balanced
    C = C or ColSet(P)
    ok, wit = is_balanced(C)
    if not ok:
        raise BalancedRequired("relations are only claimed for balanced polytopes")
    u, v = tuple(u), tuple(v)
    if not any(intlin.add(u, v)):
        raise ValidationFailure("u + v = 0")
    s = sign()
    uv, vu = C.product(u, v), C.product(v, u)
    if uv is not None:
        case, target, k = "product", uv.v, s
    elif vu is not None:
        case, target, k = "reversed-product", vu.v, -s
    elif intlin.add(u, v) not in C:
        case, target, k = "commute", None, 0
    else:
        raise CaseNotCovered("u+v is a column vector but neither product exists")
    if mode == "symbolic":
        R = Polynomials(("lam", "mu"))
        pairs = [R.gens]
    else:
        R = IntegersMod(5)
        rng = random.Random(seed)
        pairs = [(rng.randrange(5), rng.randrange(5)) for _ in range(samples)]
    passed = True
    for lam, mu in pairs:
        lhs = commutator(elementary(P, u, lam, R), elementary(P, v, mu, R))
        if target is None:
            good = lhs.is_identity()
        else:
            good = equals(lhs, elementary(P, target, R.mul(k, R.mul(lam, mu)), R))
        if isinstance(R, Polynomials):
            for c in lhs.cols:
                for x in c.values():
                    R.check(x)
        passed &= good
    return {"u": list(u), "v": list(v), "case": case,
            "target": list(target) if target else None,
            "coefficient": "%+d*lam*mu" % k if target else "0",
            "mode": mode, "pass": bool(passed)}


def phi_embedding(P, fid, lams, vs, ring):
    vs = [tuple(v) for v in vs]
    if len(set(vs)) != len(vs):
        raise BaseFacetMismatch("vectors must be distinct")
    for v in vs:
        if base_facet(P, v) != fid:
            raise BaseFacetMismatch("%r does not have base facet %d" % (v, fid))
    return evaluate(P, list(zip(vs, lams)), ring)
