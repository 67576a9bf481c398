"""Layers of a rigid system and the canonical form in G(R, V).

A letter is a pair ``(v, lam)`` standing for e_v^lam.  Words are read
left to right as compositions, so ``[a, b]`` evaluates to a o b.

Canonicalization moves every letter of the lowest layer to the front.
Swapping ``b a`` into ``a b`` costs the correction [b^-1, a^-1], which
for a rigid system is a single elementary letter on the concatenated
path.  The constant in that correction is obtained from the matrices
(``mode="matrix"``) or from the product table and the global sign
(``mode="formal"``).
"""

import itertools
import sys
from dataclasses import dataclass, field

from . import autos, intlin
from .errors import (CaseNotCovered, LetterOutsideSystem, NotIsomorphic,
                     ValidationFailure)
from .rings import IntegersMod, Polynomials

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


@dataclass
class LayerStructure:
    system: object
    edge_degrees: dict          # irreducible -> degree
    upper: dict                 # r -> frozenset [V]^r
    t: int
    _brackets: dict = field(default_factory=dict, repr=False)

    @property
    def polytope(self):
        return self.system.colset.polytope

    @property
    def colset(self):
        return self.system.colset

    def layer(self, v):
        for r, vs in self.upper.items():
            if v in vs:
                return r
        raise LetterOutsideSystem("%r is not in the closure of the system" % (v,))

    def lower(self, r):
        """[V]_r: vectors whose paths start with an edge of degree >= r."""
        return frozenset(v for s, vs in self.upper.items() if s >= r for v in vs)

    def edges_of_degree(self, r):
        return sorted(e for e, d in self.edge_degrees.items() if d == r)

    def N(self, r):
        return len(self.upper.get(r, ()))

    def edge_leq(self, f, g):
        """f <= g iff some path starts with f and ends with g."""
        if f == g:
            return True
        for p in self.system.graph.paths():
            if p[0][2] == f and p[-1][2] == g:
                return True
        return False


def layer_partition(S):
    g = S.graph
    ht = g.heights()
    deg = {lab: ht[s] + 1 for s, _, lab in g.edges}
    upper = {}
    for v, (s, _) in S.endpoint.items():
        upper.setdefault(ht[s] + 1, set()).add(v)
    upper = {r: frozenset(vs) for r, vs in sorted(upper.items())}
    return LayerStructure(S, deg, upper, max(upper, default=0))


@dataclass
class CanonicalForm:
    layers: dict                # r -> {v: coefficient}, zeros dropped
    ring: object

    def letters(self):
        out = []
        for r in sorted(self.layers):
            for v in sorted(self.layers[r]):
                out.append((v, self.layers[r][v]))
        return out

    def support(self):
        return frozenset(v for m in self.layers.values() for v in m)

    def evaluate(self, P):
        return autos.evaluate(P, self.letters(), self.ring)

    def __eq__(self, other):
        return isinstance(other, CanonicalForm) and self.layers == other.layers

    def to_json(self):
        fmt = self.ring.fmt
        return [{"layer": r,
                 "entries": [{"v": list(v), "coef": fmt(c)} for v, c in sorted(m.items())]}
                for r, m in sorted(self.layers.items())]


def _bracket_matrix(L, y, x):
    """(z, k) with [e_y^a, e_x^b] = e_z^{k a b}, or None if they commute."""
    key = (y, x)
    if key not in L._brackets:
        P = L.polytope
        R = Polynomials(("a", "b"))
        a, b = R.gens
        c = autos.commutator(autos.elementary(P, y, a, R), autos.elementary(P, x, b, R))
        if c.is_identity():
            res = None
        else:
            z = intlin.add(y, x)
            res = None
            for k in (1, -1):
                if z in L.colset and autos.equals(c, autos.elementary(P, z, k * a * b, R)):
                    res = (z, k)
            if res is None:
                raise ValidationFailure("[e_%r, e_%r] is not elementary" % (y, x))
        L._brackets[key] = res
    return L._brackets[key]


def _bracket_formal(L, y, x):
    C = L.colset
    s = autos.sign()
    if C.product(y, x) is not None:
        return (intlin.add(y, x), s)
    if C.product(x, y) is not None:
        return (intlin.add(y, x), -s)
    z = intlin.add(y, x)
    if not any(z) or z not in C:
        return None
    raise CaseNotCovered("%r + %r is a column vector without a product" % (y, x))


def _merge(letters, R):
    out = []
    for v, c in letters:
        if R.is_zero(c):
            continue
        if out and out[-1][0] == v:
            s = R.add(out[-1][1], c)
            out.pop()
            if not R.is_zero(s):
                out.append((v, s))
        else:
            out.append((v, c))
    return out


def _rewrite(L, word, R, r, bracket):
    layers = {}
    rest = _merge(word, R)
    while rest:
        for v, _ in rest:
            if L.layer(v) < r:
                raise LetterOutsideSystem("%r lies below layer %d" % (v, r))

        def pull(seq, a):
            # seq . a == prod(pulled) . prod(new_seq), pulled in layer r
            if not seq:
                return [a], []
            b = seq[-1]
            p1, r1 = pull(seq[:-1], a)
            tail = r1 + [b]
            br = bracket(L, b[0], a[0])
            if br is None:
                return p1, tail
            z, k = br
            c = (z, R.mul(R.from_int(k), R.mul(b[1], a[1])))
            if R.is_zero(c[1]):
                return p1, tail
            if L.layer(z) == r:
                p2, r2 = pull(tail, c)
                return p1 + p2, r2
            return p1, tail + [c]

        front, nxt = {}, []
        for a in rest:
            if L.layer(a[0]) == r:
                pulled, nxt = pull(nxt, a)
                for v, c in pulled:
                    front[v] = R.add(front.get(v, R.zero()), c)
            else:
                nxt.append(a)
                nxt = _merge(nxt, R)
        front = {v: c for v, c in front.items() if not R.is_zero(c)}
        if front:
            layers[r] = front
        rest, r = nxt, r + 1
    return CanonicalForm(layers, R)


def _letters(word, R):
    return [(tuple(v), R.norm(c)) for v, c in word]


def canonicalize(L, word, R, r=1, mode="matrix", verify=True):
    word = _letters(word, R)
    for v, _ in word:
        L.layer(v)
    bracket = _bracket_matrix if mode == "matrix" else _bracket_formal
    cf = _rewrite(L, word, R, r, bracket)
    if verify:
        P = L.polytope
        if not autos.equals(cf.evaluate(P), autos.evaluate(P, word, R)):
            raise ValidationFailure("canonical form does not reproduce the word")
    return cf


def equals_in_G(L, w1, w2, R):
    a = canonicalize(L, w1, R)
    b = canonicalize(L, w2, R)
    P = L.polytope
    m = autos.equals(autos.evaluate(P, _letters(w1, R), R), autos.evaluate(P, _letters(w2, R), R))
    assert (a == b) == m, "canonical forms disagree with matrices"
    return a == b


# -- isomorphisms ----------------------------------------------------------------------

def find_isomorphism(g1, g2):
    """Some vertex bijection carrying the edges of g1 onto those of g2, or None."""
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return None
    e2 = {(s, t) for s, t, _ in g2.edges}
    for perm in itertools.permutations(g2.vertices):
        m = dict(zip(g1.vertices, perm))
        if {(m[s], m[t]) for s, t, _ in g1.edges} == e2:
            return m
    return None


@dataclass
class Transport:
    vector_map: dict

    def __call__(self, word):
        return [(self.vector_map[tuple(v)], c) for v, c in word]

    def form(self, cf):
        return CanonicalForm({r: {self.vector_map[v]: c for v, c in m.items()}
                              for r, m in cf.layers.items()}, cf.ring)


def transport(SP, SQ, iso):
    e2 = {(s, t) for s, t, _ in SQ.graph.edges}
    image = {(iso[s], iso[t]) for s, t, _ in SP.graph.edges}
    if image != e2 or len(set(iso.values())) != len(iso):
        raise NotIsomorphic("the vertex map is not a graph isomorphism")
    back = {ends: v for v, ends in SQ.endpoint.items()}
    vm = {}
    for v, (s, t) in SP.endpoint.items():
        key = (iso[s], iso[t])
        if key not in back:
            raise NotIsomorphic("path class %r has no counterpart" % (key,))
        vm[v] = back[key]
    return Transport(vm)


# -- intersections ---------------------------------------------------------------------

def intersection_membership(LU, LV, word, R):
    shared = LU.system.closure & LV.system.closure
    for L in (LU, LV):
        try:
            cf = canonicalize(L, word, R)
        except LetterOutsideSystem:
            continue
        return cf.support() <= shared
    raise LetterOutsideSystem("word uses letters outside both systems")


def enumerate_group(L, p):
    """All elements of G(Z/p, V) as matrices (the canonical forms are a
    bijective parametrization)."""
    R = IntegersMod(p)
    P = L.polytope
    vs = sorted(L.system.closure, key=lambda v: (L.layer(v), v))
    out = set()
    for coefs in itertools.product(range(p), repeat=len(vs)):
        out.add(autos.evaluate(P, [(v, c) for v, c in zip(vs, coefs) if c], R))
    return out
