"""Column vectors, their products, balancedness and Col-divisibility."""

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from . import intlin
from .errors import NotBalanced, NotColDivisible, ValidationFailure
from .lattice import hull


class ColumnVector(NamedTuple):
    v: tuple
    base: int


def base_facet(P, v):
    """Facet criterion: the unique facet with pairing -1, all others >= 0."""
    v = tuple(v)
    if not any(v):
        return None
    base = None
    for i, f in enumerate(P.facets):
        p = intlin.dot(f.normal, v)
        if p == -1 and base is None:
            base = i
        elif p < 0:
            return None
    return base


def base_facet_definitional(P, v):
    """Facet F such that x+v stays in P for every lattice point x off F."""
    v = tuple(v)
    if not any(v):
        return None
    pts = P.point_set
    hits = [i for i in range(len(P.facets))
            if all(intlin.add(x, v) in pts for x in P.off_facet_points(i))]
    if len(hits) > 1:
        raise ValidationFailure("base facet of %r not unique" % (v,))
    return hits[0] if hits else None


def lattice_differences(P):
    L = P.lattice_points
    return sorted({intlin.sub(y, x) for x in L for y in L if x != y})


def _candidates(P):
    # a column vector with base F carries a height-1 point onto F
    out = set()
    for i, f in enumerate(P.facets):
        one = next((x for x in P.lattice_points if f(x, 1) == 1), None)
        if one is None:
            return lattice_differences(P)
        for y in P.facet_points(i):
            out.add(intlin.sub(y, one))
    return sorted(out)


class ColSet:
    """Col(P) with pairing and product tables."""

    def __init__(self, P):
        self.polytope = P
        vecs = []
        for v in _candidates(P):
            b = base_facet(P, v)
            if b is not None:
                vecs.append(ColumnVector(v, b))
        self.vectors = tuple(vecs)
        self.index = {c.v: i for i, c in enumerate(vecs)}

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __contains__(self, v):
        return tuple(v) in self.index

    def __getitem__(self, v):
        return self.vectors[self.index[tuple(v)]]

    def base(self, v):
        return self.vectors[self.index[tuple(v)]].base

    def pair(self, fid, v):
        return intlin.dot(self.polytope.facets[fid].normal, v)

    @cached_property
    def base_facets(self):
        return tuple(sorted({c.base for c in self.vectors}))

    @cached_property
    def pairing(self):
        """Matrix rows u, columns v: <P_u, v>."""
        return tuple(tuple(self.pair(u.base, v.v) for v in self.vectors)
                     for u in self.vectors)

    def product(self, u, v):
        u, v = tuple(u), tuple(v)
        s = intlin.add(u, v)
        if not any(s) or self.pair(self.base(v), u) <= 0:
            return None
        return ColumnVector(s, self.base(u))

    @cached_property
    def products(self):
        """Sparse triples (i, j, k) with vectors[i] vectors[j] = vectors[k]."""
        out = []
        for i, u in enumerate(self.vectors):
            for j, v in enumerate(self.vectors):
                w = self.product(u.v, v.v)
                if w is not None:
                    out.append((i, j, self.index[w.v]))
        return tuple(out)

    def is_terminal(self, v):
        return all(self.pair(f, v) <= 0 for f in self.base_facets)

    def upper_facet(self, v):
        """P^v: the base facet with pairing 1 (None for terminal v)."""
        ups = [f for f in self.base_facets if self.pair(f, v) == 1]
        if len(ups) == 1 and not self.is_terminal(v):
            return ups[0]
        return None

    def to_json(self):
        return {
            "vectors": [{"v": list(c.v), "base": c.base,
                         "terminal": self.is_terminal(c.v)} for c in self.vectors],
            "pairing": [list(r) for r in self.pairing],
            "products": [list(t) for t in self.products],
        }


def column_vectors(P):
    return ColSet(P)


def product(C, u, v):
    return C.product(u, v)


def product_definitional(C, u, v):
    """uv exists iff u+v != 0 and x+u avoids P_v for all x off P_u."""
    P = C.polytope
    u, v = tuple(u), tuple(v)
    if not any(intlin.add(u, v)):
        return False
    fv = P.facets[C.base(v)]
    return all(fv(intlin.add(x, u), 1) != 0 for x in P.off_facet_points(C.base(u)))


def long_product(C, vs):
    """Return (mode, value) with mode in {"strong", "weak-only", "none"}."""
    vs = [tuple(v) for v in vs]
    m = len(vs)
    total = tuple(map(sum, zip(*vs)))
    strong = all(C.product(a, b) is not None for a, b in zip(vs, vs[1:])) and \
        all(any(map(sum, zip(*vs[i:j]))) for i in range(m) for j in range(i + 1, m + 1))
    if strong:
        return "strong", ColumnVector(total, C.base(vs[0]))
    # weak: dynamic programming over bracketings
    ok = {}
    for i in range(m):
        ok[i, i] = True
    sums = {}
    for i in range(m):
        for j in range(i, m):
            sums[i, j] = tuple(map(sum, zip(*vs[i:j + 1])))
    for length in range(2, m + 1):
        for i in range(m - length + 1):
            j = i + length - 1
            ok[i, j] = any(ok[i, k] and ok[k + 1, j] and
                           sums[i, k] in C and sums[k + 1, j] in C and
                           C.product(sums[i, k], sums[k + 1, j]) is not None
                           for k in range(i, j))
    if ok[0, m - 1]:
        return "weak-only", ColumnVector(total, C.base(vs[0]))
    return "none", None


def pairing_matrix(C, vs):
    """Rows v_i, columns the base facets P_{v_j}: entries <P_{v_j}, v_i>."""
    return [[C.pair(C.base(w), v) for w in vs] for v in vs]


def is_bidiagonal(M):
    """-1 on the diagonal, 1 just above it, 0 elsewhere."""
    return all(M[i][j] == (-1 if i == j else 1 if j == i + 1 else 0)
               for i in range(len(M)) for j in range(len(M)))


def is_balanced(C):
    """(True, None) or (False, (u, v, <P_u, v>)) for the first violation."""
    for u in C.vectors:
        for v in C.vectors:
            p = C.pair(u.base, v.v)
            if p > 1:
                return False, (u.v, v.v, p)
    return True, None


def _invertible(C, v):
    return intlin.neg(v) in C


@dataclass
class DivisibilityReport:
    cd1_ok: bool
    cd2_ok: bool
    violations: list

    def to_json(self):
        return {"cd1_ok": self.cd1_ok, "cd2_ok": self.cd2_ok,
                "violations": [{"axiom": a, "vectors": [list(x) for x in w]}
                               for a, w in self.violations]}


def col_divisibility(C):
    ok, _ = is_balanced(C)
    if not ok:
        raise NotBalanced("Col-divisibility is only defined for balanced polytopes")
    vecs = [c.v for c in C.vectors]
    prod = {}
    for i, j, k in C.products:
        prod[vecs[i], vecs[j]] = vecs[k]
    violations = []

    def has(x, y, z):
        return prod.get((x, y)) == z

    for a, b, c in itertools.product(vecs, repeat=3):
        if a == b or (a, c) not in prod or (b, c) not in prod:
            continue
        d1, d2 = intlin.sub(a, b), intlin.sub(b, a)
        good = has(d1, b, a) or has(d2, a, b)
        if not good:
            violations.append(("CD1", (a, b, c)))
        elif _invertible(C, a) or _invertible(C, b):
            pass  # consistent with the invertibility shortcut
    for (a, b), ab in prod.items():
        for (c, d), cd in prod.items():
            if ab != cd or a == c:
                continue
            t1, t2 = intlin.sub(c, a), intlin.sub(a, c)
            good = (has(a, t1, c) and has(t1, d, b)) or (has(c, t2, a) and has(t2, b, d))
            if not good:
                violations.append(("CD2", (a, b, c, d)))
    cd1 = not any(x == "CD1" for x, _ in violations)
    cd2 = not any(x == "CD2" for x, _ in violations)
    return DivisibilityReport(cd1, cd2, violations)


def shortcut_applies(C, axiom, vectors):
    """The invertibility shortcuts that make an axiom instance automatic."""
    if axiom == "CD1":
        a, b, _ = vectors
        return _invertible(C, a) or _invertible(C, b)
    return any(_invertible(C, x) for x in vectors)


def is_col_divisible(C):
    ok, _ = is_balanced(C)
    if not ok:
        return False
    r = col_divisibility(C)
    return r.cd1_ok and r.cd2_ok


# -- simplex embedding ----------------------------------------------------------

def terminal_cliques(C):
    term = [c.v for c in C.vectors if C.is_terminal(c.v)]
    parent = {v: v for v in term}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in itertools.combinations(term, 2):
        t1, t2 = intlin.sub(u, v), intlin.sub(v, u)
        if (t1 in C and C.product(t1, v) is not None) or \
                (t2 in C and C.product(t2, u) is not None):
            parent[find(u)] = find(v)
    groups = {}
    for v in term:
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(sorted(g)) for g in groups.values())


@dataclass
class SimplexEmbedding:
    simplex: object
    labels: list          # ("F", fid) or ("C", clique)
    iota: dict            # v -> vector of the simplex
    colset: object

    def to_json(self):
        labels = [[k, x if k == "F" else [list(v) for v in x]] for k, x in self.labels]
        return {"dim": self.simplex.dim, "labels": labels,
                "iota": [{"v": list(v), "image": list(w)}
                         for v, w in sorted(self.iota.items())]}


def embed_in_simplex(C):
    if not is_col_divisible(C):
        raise NotColDivisible("embedding needs a Col-divisible polytope")
    cliques = terminal_cliques(C)
    labels = [("F", f) for f in C.base_facets] + [("C", q) for q in cliques]
    m = len(labels) - 1
    if m < 1:
        raise ValidationFailure("simplex of dimension < 1")

    def vert(k):
        e = [0] * m
        if k > 0:
            e[k - 1] = 1
        return tuple(e)

    where = {lab: k for k, lab in enumerate(labels)}
    clique_of = {v: q for q in cliques for v in q}
    iota = {}
    for c in C.vectors:
        lo = where["F", c.base]
        if C.is_terminal(c.v):
            hi = where["C", clique_of[c.v]]
        else:
            up = C.upper_facet(c.v)
            if up is None:
                raise ValidationFailure("non-terminal %r lacks an upper facet" % (c.v,))
            hi = where["F", up]
        iota[c.v] = intlin.sub(vert(hi), vert(lo))
    D = hull([vert(k) for k in range(m + 1)], "simplex(%d,1)" % m)
    CD = ColSet(D)
    _validate_embedding(C, CD, iota)
    return SimplexEmbedding(D, labels, iota, CD)


def _validate_embedding(C, CD, iota):
    if len(set(iota.values())) != len(iota):
        raise ValidationFailure("embedding is not injective")
    for v, w in iota.items():
        if w not in CD:
            raise ValidationFailure("image of %r is not a column vector" % (v,))
    for w in C.vectors:
        for v in C.vectors:
            if C.pair(w.base, v.v) != CD.pair(CD.base(iota[w.v]), iota[v.v]):
                raise ValidationFailure("pairing not preserved at %r, %r" % (w.v, v.v))
            p = C.product(v.v, w.v)
            q = CD.product(iota[v.v], iota[w.v])
            if (p is None) != (q is None) or (p is not None and iota[p.v] != q.v):
                raise ValidationFailure("product not preserved at %r, %r" % (v.v, w.v))
