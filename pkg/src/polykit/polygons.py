"""Normal fans and the classification of balanced lattice polygons."""

from collections import Counter
from dataclasses import dataclass

from . import intlin
from .columns import ColSet, is_balanced
from .errors import DimensionMismatch, NoColumns, NotBalanced, Unclassifiable, DegenerateInput
from .lattice import are_integrally_affinely_equivalent, simplex


@dataclass(frozen=True)
class NormalFan:
    cones: tuple        # sorted tuple of frozensets of primitive inner normals

    def __eq__(self, other):
        return Counter(self.cones) == Counter(other.cones)

    def __hash__(self):
        return hash(tuple(sorted(tuple(sorted(c)) for c in self.cones)))

    def normals(self):
        return frozenset(a for c in self.cones for a in c)


def normal_fan(P):
    if len(P.facets) < P.dim + 1:
        raise DegenerateInput("normal fan needs a full-dimensional polytope")
    cones = []
    for x in P.vertices:
        cones.append(frozenset(f.normal for f in P.facets if f(x, 1) == 0))
    return NormalFan(tuple(sorted(cones, key=lambda c: sorted(c))))


def projectively_equivalent(P, Q):
    if P.dim != Q.dim:
        raise DimensionMismatch("dimensions %d and %d differ" % (P.dim, Q.dim))
    return normal_fan(P) == normal_fan(Q)


GROUP_SHAPES = {
    "a": ("E_a", "E(R)"),
    "b": ("E_b", "[[E(R), End_R(R^N)], [0, E(R)]]"),
    "c": ("E_c", "[[E(R), End_R(R^N), Hom_R(R^N,R)], [0, E(R), Hom_R(R^N,R)], [0, 0, 1]]"),
    "d": ("E_{d,t}", "[[E(R), Hom_R(R^N,R^t)], [0, Id_t]]"),
    "e": ("E_e", "E(R) x E(R)"),
    "f": ("E_f", "[[E(R), Hom_R(R^N,R)], [0, 1]] x [[E(R), Hom_R(R^N,R)], [0, 1]]"),
}


@dataclass
class PolygonClass:
    tag: str
    params: dict
    col_summary: dict
    group_shape: str
    group_blocks: str
    citations: list

    def to_json(self):
        return {"class": self.tag, "params": self.params, "col_summary": self.col_summary,
                "group_shape": self.group_shape, "group_blocks": self.group_blocks,
                "citations": self.citations}


def _summary(C):
    vs = [c.v for c in C]
    prods = sorted((u, v, w) for u, v, w in
                   ((a, b, C.product(a, b)) for a in vs for b in vs) if w is not None)
    return {
        "n_columns": len(vs),
        "vectors": [list(v) for v in vs],
        "base_facets": sorted({C.base(v) for v in vs}),
        "invertible": [list(v) for v in vs if intlin.neg(v) in C],
        "products": [[list(u), list(v), list(w.v)] for u, v, w in prods],
    }, prods


def _edge_length(P):
    return min(intlin.content(intlin.sub(x, y))
               for x in P.vertices for y in P.vertices if x != y)


def classify(P, C=None):
    if P.dim != 2 or len(P.facets) < 3:
        raise DegenerateInput("classification is for 2-dimensional polygons")
    C = C or ColSet(P)
    ok, wit = is_balanced(C)
    if not ok:
        raise NotBalanced("not balanced: <P_u, v> = %d for u=%r, v=%r" % (wit[2], wit[0], wit[1]))
    if not len(C):
        raise NoColumns("Col(P) is empty")
    summary, prods = _summary(C)
    vs = [c.v for c in C]
    n = len(vs)
    inv = {v for v in vs if intlin.neg(v) in C}
    bases = {C.base(v) for v in vs}
    pairs = {(u, v, w.v) for u, v, w in prods}

    def done(tag, params, checks):
        label, blocks = GROUP_SHAPES[tag]
        if tag == "d":
            label = "E_{d,%d}" % params["t"]
            blocks = blocks.replace("R^t", "R^%d" % params["t"]).replace("Id_t", "Id_%d" % params["t"])
        return PolygonClass(tag, params, summary, label, blocks, checks)

    if n == 6 and inv == set(vs):
        c = _edge_length(P)
        if are_integrally_affinely_equivalent(P, simplex(2, c)) is None:
            raise Unclassifiable("six invertible columns but not a multiple of the unit triangle")
        return done("a", {"c": c}, ["six invertible column vectors",
                                    "integral-affine equivalence to c*Delta_2"])
    if len(bases) == 1:
        return done("d", {"t": n}, ["single base edge"])
    if n == 4 and len(inv) == 4 and not prods:
        return done("e", {}, ["two invertible pairs", "no products"])
    if n == 4 and len(inv) == 2 and len(prods) == 2:
        v = min(inv)
        for u in vs:
            for w in vs:
                if u in inv or w in inv or u == w:
                    continue
                for vv in (v, intlin.neg(v)):
                    if pairs == {(u, vv, w), (w, intlin.neg(vv), u)}:
                        return done("b", {}, ["one invertible pair",
                                              "products uv=w and w(-v)=u only"])
    if n == 3 and not inv and len(prods) == 1:
        return done("c", {}, ["three columns", "single product uv=w"])
    if n == 2 and not inv and not prods and len(bases) == 2:
        return done("f", {}, ["two columns on distinct base edges", "no products"])
    raise Unclassifiable("column pattern %r fits no class" % (summary,))


# -- enumeration -----------------------------------------------------------------------

def _hull_vertices(pts):
    pts = sorted(set(pts))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lo, up = [], []
    for p in pts:
        while len(lo) >= 2 and cross(lo[-2], lo[-1], p) <= 0:
            lo.pop()
        lo.append(p)
    for p in reversed(pts):
        while len(up) >= 2 and cross(up[-2], up[-1], p) <= 0:
            up.pop()
        up.append(p)
    return lo[:-1] + up[:-1]


def _translate(vs):
    mx = min(x for x, _ in vs)
    my = min(y for _, y in vs)
    return tuple(sorted((x - mx, y - my) for x, y in vs))


_SQUARE_SYMMETRIES = [
    lambda x, y: (x, y), lambda x, y: (-x, y), lambda x, y: (x, -y), lambda x, y: (-x, -y),
    lambda x, y: (y, x), lambda x, y: (-y, x), lambda x, y: (y, -x), lambda x, y: (-y, -x),
]


def _canonical(vs, symmetric):
    if not symmetric:
        return _translate(vs)
    return min(_translate([g(x, y) for x, y in vs]) for g in _SQUARE_SYMMETRIES)


def lattice_polygons(N, symmetric=True):
    """Vertex lists of all lattice polygons with vertices in [0, N]^2, one per
    translation class (and per symmetry of the square if ``symmetric``)."""
    import itertools
    pts = [(x, y) for x in range(N + 1) for y in range(N + 1)]
    seen, frontier = set(), set()
    for tri in itertools.combinations(pts, 3):
        h = _hull_vertices(tri)
        if len(h) == 3:
            k = _translate(h)
            if k not in seen:
                seen.add(k)
                frontier.add(k)
    while frontier:
        new = set()
        for vs in frontier:
            for p in pts:
                if p in vs:
                    continue
                k = _translate(_hull_vertices(list(vs) + [p]))
                if max(max(q) for q in k) <= N and k not in seen:
                    seen.add(k)
                    new.add(k)
        frontier = new
    return sorted({_canonical(vs, symmetric) for vs in seen})
