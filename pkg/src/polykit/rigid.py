"""Rigid systems of column vectors and their supporting graphs."""

import itertools
from dataclasses import dataclass, field

from . import intlin
from .columns import ColSet, is_col_divisible, long_product
from .doubling import double, embed
from .errors import NotColDivisible, ResourceBound, RigidityFailure

CLOSURE_CAP = 64
PATH_CAP = 20000


def _vsum(vs):
    return tuple(map(sum, zip(*vs)))


def closure(C, V, mode="strong", cap=CLOSURE_CAP):
    """[V] (strong) or <V> (weak) inside Col(P)."""
    V = sorted({tuple(v) for v in V})
    if mode == "weak":
        out = set(V)
        frontier = set(V)
        while frontier:
            new = set()
            for a in out:
                for b in frontier:
                    for x, y in ((a, b), (b, a)):
                        p = C.product(x, y)
                        if p is not None and p.v not in out:
                            new.add(p.v)
            out |= new
            frontier = new
            if len(out) > cap:
                raise ResourceBound("weak closure exceeds %d" % cap)
        return frozenset(out)
    n = len(V[0]) if V else 0
    out = set()
    succ = {a: [b for b in V if C.product(a, b) is not None] for a in V}

    # consecutive products must exist; segment sums must be nonzero
    def grow(seq, sums):
        out.add(sums[0])
        if len(out) > cap:
            raise ResourceBound("strong closure exceeds %d" % cap)
        if len(seq) > n:
            raise RigidityFailure("strong product longer than the dimension")
        for b in succ[seq[-1]]:
            new = [intlin.add(s, b) for s in sums] + [b]
            if all(any(s) for s in new):
                grow(seq + [b], new)

    for a in V:
        grow([a], [a])
    return frozenset(out)


@dataclass
class DirectedGraph:
    vertices: tuple
    edges: tuple          # (source, target, label)

    def out_edges(self, x):
        return [e for e in self.edges if e[0] == x]

    def in_edges(self, x):
        return [e for e in self.edges if e[1] == x]

    def heights(self):
        ht = {x: 0 for x in self.vertices}
        for x in self.topological():
            for e in self.out_edges(x):
                ht[e[1]] = max(ht[e[1]], ht[x] + 1)
        return ht

    def topological(self):
        indeg = {x: 0 for x in self.vertices}
        for e in self.edges:
            indeg[e[1]] += 1
        ready = sorted(x for x in self.vertices if indeg[x] == 0)
        order = []
        while ready:
            x = ready.pop(0)
            order.append(x)
            for e in self.out_edges(x):
                indeg[e[1]] -= 1
                if indeg[e[1]] == 0:
                    ready.append(e[1])
        if len(order) != len(self.vertices):
            raise RigidityFailure("graph has a directed cycle")
        return order

    def paths(self, cap=PATH_CAP):
        """All nonempty directed paths, as tuples of edges."""
        out = []
        stack = [(e,) for e in self.edges]
        while stack:
            p = stack.pop()
            out.append(p)
            if len(out) > cap:
                raise ResourceBound("more than %d paths" % cap)
            if len(p) > len(self.vertices):
                raise RigidityFailure("graph has a directed cycle")
            for e in self.out_edges(p[-1][1]):
                stack.append(p + (e,))
        return out

    def to_dot(self, name="G"):
        ids = {x: "n%d" % i for i, x in enumerate(sorted(self.vertices))}
        lines = ["digraph %s {" % name]
        for x in sorted(self.vertices):
            lines.append('  %s;' % ids[x])
        for s, t, lab in sorted(self.edges):
            lines.append('  %s -> %s [label="%s"];' % (ids[s], ids[t], ",".join(map(str, lab))))
        lines.append("}")
        return "\n".join(lines)


@dataclass
class RigidSystem:
    colset: object
    generators: tuple
    closure: frozenset
    irreducibles: tuple
    graph: DirectedGraph
    endpoint: dict        # vector -> (source, target)
    y_flag: bool = None
    y_graph: DirectedGraph = None

    @property
    def polytope(self):
        return self.colset.polytope

    def path_of(self, w):
        """Edge labels along one path representing w (lexicographically least)."""
        s, t = self.endpoint[tuple(w)]
        best = None
        for p in self.graph.paths():
            if p[0][0] == s and p[-1][1] == t:
                labs = tuple(e[2] for e in p)
                if best is None or labs < best:
                    best = labs
        return list(best)

    def to_json(self):
        return {
            "generators": [list(v) for v in self.generators],
            "closure": [list(v) for v in sorted(self.closure)],
            "irreducibles": [list(v) for v in self.irreducibles],
            "endpoint_map": [{"v": list(v), "source": s, "target": t}
                             for v, (s, t) in sorted(self.endpoint.items())],
            "edges": [{"source": s, "target": t, "v": list(lab)}
                      for s, t, lab in sorted(self.graph.edges)],
            "y_rigid": self.y_flag,
        }


class _UF:
    def __init__(self, items):
        self.p = {x: x for x in items}

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        if b < a:
            a, b = b, a
        self.p[b] = a
        return True


def irreducibles(C, closed):
    closed = set(closed)
    red = set()
    for x in closed:
        for y in closed:
            p = C.product(x, y)
            if p is not None and p.v in closed:
                red.add(p.v)
    return tuple(sorted(closed - red))


def _synthesize(C, cl, irr):
    """Finest graph forced by products and by equal path vectors.

    Vertices are union-find representatives of edge ports.
    """
    uf = _UF([("s", e) for e in irr] + [("t", e) for e in irr])
    for e in irr:
        for f in irr:
            if C.product(e, f) is not None:
                uf.union(("t", e), ("s", f))
    while True:
        graph = _graph(uf, irr)
        paths = graph.paths()
        ends = {}
        for p in paths:
            ends.setdefault(_vsum([e[2] for e in p]), set()).add((p[0][0], p[-1][1]))
        changed = False
        for pairs in ends.values():
            pairs = sorted(pairs)
            for s, t in pairs[1:]:
                changed |= uf.union(pairs[0][0], s)
                changed |= uf.union(pairs[0][1], t)
        rep = {v: min(pairs) for v, pairs in ends.items()}
        for x, (_, tx) in rep.items():
            for y, (sy, _) in rep.items():
                if C.product(x, y) is not None:
                    changed |= uf.union(tx, sy)
        if not changed:
            return graph, paths


def _graph(uf, irr):
    edges = tuple((uf.find(("s", e)), uf.find(("t", e)), e) for e in irr)
    verts = tuple(sorted({x for s, t, _ in edges for x in (s, t)}))
    return DirectedGraph(verts, edges)


def _relabel(graph):
    names = {x: i for i, x in enumerate(graph.topological())}
    return DirectedGraph(tuple(sorted(names.values())),
                         tuple(sorted((names[s], names[t], lab) for s, t, lab in graph.edges))), names


def check_rigid(C, V):
    """Return (RigidSystem, None) or (None, (reason, detail))."""
    V = tuple(sorted({tuple(v) for v in V}))
    strong = closure(C, V, "strong")
    for v in strong:
        if intlin.neg(v) in strong:
            return None, ("pair", (v, intlin.neg(v)))
    weak = closure(C, V, "weak")
    if weak != strong:
        return None, ("closure-mismatch", tuple(sorted(weak - strong)))
    irr = irreducibles(C, strong)
    if not irr:
        g = DirectedGraph((), ())
        return RigidSystem(C, V, strong, irr, g, {}, True, g), None
    try:
        graph, paths = _synthesize(C, strong, irr)
    except RigidityFailure as exc:
        return None, ("not-graph-like", str(exc))
    for s, t, lab in graph.edges:
        if s == t:
            return None, ("not-graph-like", ("loop", lab))
    seen = {}
    for s, t, lab in graph.edges:
        if (s, t) in seen:
            return None, ("not-graph-like", ("multi-edge", seen[s, t], lab))
        seen[s, t] = lab
    try:
        graph.topological()
    except RigidityFailure:
        return None, ("not-graph-like", ("cycle",))
    cls = {}
    for p in paths:
        key = (p[0][0], p[-1][1])
        vec = _vsum([e[2] for e in p])
        if key in cls and cls[key] != vec:
            return None, ("not-graph-like", ("endpoint-clash", cls[key], vec))
        cls[key] = vec
        if len(p) >= 2 and key in seen:
            return None, ("not-graph-like", ("parallel-path", seen[key]))
    endpoint = {}
    for key, vec in cls.items():
        if vec in endpoint:
            return None, ("not-graph-like", ("not-injective", vec))
        endpoint[vec] = key
    if set(endpoint) != set(strong):
        extra = set(endpoint) ^ set(strong)
        return None, ("not-graph-like", ("not-surjective", tuple(sorted(extra))))
    for x, (sx, tx) in endpoint.items():
        for y, (sy, ty) in endpoint.items():
            if (C.product(x, y) is not None) != (tx == sy):
                return None, ("not-graph-like", ("product-mismatch", x, y))
    g, names = _relabel(graph)
    endpoint = {v: (names[s], names[t]) for v, (s, t) in endpoint.items()}
    S = RigidSystem(C, V, strong, irr, g, endpoint)
    _set_y(S)
    return S, None


def _set_y(S):
    g = S.graph
    ok = True
    for x in g.vertices:
        if g.out_edges(x) and len(g.in_edges(x)) > 1:
            ok = False
    # path = pathbar: every class carries a single path
    counts = {}
    for p in g.paths():
        key = (p[0][0], p[-1][1])
        counts[key] = counts.get(key, 0) + 1
    if any(c > 1 for c in counts.values()):
        ok = False
    S.y_flag = ok
    if ok:
        # split terminal vertices so every vertex has in-degree <= 1
        edges, nxt = [], max(g.vertices) + 1
        for s, t, lab in g.edges:
            if not g.out_edges(t) and len(g.in_edges(t)) > 1:
                edges.append((s, nxt, lab))
                nxt += 1
            else:
                edges.append((s, t, lab))
        verts = tuple(sorted({x for s, t, _ in edges for x in (s, t)}))
        S.y_graph = DirectedGraph(verts, tuple(sorted(edges)))


def rigid_system(C, V):
    S, why = check_rigid(C, V)
    if S is None:
        raise RigidityFailure("not rigid: %s %r" % why)
    return S


def is_y_rigid(S):
    if S.y_flag is None:
        _set_y(S)
    return S.y_flag


# -- complexity and resolution ------------------------------------------------------

def regular_cycles(g):
    """Pairs of distinct paths with common ends and no other common vertex."""
    by_ends = {}
    for p in g.paths():
        by_ends.setdefault((p[0][0], p[-1][1]), []).append(p)
    out = []
    for (s, t), ps in sorted(by_ends.items()):
        for p, q in itertools.combinations(sorted(ps), 2):
            inner_p = {e[1] for e in p[:-1]}
            inner_q = {e[1] for e in q[:-1]}
            if not inner_p & inner_q:
                out.append((s, t, p, q))
    return out


def meeting_points(g):
    out = []
    for x in g.vertices:
        ins, outs = g.in_edges(x), g.out_edges(x)
        if len(ins) >= 2 and outs:
            for a1, a2 in itertools.combinations(sorted(ins), 2):
                for b in sorted(outs):
                    out.append((x, a1, a2, b))
    return out


def lambda_complexity(g):
    ht = g.heights()
    points = [t for _, t, _, _ in regular_cycles(g)] + [x for x, *_ in meeting_points(g)]
    if not points:
        return (0, 0)
    A = max(ht[x] for x in points)
    B = len({x for x in points if ht[x] == A})
    return (A, B)


def _labels(path):
    return tuple(e[2] for e in path)


def y_resolve(C, V, trace=None):
    """Y-rigid W with [V] contained in [W]; records complexities in ``trace``."""
    if not is_col_divisible(C):
        raise NotColDivisible("Y-resolution needs a Col-divisible polytope")
    S = rigid_system(C, V)
    W = set(S.closure)
    history = [lambda_complexity(S.graph)]
    for _ in range(200):
        g = S.graph
        comp = lambda_complexity(g)
        if comp == (0, 0):
            break
        moves = _candidate_moves(C, S, comp[0])
        best = None
        for t in moves:
            if t in W:
                continue
            T, _ = check_rigid(C, W | {t})
            if T is None:
                continue
            c2 = lambda_complexity(T.graph)
            if best is None or c2 < best[0]:
                best = (c2, t, T)
            if c2 < comp:
                break
        if best is None:
            raise RigidityFailure("no admissible divisor at complexity %r" % (comp,))
        _, t, S = best
        W = set(S.closure)
        history.append(lambda_complexity(S.graph))
    else:
        raise RigidityFailure("resolution did not terminate")
    if not is_y_rigid(S):
        raise RigidityFailure("complexity (0,0) but not Y-rigid")
    if trace is not None:
        trace.extend(history)
    return S


def _candidate_moves(C, S, height):
    """Divisors produced by CD2 on highest regular cycles, then CD1 on
    highest meeting points."""
    g = S.graph
    ht = g.heights()
    moves = []
    cycles = [c for c in regular_cycles(g) if ht[c[1]] == height]
    cycles.sort(key=lambda c: (_labels(c[2]), _labels(c[3])))
    for _, _, l1, l2 in cycles:
        for p, q in ((l1, l2), (l2, l1)):
            if len(p) < 2 or len(q) < 2:
                continue
            a, b = _vsum(_labels(p[:-1])), p[-1][2]
            c, d = _vsum(_labels(q[:-1])), q[-1][2]
            t = intlin.sub(c, a)
            if t in C and _is(C, a, t, c) and _is(C, t, d, b):
                moves.append(t)
    if moves:
        return moves
    for x, a1, a2, b in meeting_points(g):
        if ht[x] != height:
            continue
        a, bb = a1[2], a2[2]
        for d, y, z in ((intlin.sub(a, bb), bb, a), (intlin.sub(bb, a), a, bb)):
            if d in C and _is(C, d, y, z):
                moves.append(d)
    return moves


def _is(C, x, y, z):
    p = C.product(x, y)
    return p is not None and p.v == z


def intersect(S1, S2):
    C = S1.colset
    S, why = check_rigid(C, S1.closure & S2.closure)
    assert S is not None, why
    if S1.y_flag and S2.y_flag:
        assert S.y_flag
    return S


def extend_under_doubling(D, S, v, CQ=None):
    v = tuple(v)
    if v not in S.irreducibles:
        raise RigidityFailure("%r is not irreducible in the system" % (v,))
    if S.colset.base(v) != D.doubled_facet:
        raise RigidityFailure("doubling is not along the base facet of %r" % (v,))
    CQ = CQ or ColSet(D.Q)
    n = D.Q.dim
    V = {embed(w, n) for w in S.closure} | {D.delta_plus.v, D.phi_lin(v)}
    T = rigid_system(CQ, V)
    expected = {embed(w, n) for w in S.irreducibles if w != v} | \
        {D.delta_plus.v, D.phi_lin(v)}
    if set(T.irreducibles) != expected or \
            len(T.graph.vertices) != len(S.graph.vertices) + 1:
        raise RigidityFailure("extension is not an edge subdivision")
    return T


# -- k-decomposition ------------------------------------------------------------------

@dataclass
class KDecomposition:
    k: int
    doublings: list
    systems: list              # RigidSystems over the last stage
    inputs: list               # input closures lifted to the last stage
    factorizations: dict       # shared irreducible -> list of k factors

    @property
    def stage(self):
        return self.doublings[-1].Q if self.doublings else None


def k_decompose(base, systems, k):
    """Doubling construction making the shared irreducibles k-decomposable.

    ``base`` is the base polytope (or a DoublingSpectrum, whose base is
    used); the construction records its own chain of doublings.
    """
    P = getattr(base, "base", base)
    C = ColSet(P)
    closures = [set(S.closure) for S in systems]
    if k <= 1:
        return KDecomposition(k, [], list(systems), [set(c) for c in closures], {})
    shared = rigid_system(C, set.intersection(*closures)).irreducibles
    cur_P, cur_C = P, C
    Ws = [set(c) for c in closures]
    doublings, fact = [], {}
    for u0 in shared:
        n = cur_P.dim
        u = embed(u0, n)
        first = None
        for W in Ws:
            Sys = rigid_system(cur_C, W)
            path = Sys.path_of(u)
            if first is None:
                first = path[0]
            elif cur_C.base(path[0]) != cur_C.base(first):
                raise RigidityFailure("first factors of %r do not share a base" % (u0,))
        firsts = [rigid_system(cur_C, W).path_of(u)[0] for W in Ws]
        D = double(cur_P, cur_C.base(u))
        doublings.append(D)
        m = D.Q.dim
        Ws = [{embed(w, m) for w in W} | {D.delta_plus.v, D.phi_lin(f)}
              for W, f in zip(Ws, firsts)]
        cur_P, cur_C = D.Q, ColSet(D.Q)
        pieces, piece = [], D.delta_plus.v
        for _ in range(k - 2):
            D = double(cur_P, cur_C.base(piece))
            doublings.append(D)
            m = D.Q.dim
            Ws = [{embed(w, m) for w in W} | {D.delta_plus.v, D.phi_lin(piece)}
                  for W in Ws]
            pieces = [embed(x, m) for x in pieces] + [D.delta_plus.v]
            piece = D.phi_lin(piece)
            cur_P, cur_C = D.Q, ColSet(D.Q)
        pieces.append(piece)
        fact = {embed(x, cur_P.dim): [embed(p, cur_P.dim) for p in ps]
                for x, ps in fact.items()}
        u = embed(u0, cur_P.dim)
        fact[u] = pieces + [intlin.sub(u, _vsum(pieces))]
    m = cur_P.dim
    out = [rigid_system(cur_C, W) for W in Ws]
    inputs = [{embed(w, m) for w in c} for c in closures]
    return KDecomposition(k, doublings, out, inputs, fact)


def verify_kdecomposition(K):
    """Check the definition of k-decomposability; returns (ok, problems)."""
    problems = []
    if K.k <= 1:
        return True, problems
    C = K.systems[0].colset
    inter_U = set.intersection(*[set(c) for c in K.inputs])
    inter_V = set.intersection(*[set(S.closure) for S in K.systems])
    for U, S in zip(K.inputs, K.systems):
        if not U <= S.closure:
            problems.append("input closure not contained")
    Sv = rigid_system(C, inter_V)
    irr_U = rigid_system(C, inter_U).irreducibles
    used = {}
    for u in irr_U:
        fs = K.factorizations.get(u)
        if fs is None or len(fs) != K.k:
            problems.append(("no factorization", u))
            continue
        mode, val = long_product(C, fs)
        if mode != "strong" or val.v != u:
            problems.append(("not a strong product", u))
        if not all(f in inter_V for f in fs):
            problems.append(("factor outside the intersection", u))
        for f in fs:
            for x in Sv.path_of(f):
                if x in used and used[x] != u:
                    problems.append(("shared irreducible", x))
                used[x] = u
    return not problems, problems
