"""Lattice polytopes with exact facet data.

A polytope is stored by its vertices, its lattice points and its facets.
Every facet carries a primitive inner normal ``a`` and an offset ``b`` so
that the polytope is ``{x : a.x >= b for all facets}``.
"""

import itertools
import os
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import intlin
from .errors import DegenerateInput, ResourceBound, UnknownName

POINT_CEILING = int(os.environ.get("POLYKIT_POINT_CEILING", "4000000"))


class Facet(NamedTuple):
    normal: tuple
    offset: int

    def __call__(self, x, degree=0):
        return intlin.dot(self.normal, x) - degree * self.offset


class GradedPoint(NamedTuple):
    coords: tuple
    degree: int


@dataclass(frozen=True, eq=False)
class LatticePolytope:
    dim: int
    vertices: tuple
    lattice_points: tuple
    facets: tuple
    name: str = field(default=None, compare=False)

    def __eq__(self, other):
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return (self.dim, self.vertices, self.lattice_points, self.facets) == \
            (other.dim, other.vertices, other.lattice_points, other.facets)

    def __hash__(self):
        return hash((self.dim, self.vertices, self.facets))

    def __repr__(self):
        label = self.name or "polytope"
        return "<%s dim=%d |V|=%d |L|=%d |F|=%d>" % (
            label, self.dim, len(self.vertices), len(self.lattice_points),
            len(self.facets))

    @cached_property
    def point_index(self):
        return {x: i for i, x in enumerate(self.lattice_points)}

    @cached_property
    def point_set(self):
        return frozenset(self.lattice_points)

    @cached_property
    def facet_index(self):
        return {f: i for i, f in enumerate(self.facets)}

    def facet_points(self, fid):
        f = self.facets[fid]
        return tuple(x for x in self.lattice_points if f(x, 1) == 0)

    def off_facet_points(self, fid):
        f = self.facets[fid]
        return tuple(x for x in self.lattice_points if f(x, 1) > 0)

    def contains(self, x):
        return all(f(x, 1) >= 0 for f in self.facets)

    def find_facet(self, normal, offset=None):
        for i, f in enumerate(self.facets):
            if f.normal == tuple(normal) and (offset is None or f.offset == offset):
                return i
        raise KeyError("no facet with normal %r" % (normal,))

    def renamed(self, name):
        return LatticePolytope(self.dim, self.vertices, self.lattice_points,
                               self.facets, name)

    def to_json(self):
        return {
            "name": self.name,
            "dim": self.dim,
            "vertices": [list(v) for v in self.vertices],
            "facets": [{"normal": list(f.normal), "offset": f.offset}
                       for f in self.facets],
            "lattice_points": [list(x) for x in self.lattice_points],
        }


def pairing(P, fid, z):
    """Height of a graded point (or a plain vector, degree 0) over a facet."""
    if isinstance(z, GradedPoint) or (len(z) == 2 and isinstance(z[0], (tuple, list))):
        coords, degree = tuple(z[0]), z[1]
    else:
        coords, degree = tuple(z), 0
    return P.facets[fid](coords, degree)


# -- construction -----------------------------------------------------------

def _hull_2d(points):
    """Counter-clockwise strictly convex vertex list (monotone chain)."""
    pts = sorted(set(points))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _facets_2d(points):
    ring = _hull_2d(points)
    out = []
    for a, b in zip(ring, ring[1:] + ring[:1]):
        d = intlin.sub(b, a)
        normal = intlin.primitive((-d[1], d[0]))
        out.append(Facet(normal, intlin.dot(normal, a)))
    return out


def _facets_nd(points, n):
    """Exhaustive supporting hyperplanes through n-subsets of the points."""
    pts = sorted(set(points))
    arr = np.array(pts, dtype=object)
    found, seen = {}, set()
    for sub in itertools.combinations(range(len(pts)), n):
        base = pts[sub[0]]
        rows = [intlin.sub(pts[j], base) for j in sub[1:]]
        normal = intlin.normal_of(rows)
        if not any(normal):
            continue
        normal = intlin.primitive(normal)
        b = intlin.dot(normal, base)
        if (normal, b) in seen:
            continue
        seen.add((normal, b))
        seen.add((intlin.neg(normal), -b))
        vals = arr.dot(np.array(normal, dtype=object))
        lo, hi = min(vals), max(vals)
        if lo == b:
            found[normal, b] = Facet(normal, b)
        elif hi == b:
            nn = intlin.neg(normal)
            found[nn, -b] = Facet(nn, -b)
    return list(found.values())


def _vertices(points, facets, n):
    out = []
    for p in sorted(set(points)):
        active = [f.normal for f in facets if f(p, 1) == 0]
        if len(active) >= n and intlin.rank(active) == n:
            out.append(p)
    return out


def _box_points(vertices, facets, n):
    lo = [min(v[i] for v in vertices) for i in range(n)]
    hi = [max(v[i] for v in vertices) for i in range(n)]
    total = 1
    for a, b in zip(lo, hi):
        total *= b - a + 1
    if total > POINT_CEILING:
        raise ResourceBound("bounding box has %d points" % total)
    A = np.array([f.normal for f in facets], dtype=np.int64)
    bvec = np.array([f.offset for f in facets], dtype=np.int64)
    grids = np.meshgrid(*[np.arange(a, b + 1, dtype=np.int64)
                          for a, b in zip(lo, hi)], indexing="ij")
    cand = np.stack([g.ravel() for g in grids], axis=1)
    keep = np.all(cand @ A.T >= bvec, axis=1)
    pts = [tuple(int(c) for c in row) for row in cand[keep]]
    pts.sort()
    return pts


def from_hrep(points, facets, n, name=None):
    """Assemble a polytope from generating points and its complete facet list."""
    facets = sorted(set(facets))
    verts = _vertices(points, facets, n)
    lat = _box_points(verts, facets, n)
    return LatticePolytope(n, tuple(verts), tuple(lat), tuple(facets), name)


def _full_dim(points, n, name):
    if n == 1:
        lo, hi = min(p[0] for p in points), max(p[0] for p in points)
        facets = [Facet((1,), lo), Facet((-1,), -hi)]
        pts = [(lo,), (hi,)]
    elif n == 2:
        facets = _facets_2d(points)
        pts = points
    else:
        facets = _facets_nd(points, n)
        pts = points
    return from_hrep(pts, facets, n, name)


def hull(points, name=None):
    """Normalized lattice polytope spanned by integer points.

    If the points are not full-dimensional, or their lattice points only
    span a sublattice, coordinates are re-based on the lattice generated by
    differences of lattice points, with the lexicographically first lattice
    point as origin.  Otherwise coordinates are kept as given.
    """
    pts = sorted(set(tuple(int(c) for c in p) for p in points))
    if not pts:
        raise DegenerateInput("empty point set")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DegenerateInput("points of different arities")
    p0 = pts[0]
    diffs = [intlin.sub(p, p0) for p in pts[1:]]
    r = intlin.rank(diffs) if diffs else 0
    if r == 0:
        raise DegenerateInput("affine span is a point")
    rebased = False
    if r < d:
        # saturated lattice of the affine span
        comp = intlin.integer_kernel(diffs, d)
        basis = intlin.integer_kernel(comp, d) if comp else None
        basis = intlin.lattice_basis(basis, d)
        pts = [intlin.solve_int(basis, intlin.sub(p, p0)) for p in pts]
        if any(c is None for c in pts):
            raise DegenerateInput("could not re-base onto the affine span")
        rebased = True
    P = _full_dim(pts, r, name)
    L = P.lattice_points
    gen = intlin.lattice_basis([intlin.sub(x, L[0]) for x in L[1:]], r)
    if abs(intlin.det(gen)) != 1 or rebased:
        o = L[0]
        coords = [intlin.solve_int(gen, intlin.sub(p, o)) for p in pts]
        if any(c is None for c in coords):
            raise DegenerateInput("re-basing failed")
        P = _full_dim(coords, r, name)
    return P


# -- corpus -------------------------------------------------------------------

def simplex(n, c=1):
    pts = [tuple([0] * n)]
    for i in range(n):
        e = [0] * n
        e[i] = c
        pts.append(tuple(e))
    return hull(pts, "simplex(%d,%d)" % (n, c))


def segment(c):
    return hull([(0,), (c,)], "segment(%d)" % c)


_NAMED = {
    "square": [(0, 0), (1, 0), (0, 1), (1, 1)],
    "P_fig1": [(0, 0), (5, 0), (5, 2), (4, 3), (2, 3), (1, 2)],
    "P_trap": [(0, 0), (3, 0), (3, 2), (2, 2)],
    "pyr4": [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)],
    "P_nonrig": [(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 1)],
}

CORPUS_NAMES = ("simplex(n,c)", "square", "P_fig1", "P_trap", "pyr4",
                "P_nonrig", "segment(c)")


def make(name, *params):
    """Named corpus member.  ``make("simplex(2,1)")`` and
    ``make("simplex", 2, 1)`` are equivalent."""
    m = re.fullmatch(r"\s*(\w+)\s*\(([-\d,\s]*)\)\s*", name)
    if m:
        name = m.group(1)
        params = tuple(int(t) for t in m.group(2).split(",") if t.strip())
    name = name.strip()
    if name == "simplex":
        if not 1 <= len(params) <= 2 or params[0] < 1:
            raise UnknownName("simplex needs (n) or (n, c)")
        return simplex(*params)
    if name == "segment":
        if len(params) != 1 or params[0] < 1:
            raise UnknownName("segment needs (c)")
        return segment(params[0])
    if name in _NAMED and not params:
        return hull(_NAMED[name], name)
    raise UnknownName(name)


# -- integral-affine utilities ---------------------------------------------------

@dataclass(frozen=True)
class AffineMap:
    matrix: tuple
    shift: tuple

    def __call__(self, x):
        return tuple(intlin.dot(row, x) + s for row, s in zip(self.matrix, self.shift))


def _frame(vertices, n):
    """Greedy lexicographic affinely independent (n+1)-tuple."""
    frame = [vertices[0]]
    for v in vertices[1:]:
        rows = [intlin.sub(w, frame[0]) for w in frame[1:]] + [intlin.sub(v, frame[0])]
        if intlin.rank(rows) == len(rows):
            frame.append(v)
            if len(frame) == n + 1:
                break
    return frame


def are_integrally_affinely_equivalent(P, Q):
    """A unimodular affine map taking P onto Q, or None."""
    if P.dim != Q.dim or len(P.vertices) != len(Q.vertices) \
            or len(P.lattice_points) != len(Q.lattice_points) \
            or len(P.facets) != len(Q.facets):
        return None
    n = P.dim
    frame = _frame(list(P.vertices), n)
    D = [intlin.sub(v, frame[0]) for v in frame[1:]]      # rows
    Dinv = intlin.mat_inverse([list(c) for c in zip(*D)])  # inverse of columns
    qverts = set(Q.vertices)
    for image in itertools.permutations(Q.vertices, n + 1):
        E = [intlin.sub(w, image[0]) for w in image[1:]]
        A = intlin.matmul([list(c) for c in zip(*E)], Dinv)
        if any(x.denominator != 1 for row in A for x in row):
            continue
        A = tuple(tuple(int(x) for x in row) for row in A)
        if abs(intlin.det(A)) != 1:
            continue
        t = intlin.sub(image[0], tuple(intlin.dot(r, frame[0]) for r in A))
        f = AffineMap(A, t)
        if {f(v) for v in P.vertices} == qverts:
            return f
    return None


def is_normal_up_to(P, d, ceiling=200000):
    """Every lattice point of kP is a sum of k lattice points of P, k <= d."""
    L = P.lattice_points
    sums = set(L)
    for k in range(2, d + 1):
        sums = {intlin.add(s, x) for s in sums for x in L}
        if len(sums) > ceiling:
            raise ResourceBound("degree-%d sums exceed %d" % (k, ceiling))
        kfacets = [Facet(f.normal, k * f.offset) for f in P.facets]
        kverts = [intlin.scale(k, v) for v in P.vertices]
        target = _box_points(kverts, kfacets, P.dim)
        if len(target) > ceiling:
            raise ResourceBound("degree-%d point count exceeds %d" % (k, ceiling))
        if set(target) != sums:
            return False
    return True
