"""Doubling a polytope along a facet, and fair doubling spectra.

Coordinates.  Let F be the facet ``a.x >= b`` and fix g in Z^n with
``a.g = 1``.  The rotated copy of P is the image of

    phi(x) = (x - h(x) g, h(x)),      h(x) = a.x - b,

so ``phi`` fixes F pointwise and lands in the hyperplane ``a.y = b``.
The doubled polytope is ``Q = conv(P x 0, phi(P))`` with facets

    P^-     : t >= 0
    P^|     : a.y >= b
    Psi(G)  : G.y + (G.g) t >= b_G      (G != F)

and delta^+ = (-g, 1).
"""

import os
from collections import deque
from dataclasses import dataclass, field

from . import intlin
from .columns import ColSet, ColumnVector, base_facet
from .errors import EmptyColumnSet, NotLiftable, ResourceBound, ValidationFailure
from .lattice import Facet, from_hrep


def dim_ceiling():
    return int(os.environ.get("POLYKIT_DIM_CEILING", "8"))


def embed(v, n):
    """Zero-pad a vector (or point) into Z^n."""
    v = tuple(v)
    return v + (0,) * (n - len(v))


@dataclass
class DoubledPolytope:
    Q: object
    parent: object
    doubled_facet: int
    psi: dict              # facet id of P (or "P") -> facet id of Q
    delta_plus: ColumnVector
    delta_minus: ColumnVector
    g: tuple

    @property
    def facet(self):
        return self.parent.facets[self.doubled_facet]

    def height(self, x):
        return self.facet(x, 1)

    def phi(self, x):
        h = self.height(x)
        return intlin.sub(x, intlin.scale(h, self.g)) + (h,)

    def phi_lin(self, v):
        h = intlin.dot(self.facet.normal, v)
        return intlin.sub(v, intlin.scale(h, self.g)) + (h,)

    def lower(self, z):
        """z^- : the copy of z in P x 0."""
        return tuple(z) + (0,)

    def lift(self, obj):
        """z^| for a lattice point off F, or v^| for a column vector."""
        if isinstance(obj, ColumnVector):
            w = self.phi_lin(obj.v)
            b = base_facet(self.Q, w)
            if b is None:
                raise ValidationFailure("lift of %r is not a column vector" % (obj.v,))
            return ColumnVector(w, b)
        x = tuple(obj)
        if x not in self.parent.point_set:
            raise NotLiftable("%r is not a lattice point of the parent" % (x,))
        if self.height(x) == 0:
            raise NotLiftable("%r lies on the doubled facet" % (x,))
        return self.phi(x)

    def to_json(self):
        return {
            "dim": self.Q.dim,
            "doubled_facet": self.doubled_facet,
            "g": list(self.g),
            "convention": "phi(x) = (x - h(x) g, h(x)), h(x) = <F,x> - b_F",
            "psi": {str(k): v for k, v in self.psi.items()},
            "delta_plus": list(self.delta_plus.v),
            "delta_minus": list(self.delta_minus.v),
            "Q": self.Q.to_json(),
        }


def double(P, fid):
    n = P.dim
    F = P.facets[fid]
    g = intlin.unit_preimage(F.normal)
    facets = {"P": Facet(tuple([0] * n) + (1,), 0)}
    for i, G in enumerate(P.facets):
        if i == fid:
            facets[i] = Facet(G.normal + (0,), G.offset)
        else:
            facets[i] = Facet(G.normal + (intlin.dot(G.normal, g),), G.offset)
    gens = [x + (0,) for x in P.vertices]
    for x in P.vertices:
        h = F(x, 1)
        gens.append(intlin.sub(x, intlin.scale(h, g)) + (h,))
    Q = from_hrep(gens, facets.values(), n + 1,
                  name="%s|%d" % (P.name or "P", fid))
    psi = {k: Q.facet_index[f] for k, f in facets.items()}
    dp = ColumnVector(intlin.neg(g) + (1,), psi[fid])
    dm = ColumnVector(g + (-1,), psi["P"])
    D = DoubledPolytope(Q, P, fid, psi, dp, dm, g)
    _verify_construction(D)
    return D


def _verify_construction(D):
    Q, P = D.Q, D.parent
    n = P.dim
    # every listed facet supports Q in a codimension-one face
    for f in Q.facets:
        on = [x for x in Q.lattice_points if f(x, 1) == 0]
        if any(f(x, 1) < 0 for x in Q.lattice_points) or len(on) < n + 1 or \
                intlin.rank([intlin.sub(x, on[0]) for x in on[1:]]) != n:
            raise ValidationFailure("facet %r of the doubling is not a facet" % (f,))
    L = Q.lattice_points
    gen = intlin.lattice_basis([intlin.sub(x, L[0]) for x in L[1:]], n + 1)
    if abs(intlin.det(gen)) != 1:
        raise ValidationFailure("lattice points of the doubling do not span Z^(n+1)")
    if base_facet(Q, D.delta_plus.v) != D.delta_plus.base or \
            base_facet(Q, D.delta_minus.v) != D.delta_minus.base:
        raise ValidationFailure("delta vectors are not column vectors")


def identities(D):
    """Facet identities of the doubling construction; returns a dict of booleans."""
    Q, P = D.Q, D.parent
    n = P.dim
    fq = Q.facets
    dp, dm = D.delta_plus.v, D.delta_minus.v
    out = {}
    out["psi_G_kills_delta"] = all(
        intlin.dot(fq[D.psi[i]].normal, dp) == 0 and intlin.dot(fq[D.psi[i]].normal, dm) == 0
        for i in range(len(P.facets)) if i != D.doubled_facet)
    out["delta_pairs_one"] = (intlin.dot(fq[D.psi["P"]].normal, dp) == 1 and
                              intlin.dot(fq[D.psi[D.doubled_facet]].normal, dm) == 1)
    out["delta_minus_is_negative"] = dm == intlin.neg(dp) and D.delta_minus.base == D.psi["P"]
    samples = [intlin.sub(y, x) for x in P.lattice_points for y in P.lattice_points]
    out["psi_preserves_heights"] = all(
        P.facets[i](z) == fq[D.psi[i]](z + (0,))
        for i in range(len(P.facets)) for z in samples)
    out["psi_bijective"] = sorted(D.psi.values()) == list(range(len(fq)))
    return out


def lemma_checks(D, C=None, CQ=None):
    """Column-vector statements about a doubling; returns a dict of booleans."""
    P, Q = D.parent, D.Q
    C = C or ColSet(P)
    CQ = CQ or ColSet(Q)
    n = P.dim
    out = {}
    out["col_embeds"] = all(c.v + (0,) in CQ for c in C)
    lows = {c.v + (0,) for c in C}
    lifts = {D.phi_lin(c.v) for c in C}
    union = lows | lifts | {D.delta_plus.v, D.delta_minus.v}
    out["col_contains_union"] = all(v in CQ for v in union)
    out["col_equals_union"] = set(c.v for c in CQ) == union
    dec = True
    for c in C:
        if c.base != D.doubled_facet:
            continue
        low, up = c.v + (0,), D.phi_lin(c.v)
        p1 = CQ.product(D.delta_plus.v, up)
        p2 = CQ.product(D.delta_minus.v, low)
        dec &= p1 is not None and p1.v == low and p2 is not None and p2.v == up
    out["decomposition"] = dec
    return out


class DoublingSpectrum:
    """Lazily extended chain of doublings with a FIFO fairness schedule."""

    def __init__(self, base, horizon=0):
        self.base = base
        self.stages = [base]
        self.colsets = [ColSet(base)]
        if not len(self.colsets[0]):
            raise EmptyColumnSet("Col(P) is empty; nothing to double along")
        self.doublings = []
        self.queue = deque(c.v for c in self.colsets[0])
        self.introduced = {c.v: 0 for c in self.colsets[0]}
        self.ledger = {}          # vector (as introduced) -> decomposition steps
        self.steps = []           # (step, vector, facet id)
        self.extend_to(horizon)

    @property
    def horizon(self):
        return len(self.stages) - 1

    def extend_to(self, j):
        while self.horizon < j:
            self._step()

    def _step(self):
        i = self.horizon
        P, C = self.stages[i], self.colsets[i]
        if P.dim + 1 > dim_ceiling():
            raise ResourceBound("stage %d would exceed dimension ceiling %d"
                                % (i + 1, dim_ceiling()))
        v = self.queue.popleft()
        w = embed(v, P.dim)
        fid = C.base(w)
        D = double(P, fid)
        CQ = ColSet(D.Q)
        old = {c.v + (0,) for c in C}
        if not old <= set(c.v for c in CQ):
            raise ValidationFailure("Col(P_i) is not contained in Col(P_i+1)")
        self.doublings.append(D)
        self.stages.append(D.Q)
        self.colsets.append(CQ)
        self.ledger.setdefault(v, []).append(i)
        self.steps.append((i, v, fid))
        self.queue.append(v)
        for c in CQ:
            if c.v not in old and c.v not in self.introduced:
                self.introduced[c.v] = i + 1
                self.queue.append(c.v)

    def first_decomposed(self, v):
        steps = self.ledger.get(tuple(v))
        return steps[0] if steps else None

    def to_json(self):
        return {
            "stages": [{"stage": k, "dim": S.dim, "n_points": len(S.lattice_points),
                        "n_columns": len(self.colsets[k])}
                       for k, S in enumerate(self.stages)],
            "steps": [{"step": i, "vector": list(v), "facet": f,
                       "delta_plus": list(self.doublings[i].delta_plus.v)}
                      for i, v, f in self.steps],
            "ledger": [{"vector": list(v), "introduced": self.introduced[v],
                        "decomposed_at": self.ledger.get(v, [])}
                       for v in sorted(self.introduced)],
        }


def spectrum(P, horizon):
    return DoublingSpectrum(P, horizon)


def stage_of(S, j):
    S.extend_to(j)
    return S.stages[j]
