"""Formal Steinberg words x_v^lam and relation-aware rewriting."""

from dataclasses import dataclass

from . import autos, intlin
from .columns import ColSet
from .doubling import embed
from .errors import SchemaError, StageTooSmall, ValidationFailure
from .rings import make_ring
from .triangular import canonicalize, layer_partition

REWRITE_CAP = 10000


@dataclass
class SteinbergWord:
    letters: list           # [(v, coefficient)]
    ring: object
    stage: int = 0

    def __len__(self):
        return len(self.letters)

    def inverse(self):
        R = self.ring
        return SteinbergWord([(v, R.neg(c)) for v, c in reversed(self.letters)], R, self.stage)

    def __mul__(self, other):
        return SteinbergWord(self.letters + other.letters, self.ring,
                             max(self.stage, other.stage))

    def to_json(self):
        return {"ring": self.ring.spec(), "stage": self.stage,
                "letters": [{"v": list(v), "coef": self.ring.fmt(c)} for v, c in self.letters]}


def word(letters, ring, stage=0):
    R = make_ring(ring)
    return SteinbergWord([(tuple(v), R.norm(c)) for v, c in letters], R, stage)


def parse_word(obj):
    try:
        R = make_ring(obj.get("ring", "z"))
        letters = [(tuple(int(a) for a in x["v"]), R.parse(x["coef"])) for x in obj["letters"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError("bad word JSON: %s" % exc)
    return SteinbergWord(letters, R, int(obj.get("stage", 0)))


def commutator_word(u, lam, v, mu, ring):
    R = make_ring(ring)
    return word([(u, lam), (v, mu), (u, R.neg(lam)), (v, R.neg(mu))], R)


def _order_key(C, v):
    return (v, C.base(v) if C is not None else 0)


def _free(letters, R):
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


def _bracket(C, u, v):
    """(z, k) with [x_u^a, x_v^b] = x_z^{k a b}; None for the trivial case;
    False when no defining relation applies."""
    s = autos.sign()
    if C.product(u, v) is not None:
        return intlin.add(u, v), s
    if C.product(v, u) is not None:
        return intlin.add(u, v), -s
    z = intlin.add(u, v)
    if any(z) and z not in C:
        return None
    return False


def reduce(w, level="free", C=None, cap=REWRITE_CAP):
    """Free or relational normalization.  The relational pass sorts adjacent
    letters by a fixed vector order, applying the commutator relation; it is
    a heuristic outside triangular subgroups and stops after ``cap`` moves."""
    R = w.ring
    letters = _free(w.letters, R)
    if level == "free":
        return SteinbergWord(letters, R, w.stage)
    if C is None:
        raise ValidationFailure("relational reduction needs the column set of a stage")
    n = C.polytope.dim
    letters = [(embed(v, n), c) for v, c in letters]
    moves = 0
    changed = True
    while changed and moves < cap:
        changed = False
        for i in range(len(letters) - 1):
            (u, a), (v, b) = letters[i], letters[i + 1]
            if _order_key(C, u) <= _order_key(C, v):
                continue
            br = _bracket(C, u, v)
            if br is False:
                continue
            # x_u^a x_v^b = x_v^b x_u^a [x_u^-a, x_v^-b]
            new = [(v, b), (u, a)]
            if br is not None:
                z, k = br
                new.append((z, R.mul(R.from_int(k), R.mul(a, b))))
            letters = _free(letters[:i] + new + letters[i + 2:], R)
            moves += 1
            changed = True
            break
    return SteinbergWord(letters, R, w.stage)


def evaluate(w, R, P, C=None):
    R = make_ring(R)
    n = P.dim
    C = C or ColSet(P)
    letters = []
    for v, c in w.letters:
        if len(v) > n:
            raise StageTooSmall("vector %r does not fit in dimension %d" % (v, n))
        v = embed(v, n)
        if v not in C:
            raise ValidationFailure("%r is not a column vector at this stage" % (v,))
        letters.append((v, R.norm(c)))
    return autos.evaluate(P, letters, R)


def canonicalize_formal(w, S, R):
    """Canonical form computed from the relations alone (no matrices)."""
    letters = w.letters if isinstance(w, SteinbergWord) else w
    return canonicalize(layer_partition(S), letters, make_ring(R), mode="formal", verify=False)


def k2_screen(w, R, stages):
    """Per-stage identity test plus relational triviality.  A word that is the
    identity on every tested stage but does not reduce to the empty word is
    flagged as a candidate; nothing is claimed about St itself."""
    R = make_ring(R)
    verdicts = []
    last = None
    for P in stages:
        C = ColSet(P)
        try:
            verdict = evaluate(w, R, P, C).is_identity()
            last = C
        except (StageTooSmall, ValidationFailure):
            verdict = None
        verdicts.append({"dim": P.dim, "name": P.name, "identity": verdict})
    trivial = len(reduce(w, "relational", last).letters) == 0 if last is not None else None
    tested = [v["identity"] for v in verdicts if v["identity"] is not None]
    all_id = bool(tested) and all(tested)
    return {"stages": verdicts,
            "evaluates_to_identity_on_stages": all_id,
            "freely_trivial": trivial,
            "k2_candidate": all_id and trivial is False}
