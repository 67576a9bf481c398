"""Exact commutative coefficient rings.

Elements are plain python values (int, Fraction, sympy PolyElement); the
ring object supplies normalization, parsing and formatting.
"""

from fractions import Fraction

from sympy import ZZ, sympify
from sympy.polys.rings import ring as poly_ring

from .errors import ResourceBound, SchemaError

MAX_VARS = 4
MAX_DEGREE = 8


class CoefficientRing:
    kind = None

    def norm(self, x):
        return x

    def zero(self):
        return self.norm(0)

    def one(self):
        return self.norm(1)

    def add(self, a, b):
        return self.norm(a + b)

    def mul(self, a, b):
        return self.norm(a * b)

    def neg(self, a):
        return self.norm(-a)

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return self.norm(n)

    def binom_pow(self, c, lam, k):
        return self.norm(c * lam ** k)

    def __eq__(self, other):
        return type(self) is type(other) and self.spec() == other.spec()

    def __hash__(self):
        return hash(str(self.spec()))

    def __repr__(self):
        return "<ring %s>" % (self.spec(),)


class Integers(CoefficientRing):
    kind = "integers"

    def norm(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError("%s is not an integer" % x)
            x = x.numerator
        return int(x)

    def parse(self, s):
        return self.norm(int(str(s)))

    def fmt(self, x):
        return str(x)

    def spec(self):
        return {"kind": self.kind}


class Rationals(CoefficientRing):
    kind = "rationals"

    def norm(self, x):
        return Fraction(x)

    def parse(self, s):
        return Fraction(str(s))

    def fmt(self, x):
        return str(x)

    def spec(self):
        return {"kind": self.kind}


class IntegersMod(CoefficientRing):
    kind = "integers-mod-m"

    def __init__(self, m):
        if m < 2:
            raise ValueError("modulus must be >= 2")
        self.m = m

    def norm(self, x):
        return int(x) % self.m

    def parse(self, s):
        return self.norm(int(str(s)))

    def fmt(self, x):
        return str(x)

    def binom_pow(self, c, lam, k):
        return c * pow(lam, k, self.m) % self.m

    def spec(self):
        return {"kind": self.kind, "m": self.m}


class Polynomials(CoefficientRing):
    """Z[x_1, ..., x_k], k <= 4.  The total-degree cap is enforced on
    inputs and on reported results, not on intermediate products."""

    kind = "polynomials"

    def __init__(self, names=("lam", "mu")):
        names = tuple(names)
        if not 1 <= len(names) <= MAX_VARS:
            raise ResourceBound("at most %d variables" % MAX_VARS)
        self.names = names
        self.R, *self.gens = poly_ring(",".join(names), ZZ)

    def norm(self, x):
        return self.R(x)

    def var(self, name):
        return self.gens[self.names.index(name)]

    def degree(self, x):
        x = self.R(x)
        return max((sum(m) for m in x.monoms()), default=0) if x else 0

    def check(self, x):
        if self.degree(x) > MAX_DEGREE:
            raise ResourceBound("total degree %d exceeds %d" % (self.degree(x), MAX_DEGREE))
        return x

    def parse(self, s):
        if isinstance(s, list):
            x = self.R.zero
            for c, exps in s:
                term = self.R(int(c))
                for g, e in zip(self.gens, exps):
                    term *= g ** int(e)
                x += term
            return self.check(x)
        try:
            return self.check(self.R.from_expr(sympify(str(s))))
        except (ValueError, TypeError, AttributeError) as exc:
            raise SchemaError("cannot parse polynomial %r: %s" % (s, exc))

    def fmt(self, x):
        return [[int(c), list(m)] for m, c in sorted(self.R(x).terms())]

    def evaluate(self, x, values, target):
        """Substitute ring elements of ``target`` for the variables."""
        out = target.zero()
        for m, c in self.R(x).terms():
            t = target.from_int(int(c))
            for val, e in zip(values, m):
                for _ in range(e):
                    t = target.mul(t, val)
            out = target.add(out, t)
        return out

    def spec(self):
        return {"kind": self.kind, "vars": list(self.names)}


def make_ring(spec):
    """Build a ring from a JSON-style spec or a short string."""
    if isinstance(spec, CoefficientRing):
        return spec
    if isinstance(spec, str):
        s = spec.strip().lower()
        if s in ("z", "zz", "int", "integers"):
            return Integers()
        if s in ("q", "qq", "rationals"):
            return Rationals()
        if s in ("poly", "polynomials"):
            return Polynomials()
        for prefix in ("z/", "zmod", "mod"):
            if s.startswith(prefix):
                return IntegersMod(int(s[len(prefix):]))
        raise SchemaError("unknown ring %r" % spec)
    kind = spec.get("kind")
    if kind == "integers":
        return Integers()
    if kind == "rationals":
        return Rationals()
    if kind == "integers-mod-m":
        return IntegersMod(int(spec["m"]))
    if kind == "polynomials":
        return Polynomials(spec.get("vars", ("lam", "mu")))
    raise SchemaError("unknown ring kind %r" % kind)
