# %% [markdown]
# Canonical forms in the group generated by a rigid system, and a check
# that they separate group elements.

# %%
import random

from polykit import rigid, triangular
from polykit.autos import equals, evaluate
from polykit.columns import ColSet
from polykit.lattice import make
from polykit.rings import Integers, IntegersMod

P = make("P_trap")
S = rigid.rigid_system(ColSet(P), [(0, -1), (-1, 0)])
L = triangular.layer_partition(S)
print("layers:", {r: sorted(vs) for r, vs in L.upper.items()})

Z = Integers()
cf = triangular.canonicalize(L, [((-1, 0), 3), ((0, -1), 2)], Z)
print("e_v^3 e_u^2 =", cf.letters())

# %% over Z/3 every canonical form gives a different matrix
G = triangular.enumerate_group(L, 3)
print("|G(Z/3)| =", len(G))

# %% random words: canonical forms agree with matrix equality
R = IntegersMod(5)
rng = random.Random(0)
vs = sorted(S.closure)
hits = 0
for _ in range(200):
    a = [(rng.choice(vs), rng.randrange(1, 5)) for _ in range(4)]
    if rng.random() < 0.5:
        b = triangular.canonicalize(L, a, R).letters()
    else:
        b = [(rng.choice(vs), rng.randrange(1, 5)) for _ in range(4)]
    same = triangular.equals_in_G(L, a, b, R)
    assert same == equals(evaluate(P, a, R), evaluate(P, b, R))
    hits += same
print("equal pairs among 200:", hits)
