# %% [markdown]
# Column vectors of a small trapezoid, its elementary automorphisms, and
# what happens to the column set after one doubling.

# %%
from polykit.autos import commutator, elementary, equals
from polykit.columns import ColSet, is_balanced
from polykit.doubling import double, spectrum
from polykit.lattice import make
from polykit.rings import Polynomials

P = make("P_trap")
print(P, P.vertices)
C = ColSet(P)
for c in C:
    print("column", c.v, "base facet", P.facets[c.base])

# %% products: uv exists when u+v is a column vector on the base facet of u
for u in C:
    for v in C:
        w = C.product(u.v, v.v)
        if w is not None:
            print(u.v, "*", v.v, "=", w.v)
print("balanced:", is_balanced(C)[0])

# %% the commutator of two elementary maps, symbolically
R = Polynomials(("lam", "mu"))
lam, mu = R.gens
u, v = (0, -1), (-1, 0)
lhs = commutator(elementary(P, u, lam, R), elementary(P, v, mu, R))
rhs = elementary(P, (-1, -1), -lam * mu, R)
print("[e_u^lam, e_v^mu] == e_w^(-lam mu):", equals(lhs, rhs))

# %% doubling along the bottom edge
D = double(P, C.base(u))
CQ = ColSet(D.Q)
print("doubled polytope:", D.Q, "with", len(CQ), "column vectors")
print("delta+ =", D.delta_plus.v, " delta- =", D.delta_minus.v)

# %% a few steps of the fair spectrum
S = spectrum(P, 4)
for step, vec, fid in S.steps:
    print("step", step, "doubles along the base of", vec, "-> dim", S.stages[step + 1].dim)
