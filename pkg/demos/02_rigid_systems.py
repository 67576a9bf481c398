# %% [markdown]
# Rigid systems on a square pyramid and on the unit 3-simplex: the graph
# behind a rigid set of column vectors, Y-rigidity, and Y-resolution.

# %%
from polykit import rigid
from polykit.columns import ColSet, col_divisibility
from polykit.lattice import make

pyr = make("pyr4")
C = ColSet(pyr)
u, v, w = (0, 0, -1), (1, 0, 0), (0, 1, 0)

S, why = rigid.check_rigid(C, [u, v, w])
print("{u, v, w}:", "rigid" if S else "rejected (%s)" % why[0])

# %% {u, u+w, v} is rigid; its graph has a vertex with two incoming edges
S = rigid.rigid_system(C, [u, (0, 1, -1), v])
print(S.graph.to_dot())
print("Y-rigid:", S.y_flag, " lambda-complexity:", rigid.lambda_complexity(S.graph))

# %% the pyramid is not Col-divisible, so y_resolve refuses it
rep = col_divisibility(C)
print("CD1 ok:", rep.cd1_ok, " CD2 ok:", rep.cd2_ok)

# %% on Delta_3 the diamond 0->1->3, 0->2->3 resolves
D3 = make("simplex(3,1)")
CD = ColSet(D3)
pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
e = lambda i, j: tuple(b - a for a, b in zip(pts[i], pts[j]))  # noqa: E731
trace = []
W = rigid.y_resolve(CD, [e(0, 1), e(1, 3), e(0, 2), e(2, 3)], trace)
print("complexity trace:", trace)
print("resolved generators:", sorted(W.irreducibles), "Y-rigid:", W.y_flag)

# %% k-decomposition over the trapezoid
T = make("P_trap")
CT = ColSet(T)
systems = [rigid.rigid_system(CT, [(0, -1), (-1, 0)]), rigid.rigid_system(CT, [(0, -1), (-1, -1)])]
K = rigid.k_decompose(T, systems, 3)
for x, fs in K.factorizations.items():
    print(x, "=", " * ".join(map(str, fs)))
print("verified:", rigid.verify_kdecomposition(K)[0])
