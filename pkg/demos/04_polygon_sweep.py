# %% [markdown]
# Every lattice polygon in [0,4]^2 (up to translation and the symmetries of
# the square): which are balanced, and which class each balanced one with
# column vectors falls into.  Takes about ten seconds.

# %%
import time
from collections import Counter

import numpy as np

from polykit.columns import ColSet, is_balanced, is_col_divisible
from polykit.lattice import hull, make
from polykit.polygons import classify, lattice_polygons, normal_fan

t = time.time()
polys = [hull(list(vs)) for vs in lattice_polygons(4)]
print(len(polys), "polygons in %.1fs" % (time.time() - t))

# %%
tags = Counter()
sizes = []
for P in polys:
    C = ColSet(P)
    if not is_balanced(C)[0]:
        tags["unbalanced"] += 1
    elif not len(C):
        tags["no columns"] += 1
    else:
        assert is_col_divisible(C)
        tags[classify(P, C).tag] += 1
        sizes.append(len(C))
print(dict(sorted(tags.items())))
print("column count histogram:", np.bincount(sizes))

# %% one representative per class
seen = {}
for P in polys:
    C = ColSet(P)
    if len(C) and is_balanced(C)[0]:
        seen.setdefault(classify(P, C).tag, P)
for tag, P in sorted(seen.items()):
    print(tag, P.vertices, classify(P).group_shape)

# %% dilation keeps the normal fan
sq = make("square")
print(normal_fan(sq) == normal_fan(hull([(0, 0), (3, 0), (0, 3), (3, 3)])))
