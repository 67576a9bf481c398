from collections import Counter

import pytest

from polykit import polygons as Pg
from polykit.columns import ColSet, is_balanced
from polykit.errors import DegenerateInput, DimensionMismatch, NoColumns, NotBalanced
from polykit.lattice import hull, make


def test_fans():
    f = Pg.normal_fan(make("simplex(2,1)"))
    assert len(f.cones) == 3 and all(len(c) == 2 for c in f.cones)
    f = Pg.normal_fan(make("square"))
    assert {frozenset(c) for c in f.cones} == {
        frozenset({(1, 0), (0, 1)}), frozenset({(-1, 0), (0, 1)}),
        frozenset({(1, 0), (0, -1)}), frozenset({(-1, 0), (0, -1)})}
    f = Pg.normal_fan(make("P_trap"))
    assert len(f.cones) == 4 and frozenset({(0, 1), (1, -1)}) in f.cones


def test_projective_equivalence(trap):
    assert Pg.projectively_equivalent(trap, hull([tuple(2 * a for a in v) for v in trap.vertices]))
    assert not Pg.projectively_equivalent(make("simplex(2,1)"), make("square"))
    # stretch the bottom edge: same normals
    stretched = hull([(0, 0), (5, 0), (5, 2), (2, 2)])
    assert Pg.projectively_equivalent(trap, stretched)
    with pytest.raises(DimensionMismatch):
        Pg.projectively_equivalent(trap, make("pyr4"))


def test_classify_examples(trap):
    c = Pg.classify(make("simplex(2,2)"))
    assert (c.tag, c.params, c.group_shape) == ("a", {"c": 2}, "E_a")
    c = Pg.classify(trap)
    assert (c.tag, c.group_shape) == ("b", "E_b")
    c = Pg.classify(make("square"))
    assert (c.tag, c.group_shape) == ("e", "E_e")
    assert Pg.classify(make("simplex(2,1)")).params == {"c": 1}
    js = c.to_json()
    assert set(js) == {"class", "params", "col_summary", "group_shape", "group_blocks", "citations"}


def test_classify_errors():
    with pytest.raises(NotBalanced):
        Pg.classify(hull([(0, 0), (1, 0), (0, 3)]))
    with pytest.raises(NoColumns):
        Pg.classify(hull([(0, 0), (0, 1), (1, 0), (1, 2), (2, 1)]))
    with pytest.raises(DegenerateInput):
        Pg.classify(make("pyr4"))


def test_invariant_under_projective_equivalence():
    for name in ("simplex(2,1)", "square", "P_trap"):
        P = make(name)
        for k in (2, 3):
            Q = hull([tuple(k * a for a in v) for v in P.vertices])
            assert Pg.classify(Q).tag == Pg.classify(P).tag


def test_class_d_single_base():
    # one base edge iff every column vector pairs to -1 with the same facet
    for vs in Pg.lattice_polygons(2):
        P = hull(list(vs))
        C = ColSet(P)
        if not len(C) or not is_balanced(C)[0]:
            continue
        single = len({C.base(c.v) for c in C}) == 1
        assert (Pg.classify(P, C).tag == "d") == single


def test_sweep_small():
    # every balanced polygon with columns in [0,2]^2 lands in exactly one class
    tags = Counter()
    for vs in Pg.lattice_polygons(2):
        P = hull(list(vs))
        C = ColSet(P)
        if len(C) and is_balanced(C)[0]:
            tags[Pg.classify(P, C).tag] += 1
    assert set(tags) <= set("abcdef") and tags["a"] >= 1


def test_enumeration_counts():
    # [DERIVED] translation classes of lattice polygons in [0,N]^2 (brute-force hull scan)
    import itertools
    for N in (1, 2):
        pts = [(x, y) for x in range(N + 1) for y in range(N + 1)]
        brute = set()
        for r in range(3, len(pts) + 1):
            for sub in itertools.combinations(pts, r):
                h = Pg._hull_vertices(sub)
                if len(h) >= 3:
                    brute.add(Pg._translate(h))
        assert len(Pg.lattice_polygons(N, symmetric=False)) == len(brute)
