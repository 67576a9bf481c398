import pytest

import oracles
from polykit.columns import ColSet
from polykit.doubling import (DoublingSpectrum, double, embed, identities, lemma_checks,
                              spectrum, stage_of)
from polykit.errors import NotLiftable, ResourceBound
from polykit.lattice import are_integrally_affinely_equivalent, hull, make, segment, simplex

CASES = [("P_trap", f) for f in range(4)] + [("pyr4", 0), ("pyr4", 4), ("P_nonrig", 0),
                                             ("square", 1), ("simplex(2,2)", 2), ("P_fig1", 0)]


@pytest.mark.parametrize("name,fid", CASES)
def test_identities(name, fid):
    D = double(make(name), fid)
    assert all(identities(D).values())


@pytest.mark.parametrize("name,fid", CASES)
def test_facets_match_oracle_hull(name, fid):
    D = double(make(name), fid)
    vs = [list(v) for v in D.Q.vertices]
    assert sorted((f.normal, f.offset) for f in D.Q.facets) == oracles.facets(vs)
    assert D.Q == hull(D.Q.vertices)


@pytest.mark.parametrize("name,fid", CASES)
def test_lemma_checks(name, fid):
    r = lemma_checks(double(make(name), fid))
    assert r["col_embeds"] and r["col_contains_union"] and r["decomposition"]
    # equality needs balancedness
    assert r["col_equals_union"] == (name != "P_nonrig")


def test_trap_bottom(trap):
    D = double(trap, 2)
    assert D.Q.dim == 3
    u = ColSet(trap)[(0, -1)]
    up = D.lift(u)
    CQ = ColSet(D.Q)
    assert CQ.product(D.delta_plus.v, up.v).v == (0, -1, 0)
    assert CQ.product(D.delta_minus.v, (0, -1, 0)).v == up.v


def test_segment_doubling_is_triangle():
    D = double(segment(2), 1)
    assert are_integrally_affinely_equivalent(D.Q, simplex(2, 2)) is not None


def test_lift_errors(trap):
    D = double(trap, 2)
    with pytest.raises(NotLiftable):
        D.lift((0, 0))
    with pytest.raises(NotLiftable):
        D.lift((7, 7))
    assert D.lift((1, 1)) == D.phi((1, 1))


def test_spectrum_fairness(trap):
    S = spectrum(trap, 6)
    for c in S.colsets[0]:
        assert S.first_decomposed(c.v) is not None
    # [DERIVED] deterministic schedule replay: FIFO over the sorted base columns
    assert [v for _, v, _ in S.steps[:4]] == [c.v for c in ColSet(trap)]
    assert S.steps[0][2] == ColSet(trap).base(S.steps[0][1])
    assert [P.dim for P in S.stages] == list(range(2, 9))


def test_spectrum_chain(trap):
    S = spectrum(trap, 3)
    for i in range(3):
        old = {embed(c.v, S.stages[i + 1].dim) for c in S.colsets[i]}
        assert old <= {c.v for c in S.colsets[i + 1]}
    assert stage_of(S, 4).dim == 6


def test_dim_ceiling(monkeypatch, trap):
    monkeypatch.setenv("POLYKIT_DIM_CEILING", "3")
    with pytest.raises(ResourceBound):
        DoublingSpectrum(trap, 2)
