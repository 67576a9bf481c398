import itertools

import pytest

import oracles
from polykit.columns import (ColSet, base_facet, base_facet_definitional, col_divisibility,
                             embed_in_simplex, is_balanced, is_bidiagonal, is_col_divisible,
                             lattice_differences, long_product, pairing_matrix,
                             product_definitional, shortcut_applies, terminal_cliques)
from polykit.errors import NotBalanced, NotColDivisible
from polykit.lattice import make

U, V, W = (0, -1), (-1, 0), (-1, -1)


def test_trap_columns_reference(trap):
    # reference value: the trapezoid column set and its two products
    C = ColSet(trap)
    assert {c.v for c in C} == {U, V, (1, 0), W}
    prods = {(C.vectors[i].v, C.vectors[j].v, C.vectors[k].v) for i, j, k in C.products}
    assert prods == {(U, V, W), (W, (1, 0), U)}


def test_trap_no_reverse_product(trap):
    C = ColSet(trap)
    assert C.product(V, U) is None
    assert C.pair(C.base(U), V) == 0


@pytest.mark.parametrize("name", ["P_trap", "pyr4", "P_nonrig", "P_fig1", "square",
                                  "simplex(2,2)", "simplex(3,1)"])
def test_columns_match_oracle(name):
    P = make(name)
    col = oracles.column_vectors([list(v) for v in P.vertices])
    C = ColSet(P)
    assert {c.v for c in C} == set(col)
    for c in C:
        f = P.facets[c.base]
        assert (f.normal, f.offset) == col[c.v]


@pytest.mark.parametrize("name", ["P_trap", "pyr4", "P_nonrig", "simplex(3,1)"])
def test_products_match_oracle(name):
    P = make(name)
    C = ColSet(P)
    ref = oracles.products([list(v) for v in P.vertices])
    got = {(C.vectors[i].v, C.vectors[j].v): C.vectors[k].v for i, j, k in C.products}
    assert got == ref
    for u, v in itertools.product([c.v for c in C], repeat=2):
        assert product_definitional(C, u, v) == ((u, v) in ref)


def test_facet_and_definitional_criteria_agree(corpus):
    for P in corpus.values():
        for v in lattice_differences(P):
            assert base_facet(P, v) == base_facet_definitional(P, v)


def test_candidate_set_covers_differences(corpus):
    for P in corpus.values():
        full = {v for v in lattice_differences(P) if base_facet(P, v) is not None}
        assert {c.v for c in ColSet(P)} == full


def test_sizes_frozen(corpus):
    # [DERIVED] from the oracle
    sizes = {name: len(ColSet(P)) for name, P in corpus.items()}
    assert sizes == {"simplex(1,1)": 2, "simplex(2,1)": 6, "simplex(2,2)": 6,
                     "simplex(3,1)": 12, "segment(2)": 2, "square": 4, "P_fig1": 1,
                     "P_trap": 4, "pyr4": 8, "P_nonrig": 12}


def test_long_products(nonrig, pyr4):
    assert long_product(ColSet(nonrig), [(1, 0, -1), (-1, 0, 0), (0, 1, 0)]) == \
        ("strong", (((0, 1, -1)), ColSet(nonrig).base((0, 1, -1))))
    mode, val = long_product(ColSet(pyr4), [(0, 0, -1), (1, 0, 0), (0, 1, 0)])
    assert mode == "weak-only" and val.v == (1, 1, -1)


def test_balanced(trap, pyr4, nonrig):
    assert is_balanced(ColSet(trap))[0]
    assert is_balanced(ColSet(pyr4))[0]
    ok, (u, v, p) = is_balanced(ColSet(nonrig))
    assert not ok and p == 2


def test_nonrig_spec_witness_value(nonrig):
    # the first listed pair pairs to 1; a pairing-2 witness exists elsewhere
    C = ColSet(nonrig)
    assert C.pair(C.base((-1, 0, 0)), (1, 0, -1)) == 1
    assert C.pair(C.base((-1, 0, 0)), (2, 0, -1)) == 2


def test_linear_pairing_matrix(trap, nonrig):
    assert is_bidiagonal(pairing_matrix(ColSet(trap), [U, V]))
    M = pairing_matrix(ColSet(nonrig), [(1, 0, -1), (-1, 0, 0), (0, 1, 0)])
    assert M == [[-1, 1, 1], [0, -1, 1], [0, 0, -1]] and not is_bidiagonal(M)


def test_divisibility(trap, pyr4, nonrig):
    r = col_divisibility(ColSet(trap))
    assert r.cd1_ok and r.cd2_ok
    r = col_divisibility(ColSet(pyr4))
    assert not r.cd1_ok and not r.cd2_ok
    with pytest.raises(NotBalanced):
        col_divisibility(ColSet(nonrig))


def test_cd1_shortcut_never_contradicted(corpus):
    for P in corpus.values():
        C = ColSet(P)
        if not is_balanced(C)[0]:
            continue
        for axiom, vs in col_divisibility(C).violations:
            if axiom == "CD1":
                assert not shortcut_applies(C, axiom, vs)


def test_cd2_shortcut_is_not_a_certificate(pyr4):
    # every CD2 violation on the pyramid has an invertible member, so using
    # the invertibility shortcut as an early exit would hide all of them
    C = ColSet(pyr4)
    cd2 = [vs for axiom, vs in col_divisibility(C).violations if axiom == "CD2"]
    assert len(cd2) == 8
    assert all(shortcut_applies(C, "CD2", vs) for vs in cd2)


def test_embedding_trap(trap):
    E = embed_in_simplex(ColSet(trap))
    assert E.simplex.dim == 2
    assert len(set(E.iota.values())) == 4
    assert terminal_cliques(ColSet(trap)) == []


@pytest.mark.parametrize("name", ["square", "simplex(2,1)", "simplex(2,2)", "simplex(3,1)",
                                  "segment(2)"])
def test_embedding_validates(name):
    E = embed_in_simplex(ColSet(make(name)))
    C = ColSet(make(name))
    for u in C:
        for v in C:
            assert C.pair(u.base, v.v) == E.colset.pair(E.colset.base(E.iota[u.v]), E.iota[v.v])


def test_embedding_rejects_pyr4(pyr4):
    with pytest.raises(NotColDivisible):
        embed_in_simplex(ColSet(pyr4))


def test_col_divisible_flags(corpus):
    flags = {n: is_col_divisible(ColSet(P)) for n, P in corpus.items()}
    assert not flags["pyr4"] and not flags["P_nonrig"] and flags["P_trap"]
