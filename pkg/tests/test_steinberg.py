import random

import pytest

from polykit import autos, rigid as Rg, steinberg as St
from polykit.columns import ColSet
from polykit.doubling import spectrum
from polykit.errors import StageTooSmall, ValidationFailure
from polykit.lattice import make

U, V, W = (0, -1), (-1, 0), (-1, -1)
NV = (1, 0)


def test_free_reduce():
    w = St.word([(V, 2), (V, -2)], "z")
    assert len(St.reduce(w)) == 0
    w = St.word([(V, 2), (V, 3), (U, 1)], "z")
    assert St.reduce(w).letters == [(V, 5), (U, 1)]
    assert St.reduce(St.word([], "z")).letters == []


def test_relational_reduce(trap):
    C = ColSet(trap)
    # the defining commutator relator collapses to nothing
    rel = St.commutator_word(U, 2, V, 3, "z") * St.word([(W, 6)], "z")
    assert St.reduce(rel, "relational", C).letters == []
    # u + (-v) is not in Col: the letters are sorted
    w = St.word([(NV, 4), (U, 1)], "z")
    assert St.reduce(w, "relational", C).letters == [(U, 1), (NV, 4)]
    with pytest.raises(ValidationFailure):
        St.reduce(w, "relational")


def test_reduce_soundness(trap):
    C = ColSet(trap)
    vs = [c.v for c in C]
    rng = random.Random(11)
    for _ in range(500):
        w = St.word([(rng.choice(vs), rng.randint(-3, 3)) for _ in range(rng.randint(0, 7))], "z")
        r = St.reduce(w, "relational", C)
        assert autos.equals(St.evaluate(r, "z", trap, C), St.evaluate(w, "z", trap, C))


def test_relators_on_balanced_stages(corpus):
    for P in corpus.values():
        C = ColSet(P)
        if P.dim > 3 or len(C) > 12 or not _balanced(C):
            continue
        for a in C:
            for b in C:
                u, v = a.v, b.v
                if not any(x + y for x, y in zip(u, v)):
                    continue
                w = St.commutator_word(u, 1, v, 1, "z")
                p = C.product(u, v)
                if p is not None:
                    w = w * St.word([(p.v, 1)], "z")
                elif tuple(x + y for x, y in zip(u, v)) in C:
                    continue
                assert St.evaluate(w, "z", P, C).is_identity(), (P.name, u, v)


def _balanced(C):
    from polykit.columns import is_balanced
    return is_balanced(C)[0]


def test_evaluate_errors(trap):
    assert St.evaluate(St.word([], "z"), "z", trap).is_identity()
    with pytest.raises(StageTooSmall):
        St.evaluate(St.word([((0, 0, -1), 1)], "z"), "z", trap)
    with pytest.raises(ValidationFailure):
        St.evaluate(St.word([((1, 1), 1)], "z"), "z", trap)


def test_sign_square_word():
    # reference value: the square of e_v e_{-v}^{-1} e_v is not the identity on 2*Delta_2
    P = make("simplex(2,2)")
    v, nv = (1, 0), (-1, 0)
    w = St.word([(v, 1), (nv, -1), (v, 1)] * 2, "z")
    assert not St.evaluate(w, "z", P).is_identity()


def test_same_base_block(trap):
    # letters on a common base facet canonicalize to their coefficients
    C = ColSet(trap)
    S = Rg.rigid_system(C, [U, V])
    assert C.base(U) == C.base(W)
    cf = St.canonicalize_formal(St.word([(W, 4), (U, -2)], "z"), S, "z")
    assert cf.layers == {1: {U: -2, W: 4}}
    assert St.canonicalize_formal([], S, "z").layers == {}


def test_k2_screen(trap):
    stages = spectrum(trap, 2).stages
    rel = St.commutator_word(U, 1, V, 1, "z") * St.word([(W, 1)], "z")
    rep = St.k2_screen(rel, "z", stages)
    assert rep["evaluates_to_identity_on_stages"] and rep["freely_trivial"]
    assert not rep["k2_candidate"]
    rep = St.k2_screen(St.word([], "z"), "z", stages)
    assert rep["evaluates_to_identity_on_stages"] and rep["freely_trivial"]
    rep = St.k2_screen(St.word([(U, 1), (V, 2)], "z"), "z", stages)
    assert not rep["evaluates_to_identity_on_stages"]


def test_word_json_roundtrip():
    w = St.word([(U, 3), (V, -1)], "z/5")
    w2 = St.parse_word(w.to_json())
    assert w2.letters == w.letters and w2.ring == w.ring
    assert (w * w.inverse()).letters[:2] == w.letters
    assert len(St.reduce(w * w.inverse())) == 0
