import itertools

import pytest

from polykit import rigid as Rg
from polykit.columns import ColSet, long_product
from polykit.doubling import double
from polykit.errors import NotColDivisible, RigidityFailure
from polykit.lattice import make

U, V, W = (0, -1), (-1, 0), (-1, -1)
PU, PV, PW = (0, 0, -1), (1, 0, 0), (0, 1, 0)
PUW = (0, 1, -1)
D3 = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]


def e3(i, j):
    return tuple(b - a for a, b in zip(D3[i], D3[j]))


@pytest.fixture(scope="module")
def Ct(trap):
    return ColSet(trap)


@pytest.fixture(scope="module")
def Cp(pyr4):
    return ColSet(pyr4)


@pytest.fixture(scope="module")
def C3():
    return ColSet(make("simplex(3,1)"))


def test_closures_pyr4(Cp):
    # reference value: (uv)w lies in the weak closure only
    strong = Rg.closure(Cp, [PU, PV, PW])
    weak = Rg.closure(Cp, [PU, PV, PW], "weak")
    assert (1, 1, -1) not in strong and (1, 1, -1) in weak


def test_closures_trap(Ct):
    assert Rg.closure(Ct, [U, V]) == Rg.closure(Ct, [U, V], "weak") == {U, V, W}
    assert Rg.closure(Ct, []) == frozenset()


def test_check_rigid_examples(Cp, nonrig):
    assert Rg.check_rigid(Cp, [PU, PV, PW])[1][0] == "closure-mismatch"
    S, why = Rg.check_rigid(Cp, [PU, PUW, PV])
    assert why is None
    # graph T: two edges into one vertex, one edge out of it
    g = S.graph
    hub = [x for x in g.vertices if len(g.in_edges(x)) == 2]
    assert len(hub) == 1 and len(g.out_edges(hub[0])) == 1
    S, why = Rg.check_rigid(ColSet(nonrig), [(1, 0, -1), (-1, 0, 0), (0, 1, 0)])
    assert S is None


def test_pair_failure(Ct):
    assert Rg.check_rigid(Ct, [V, (1, 0)])[1][0] == "pair"


def test_y_rigidity(Ct, Cp):
    assert Rg.is_y_rigid(Rg.rigid_system(Ct, [U, V]))
    assert not Rg.is_y_rigid(Rg.rigid_system(Cp, [PU, PUW, PV]))
    assert Rg.is_y_rigid(Rg.rigid_system(Ct, [V]))


def test_lambda_complexity(Ct, Cp, C3):
    assert Rg.lambda_complexity(Rg.rigid_system(Ct, [U, V]).graph) == (0, 0)
    assert Rg.lambda_complexity(Rg.rigid_system(Cp, [PU, PUW, PV]).graph) == (1, 1)
    diamond = Rg.rigid_system(C3, [e3(0, 1), e3(1, 3), e3(0, 2), e3(2, 3)])
    assert Rg.lambda_complexity(diamond.graph) == (2, 1)


def test_y_resolve(Ct, Cp, C3):
    S = Rg.rigid_system(Ct, [U, W])
    assert Rg.y_resolve(Ct, [U, W]).closure == S.closure
    trace = []
    Wd = Rg.y_resolve(C3, [e3(0, 1), e3(1, 3), e3(0, 2), e3(2, 3)], trace)
    assert Wd.y_flag and trace[0] == (2, 1) and trace[-1] == (0, 0)
    assert {e3(0, 1), e3(1, 3), e3(0, 2), e3(2, 3), e3(0, 3)} <= Wd.closure
    with pytest.raises(NotColDivisible):
        Rg.y_resolve(Cp, [PU])


def test_y_resolve_meeting_points(C3):
    # CD1 branch: every rigid non-Y system of at most three vectors in Delta_3
    vs = [c.v for c in C3]
    count = 0
    for r in (2, 3):
        for Vs in itertools.combinations(vs, r):
            S, _ = Rg.check_rigid(C3, Vs)
            if S is None or S.y_flag:
                continue
            count += 1
            trace = []
            Wr = Rg.y_resolve(C3, Vs, trace)
            assert S.closure <= Wr.closure and Wr.y_flag
            assert all(a > b for a, b in zip(trace, trace[1:]))
    assert count == 12


def test_no_y_rigid_superset_of_T(Cp):
    # reference value: the T-system on the pyramid has no Y-rigid enlargement
    vs = [c.v for c in Cp]
    base = {PU, PUW, PV}
    rest = [v for v in vs if v not in base]
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            S, _ = Rg.check_rigid(Cp, base | set(extra))
            assert S is None or not S.y_flag


def test_intersect(C3):
    A = Rg.rigid_system(C3, [e3(0, 1), e3(1, 2), e3(2, 3)])
    B = Rg.rigid_system(C3, [e3(3, 1), e3(1, 2), e3(2, 0)])
    I = Rg.intersect(A, B)
    assert I.closure == {e3(1, 2)} and len(I.graph.edges) == 1
    assert Rg.intersect(A, A).closure == A.closure
    far = Rg.rigid_system(C3, [e3(3, 0)])
    assert Rg.intersect(Rg.rigid_system(C3, [e3(0, 1)]), far).closure == frozenset()


def test_extend_under_doubling(trap, Ct, pyr4, Cp):
    S = Rg.rigid_system(Ct, [U, V])
    T = Rg.extend_under_doubling(double(trap, Ct.base(U)), S, U)
    assert len(T.irreducibles) == 3 and T.y_flag
    assert Rg.lambda_complexity(T.graph) == (0, 0)
    assert max(T.graph.heights().values()) == 3
    D = double(trap, Ct.base(V))
    T = Rg.extend_under_doubling(D, Rg.rigid_system(Ct, [V]), V)
    assert T.closure == {(-1, 0, 0), D.delta_plus.v, D.phi_lin(V)}
    S = Rg.rigid_system(Cp, [PU, PUW, PV])
    T = Rg.extend_under_doubling(double(pyr4, Cp.base(PV)), S, PV)
    assert len(T.graph.edges) == 4
    with pytest.raises(RigidityFailure):
        Rg.extend_under_doubling(double(trap, Ct.base(V)), Rg.rigid_system(Ct, [U, V]), W)


def test_k_decompose(trap, Ct):
    S = Rg.rigid_system(Ct, [U])
    K1 = Rg.k_decompose(trap, [S], 1)
    assert K1.systems[0] is S
    K = Rg.k_decompose(trap, [S], 2)
    ok, problems = Rg.verify_kdecomposition(K)
    assert ok, problems
    (u, fs), = K.factorizations.items()
    assert len(fs) == 2 and all(any(f[2:]) for f in fs)


def test_dot_and_json(Ct):
    S = Rg.rigid_system(Ct, [U, V])
    dot = S.graph.to_dot()
    assert dot.startswith("digraph") and 'label="0,-1"' in dot
    js = S.to_json()
    assert {tuple(e["v"]) for e in js["edges"]} == {U, V}


# -- invariants by exhaustion ------------------------------------------------------------

def _rigid_systems(C, max_size=3):
    vs = [c.v for c in C]
    for r in range(1, max_size + 1):
        for Vs in itertools.combinations(vs, r):
            S, _ = Rg.check_rigid(C, Vs)
            if S is not None:
                yield S


@pytest.mark.parametrize("name", ["P_trap", "simplex(3,1)", "pyr4", "simplex(2,2)"])
def test_rigid_closure_invariants(name):
    C = ColSet(make(name))
    for S in _rigid_systems(C):
        cl = sorted(S.closure)
        assert Rg.closure(C, cl) == S.closure                           # (a)
        if len(cl) <= 12:
            for x, y in itertools.product(cl, repeat=2):                # (b)
                if C.product(x, y) is not None:
                    assert long_product(C, [x, y])[0] == "strong"
            for r in range(1, len(cl) + 1):                             # (e)
                for sub in itertools.combinations(cl, r):
                    assert any(map(sum, zip(*sub)))
        for w in cl:                                                    # (d)
            assert sum(map(lambda x: x, map(sum, zip(*S.path_of(w))))) == sum(w)
        for r in range(1, len(cl) + 1):                                 # subsets stay rigid
            for sub in itertools.combinations(cl, r):
                assert Rg.check_rigid(C, sub)[0] is not None


def test_decomposition_unique_iff_y(C3):
    for S in _rigid_systems(C3):
        counts = {}
        for p in S.graph.paths():
            counts[p[0][0], p[-1][1]] = counts.get((p[0][0], p[-1][1]), 0) + 1
        unique = all(c == 1 for c in counts.values())
        if S.y_flag:
            assert unique
