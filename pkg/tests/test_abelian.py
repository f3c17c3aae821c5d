from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import Q, suite
from qloopweyl.abelian import (AbelianCharacter, EquivClass, LPoly, LRatZ, Monomial, NotSplit, ONE_MONO,
                               VirtualClass, _linear_product, character_of_eigenvalue, complex_Ck, is_ade,
                               lattice_eigen, load_quiver, nakajima_cp_check, nakajima_lattice, nakajima_psi,
                               parse_monomial, psi_eigen, q_mono, split_roots, verify_eigenvalues,
                               verify_quiver_instance, wedge_u)
from qloopweyl.cp import cp_plus_straight
from qloopweyl.looprep import eval_module
from qloopweyl.qweyl import lattice_matrix
from qloopweyl.scalar import SYMBOLIC
from qloopweyl.series import RatFunZ

z = RatFunZ.z()
A1 = [[2]]
A2 = [[2, -1], [-1, 2]]
E0 = EquivClass()

roots = st.builds(
    lambda a, b, c, d: Monomial({"q": a, "x1": b, "x2": c, "x3": d}),
    st.integers(-2, 2), st.integers(-1, 1), st.integers(-1, 1), st.integers(-1, 1),
)
classes = st.lists(roots, max_size=3).map(EquivClass)
small_classes = st.lists(roots, max_size=2).map(EquivClass)


# ---------------------------------------------------------------- monomials

def test_monomial_parse_and_print():
    m = parse_monomial("q^2 * x1^-1 * x3")
    assert m.degree("q") == 2 and m.degree("x1") == -1 and m.degree("x3") == 1
    assert parse_monomial(str(m)) == m
    assert parse_monomial("1") == ONE_MONO
    assert parse_monomial("x^(-2)") == Monomial({"x": -2})
    with pytest.raises(ValueError):
        parse_monomial("2*x")


# ---------------------------------------------------------------- psi_eigen / lattice_eigen

def test_psi_eigen_examples():
    assert psi_eigen(AbelianCharacter()) == RatFunZ.const(1)
    a = Q ** 3 + 1
    got = psi_eigen(AbelianCharacter([a]))
    assert got == (z * Q ** 2 - a) / (z - a) * (1 / Q)
    assert got.limit("inf") == Q
    ch = AbelianCharacter([a, 2], [Q])
    assert psi_eigen(ch).limit("inf") == Q ** ch.degree


def test_lattice_eigen_examples():
    assert lattice_eigen(AbelianCharacter()) == 1
    a = Q - 3
    assert lattice_eigen(AbelianCharacter([a]), -1) == Q / a
    assert lattice_eigen(AbelianCharacter([a]), 1) == -Q / a


scal = st.sampled_from([Q, Q ** 2, -1, 2, Fraction(1, 3), Q + 1, 1 / Q])


@given(st.lists(scal, max_size=2), st.lists(scal, max_size=2), st.lists(scal, max_size=2), st.lists(scal, max_size=2))
def test_multiplicativity(z1, p1, z2, p2):
    c1 = AbelianCharacter([SYMBOLIC(x) for x in z1], [SYMBOLIC(x) for x in p1])
    c2 = AbelianCharacter([SYMBOLIC(x) for x in z2], [SYMBOLIC(x) for x in p2])
    assert psi_eigen(c1 + c2) == psi_eigen(c1) * psi_eigen(c2)
    assert lattice_eigen(c1 + c2) == lattice_eigen(c1) * lattice_eigen(c2)


@settings(max_examples=25)
@given(classes, classes)
def test_multiplicativity_monomial_ring(p, n):
    c1 = AbelianCharacter(p.roots, n.roots, monomial=True)
    c2 = AbelianCharacter(n.roots, (), monomial=True)
    assert psi_eigen(c1 + c2) == psi_eigen(c1) * psi_eigen(c2)
    assert lattice_eigen(c1 + c2) == lattice_eigen(c1) * lattice_eigen(c2)


def test_cross_module_doublet():
    a = Q ** 2 + 2
    rep = eval_module(1, a)
    P = cp_plus_straight(rep)
    L = lattice_matrix(rep)
    for i in range(2):
        ch, k = character_of_eigenvalue(P.rows[i][i])
        assert ch.degree == rep.weights[i] == -k
        assert lattice_eigen(ch, -1) == L.rows[i][i]


def test_split_roots():
    assert split_roots((SYMBOLIC(-Q ** 2), SYMBOLIC(0), SYMBOLIC(1)), SYMBOLIC) in ([Q, -Q], [-Q, Q])
    with pytest.raises(NotSplit):
        split_roots((SYMBOLIC(Q), SYMBOLIC(0), SYMBOLIC(1)), SYMBOLIC)


@pytest.mark.parametrize("label,rep", suite(), ids=lambda x: x if isinstance(x, str) else "")
def test_eigenvalue_calculus_on_suite(label, rep):
    rr = verify_eigenvalues(rep)
    assert rr.ok and not rr.summary()["skipped"]
    assert len(rr.checks) == 3 * rep.dim


def test_eigen_check_is_not_vacuous():
    rep = eval_module(1, Q)
    P = cp_plus_straight(rep)
    ch, _ = character_of_eigenvalue(P.rows[0][0])
    assert lattice_eigen(ch, 1) != lattice_matrix(rep).rows[0][0]


# ---------------------------------------------------------------- wedge and the complex

def test_wedge_examples():
    assert wedge_u(E0) == [LPoly.const(1)]
    x = parse_monomial("x1")
    assert wedge_u(EquivClass([x])) == [LPoly.const(1), LPoly(x)]


@given(classes)
def test_wedge_top_and_limit(E):
    w = wedge_u(E)
    assert len(w) == E.rank + 1
    assert w[-1] == LPoly(E.det())
    # z^r wedge_{-q/z}(E) = prod (z - q x); its value at z = 0 is (-q)^r det E
    p = _linear_product(E.roots, q_mono(1))
    assert p[0] == LPoly({q_mono(E.rank) * E.det(): (-1) ** E.rank})


def test_complex_examples():
    x = parse_monomial("x")
    C, r = complex_Ck(A1, 0, [E0], [EquivClass([x])])
    assert r == 1 and C.pos == EquivClass([x]).shift(q_mono(-1)) and C.neg == E0
    _, r = complex_Ck(A1, 0, [EquivClass(["y"])], [EquivClass(["x1", "x2"])])
    assert r == 0
    _, r = complex_Ck(A2, 0, [EquivClass(["y1"]), EquivClass(["y2"])], [EquivClass(["x1"]), E0])
    assert r == 0


def test_non_ade_rejected():
    assert is_ade(A2) and is_ade([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    for bad in ([[2, -2], [-2, 2]], [[2, -1], [-2, 2]], [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]):
        assert not is_ade(bad)
        with pytest.raises(ValueError):
            complex_Ck(bad, 0, [E0] * len(bad), [E0] * len(bad))


def test_nakajima_psi_examples():
    zero = VirtualClass()
    assert nakajima_psi(zero, 0).value_at_infinity() == LPoly.const(1)
    C, r = complex_Ck(A1, 0, [E0], [EquivClass(["1"])])
    psi = nakajima_psi(C, r)
    assert psi.value_at_infinity() == LPoly(q_mono(1))
    # trivial weight on W: C = q^-1, psi = q (z - q^-2)/(z - 1)
    assert psi == LRatZ((-LPoly(q_mono(-1)), LPoly(q_mono(1))), (LPoly.const(-1), LPoly.const(1)))
    # trivial weight on C itself (W = q): q (1 - 1/(q z)) / (1 - q/z) = (q z - 1)/(z - q)
    C, r = complex_Ck(A1, 0, [E0], [EquivClass(["q"])])
    psi = nakajima_psi(C, r)
    assert psi == LRatZ((LPoly.const(-1), LPoly(q_mono(1))), (-LPoly(q_mono(1)), LPoly.const(1)))


def test_nakajima_lattice_examples():
    zero = VirtualClass()
    assert nakajima_lattice(zero, 0)[0] == ONE_MONO
    V, W = [EquivClass(["y"])], [EquivClass(["x1", "x2"])]
    C, r = complex_Ck(A1, 0, V, W)
    li, lii = nakajima_lattice(C, r, V, W, A1, 0)
    assert li == lii == parse_monomial("x1^-1 * x2^-1 * y^2")


def test_wrong_convention_breaks_det_line():
    V, W = [EquivClass(["y1"]), EquivClass(["y2"])], [EquivClass(["x1"]), E0]
    C, r = complex_Ck(A2, 0, V, W)
    flipped = VirtualClass(C.neg, C.pos)
    li, lii = nakajima_lattice(flipped, -r, V, W, A2, 0)
    assert li != lii


@settings(max_examples=20)
@given(st.sampled_from([A1, A2]), st.data())
def test_quiver_instances(cartan, data):
    n = len(cartan)
    V = [data.draw(small_classes) for _ in range(n)]
    W = [data.draw(small_classes) for _ in range(n)]
    rr = verify_quiver_instance(cartan, V, W, order=5)
    assert rr.ok, [c.check for c in rr.failures()]


def test_difference_equation_route_is_independent():
    V, W = [EquivClass(["y"])], [EquivClass(["x1", "x2 * q"])]
    C, r = complex_Ck(A1, 0, V, W)
    ok, P, wedge = nakajima_cp_check(C, r, 8)
    assert ok and P[1] != LPoly() and P is not wedge


def test_load_quiver():
    cartan, V, W, nodes = load_quiver({"cartan": A2, "V": [["y1"], []], "W": [["x1", "x2"], ["x3"]]})
    assert cartan == A2 and V[0].rank == 1 and W[0].rank == 2 and nodes is None
