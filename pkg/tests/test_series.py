from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given, strategies as st

from helpers import Q, qs, same, to_sympy
from qloopweyl.matrix import Matrix
from qloopweyl.scalar import RationalField, SYMBOLIC
from qloopweyl.series import (LaurentSeries, PoleError, RatFunField, RatFunZ, ReconstructionError, expand,
                              limit_with_prefactor, matrix_expand, matrix_pade, pade_reconstruct, sexp, slog)

z = RatFunZ.z()
zs = sp.Symbol("z")
small = st.sampled_from([Q, -Q, Q ** 2, 1 / Q, 2, Fraction(-3, 2), Q + 1, 1 - Q ** 3])


def ratfun_to_sympy(f):
    n = sum(to_sympy(c) * zs ** e for e, c in enumerate(f.num))
    d = sum(to_sympy(c) * zs ** e for e, c in enumerate(f.den))
    return n / d


@st.composite
def ratfuns(draw, maxdeg=3):
    nd = draw(st.integers(0, maxdeg))
    dd = draw(st.integers(0, maxdeg))
    num = [draw(small) for _ in range(nd + 1)]
    den = [draw(small) for _ in range(dd)] + [1]
    return RatFunZ(num, den)


# ---------------------------------------------------------------- examples

def test_expand_geometric_at_infinity():
    a = Q ** 3
    f = 1 / (1 - a / z)
    s = expand(f, "inf", 3)
    assert s.offset == 0 and s.coeffs == [1, a, a ** 2]


def test_expand_z_at_zero():
    s = expand(z, "0", 2)
    assert s.offset == 1 and s.coeffs[0] == 1


def test_expand_long_division():
    w = Q + 2
    f = (Q ** 2 * z - w) / (z - Q ** 2 * w)
    s = expand(f, "inf", 2)
    # q^2 + (q^4 w - w) z^-1 by long division
    assert s.coeffs == [Q ** 2, Q ** 4 * w - w]


def test_pade_examples():
    a = Q ** 2 - 1
    f = 1 / (1 - a / z)
    assert pade_reconstruct(expand(f, "inf", 8 + 3)) == f
    assert pade_reconstruct(expand(f, "inf", 8), guard=4) == f
    assert pade_reconstruct(LaurentSeries("inf", 0, [SYMBOLIC.zero] * 5)) == 0
    w = 3 * Q
    g = (1 - Q ** 2 * w / z) * (1 - w / z)
    assert pade_reconstruct(expand(g, "inf", 12)) == g


def test_pade_budget_exhausted():
    f = 1 / ((z - 1) * (z - 2) * (z - 3) * (z - Q))
    s = expand(f, "inf", 12)
    with pytest.raises(ReconstructionError, match="no rational function within degree budget"):
        pade_reconstruct(s)


def test_limit_examples():
    a = Q + 5
    assert limit_with_prefactor(1 / z, "0", 1) == 1
    assert limit_with_prefactor((z - a) / z, "0", 1) == -a
    assert limit_with_prefactor(RatFunZ.const(1), "0", 1) == 0
    with pytest.raises(PoleError, match="pole remains"):
        limit_with_prefactor(1 / z ** 2, "0", 1)
    assert limit_with_prefactor(z / (z - 1), "inf", 0) == 1


def test_json_round_trip():
    f = (Q * z ** 2 - 3) / (z ** 3 + Q ** -1)
    obj = f.to_json()
    assert obj["num"][0][0] == 2  # exponents descending
    assert RatFunZ.from_json(obj) == f
    s = expand(f, "inf", 4)
    assert LaurentSeries.from_json(s.to_json(str), SYMBOLIC.parse) == s


def test_numeric_field():
    F = RationalField(Fraction(3, 2))
    zz = RatFunZ.z(F)
    f = (zz - 2) / (zz * zz + 1)
    assert pade_reconstruct(expand(f, "inf", 14), field=F) == f
    assert pade_reconstruct(expand(f, "0", 14), field=F) == f


# ---------------------------------------------------------------- properties

@given(ratfuns(), ratfuns())
def test_field_ops_against_sympy(f, g):
    assume(g)
    for got, want in ((f + g, ratfun_to_sympy(f) + ratfun_to_sympy(g)),
                      (f * g, ratfun_to_sympy(f) * ratfun_to_sympy(g)),
                      (f / g, ratfun_to_sympy(f) / ratfun_to_sympy(g))):
        assert sp.simplify(ratfun_to_sympy(got) - want) == 0
    assert f.den[-1] == 1


@given(ratfuns(), st.sampled_from(["inf", "0"]))
def test_reconstruct_after_expand(f, anchor):
    deg = max(len(f.num), len(f.den))
    s = expand(f, anchor, 2 * deg + 10)
    assert pade_reconstruct(s) == f


@given(ratfuns())
def test_two_anchor_consistency(f):
    n = 2 * max(len(f.num), len(f.den)) + 10
    assert pade_reconstruct(expand(f, "inf", n)) == pade_reconstruct(expand(f, "0", n))


@given(ratfuns(), small)
def test_substitutions(f, c):
    assume(c)
    x = Fraction(7, 3)
    try:
        v = f.value(x * c)
    except PoleError:
        assume(False)
    assert f.scale_var(c).value(x) == v
    try:
        assert f.invert_var().value(1 / (x * c)) == v
    except PoleError:
        pass


def test_log_exp_inverse():
    g = [SYMBOLIC.zero, Q, Q ** 2 - 1, Fraction(1, 3)]
    e = sexp(g, 6, SYMBOLIC.one, SYMBOLIC)
    assert slog(e, 6, SYMBOLIC)[:4] == g


def test_matrix_reconstruction_commutes_with_product():
    rf = RatFunField()
    A = Matrix([[1 / (1 - Q / z), z / (z - 2)], [RatFunZ.const(0), (z - Q) / (z + Q)]], rf)
    B = Matrix([[(z + 1) / (z - Q ** 2), RatFunZ.const(Q)], [1 / z, RatFunZ.const(1)]], rf)
    for M in (A, B, A * B):
        assert matrix_pade(matrix_expand(M, "inf", 16)) == M
