"""Shared fixtures: the representation suite and sympy oracles."""
from fractions import Fraction
from functools import lru_cache

import sympy as sp

from qloopweyl.looprep import direct_sum, eval_module
from qloopweyl.scalar import SYMBOLIC, ScalarQ

Q = SYMBOLIC.q
qs = sp.Symbol("q")

SUITE_N = (0, 1, 2, 3)
SUITE_A = {"1": 1, "q^2": Q ** 2, "-1": -1, "3/2": Fraction(3, 2)}


@lru_cache(maxsize=None)
def suite_rep(n, a_key):
    return eval_module(n, SUITE_A[a_key])


@lru_cache(maxsize=None)
def sum_rep():
    return direct_sum(eval_module(1, 1), eval_module(1, Q ** 4))


def suite():
    """(label, rep) for every acceptance representation."""
    out = [(f"eval({n},{a})", suite_rep(n, a)) for n in SUITE_N for a in SUITE_A]
    out.append(("eval(1,1)+eval(1,q^4)", sum_rep()))
    return out


def to_sympy(x):
    num = sum(c * qs ** e for e, c in enumerate(x.num))
    den = sum(c * qs ** e for e, c in enumerate(x.den))
    return num / den


def from_coeffs(num, den):
    return ScalarQ(list(num), list(den))


def same(x, expr):
    return sp.simplify(to_sympy(x) - expr) == 0
