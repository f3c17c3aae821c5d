import json
from fractions import Fraction

import pytest

from helpers import Q, suite_rep
from qloopweyl.cp import psi_rational
from qloopweyl.looprep import (EVAL_VARIANTS, beck_km_generators, build_from_seed, check_km, check_relations,
                               default_order, direct_sum, eval_module, generate_modes, load_rep, loop_seed_from_km,
                               mirror, rep_from_json, rep_to_json, save_rep, shift_twist, sl2_matrices, trivial_rep)
from qloopweyl.matrix import Matrix, commutator
from qloopweyl.qweyl import lattice_matrix
from qloopweyl.report import RelationError
from qloopweyl.scalar import SYMBOLIC, RationalField, qint
from qloopweyl.series import matrix_scale_var


def test_trivial_rep():
    t = trivial_rep()
    assert t.dim == 1 and t.K == Matrix.identity(1, SYMBOLIC)
    assert all(m.is_zero() for m in t.E.values()) and all(m.is_zero() for m in t.F.values())
    assert all(m == t.identity() for m in t.psi_plus[:1]) and all(m.is_zero() for m in t.psi_plus[1:])
    assert check_relations(t).ok


def test_eval_basis_conventions():
    rep = eval_module(3, Q)
    E, F, K, w = sl2_matrices(3, Q)
    assert rep.weights == [3, 1, -1, -3]
    assert rep.K == Matrix.diag([Q ** x for x in w], SYMBOLIC)
    for r in range(1, 4):   # E_0 m(r) = [n-r+1] m(r-1)
        assert rep.E[0].rows[r - 1][r] == qint(3 - r + 1)
    for r in range(3):      # F_0 m(r) = [r+1] m(r+1)
        assert rep.F[0].rows[r + 1][r] == qint(r + 1)
    assert rep.meta["variant"] == EVAL_VARIANTS[0]
    assert rep.meta["n"] == 3


def test_eval_windows_and_relations():
    rep = eval_module(1, 1, window=(-2, 2))
    assert check_relations(rep).ok
    assert check_relations(eval_module(1, 2)).ok
    wide = generate_modes(eval_module(1, 1), -4, 4)
    assert wide.window == (-4, 4) and check_relations(wide).ok


def test_highest_weight_psi_eigenvalue_shape():
    rep = eval_module(2, Q ** 2)
    psi, rr = psi_rational(rep)
    assert rr.ok
    top = psi.rows[0][0]
    assert len(top.num) <= 2 and len(top.den) <= 2
    assert top.limit("inf") == Q ** 2


def test_psi_modes_from_brackets():
    rep = eval_module(2, Fraction(5, 3))
    c = Q - 1 / Q
    for k in range(1, 4):
        assert commutator(rep.E[k], rep.F[0]) * c == rep.psi_plus[k]


def test_mutation_is_reported_at_the_right_relation():
    rep = eval_module(1, 1)
    E = dict(rep.E)
    E[1] = E[1].scale(Q)
    bad = rep.replace(E=E)
    rr = check_relations(bad)
    assert not rr.ok
    ef = rr.find("EF-bracket[1,0]")
    assert ef and ef[0].status == "fail" and ef[0].witness is not None


def test_downward_recursion_sign():
    # generating E_-2 with the opposite sign breaks the relations
    rep = eval_module(2, Q ** 2)
    wrong = -(commutator(rep.Hm1, rep.E[-1]).scale(1 / qint(2)))
    assert wrong != rep.E[-2]
    E = dict(rep.E)
    E[-2] = wrong
    assert not check_relations(rep.replace(E=E)).ok


def test_mirror_is_a_representation():
    rep = eval_module(2, Q ** 2)
    m = mirror(rep)
    assert m.q == 1 / Q
    assert check_relations(m).ok
    for k in range(-2, 3):
        assert m.E[k] == rep.E[-k] and m.F[k] == rep.F[-k]


@pytest.mark.parametrize("negate", [False, True])
def test_transposed_mirror_is_not(negate):
    rep = eval_module(2, Q ** 2)
    w = [-x for x in rep.weights] if negate else rep.weights
    with pytest.raises(RelationError):
        build_from_seed(rep.E[0].T, rep.F[0].T, rep.F[-1].T, rep.E[1].T, w, SYMBOLIC, 1 / Q)


def test_shift_twist():
    rep = eval_module(2, Q)
    assert shift_twist(rep, 1).E == rep.E
    back = shift_twist(shift_twist(rep, -1), -1)
    assert back.E == rep.E and back.F == rep.F and back.psi_plus == rep.psi_plus
    zeta = Q ** 3
    tw = shift_twist(rep, zeta)
    psi, _ = psi_rational(rep)
    psi_t, _ = psi_rational(tw)
    assert psi_t == matrix_scale_var(psi, 1 / zeta)


def test_direct_sums():
    tt = direct_sum(trivial_rep(), trivial_rep())
    assert tt.dim == 2 and all(m.is_zero() for m in tt.E.values())
    s = direct_sum(eval_module(1, 1), eval_module(1, Q ** 4))
    assert s.dim == 4 and sorted(s.weights) == sorted([1, -1, 1, -1])
    assert check_relations(s).ok
    assert s.order == default_order(4)
    L = lattice_matrix(s)
    L1, L2 = lattice_matrix(eval_module(1, 1)), lattice_matrix(eval_module(1, Q ** 4))
    assert L == Matrix.block_diag([L1, L2], SYMBOLIC)


def test_km_generators_and_round_trip():
    rep = eval_module(1, Q ** 2)
    km = beck_km_generators(rep)
    assert check_km(km).ok
    E0, F0 = km.E[0], km.F[0]
    K0 = km.K[0]
    assert commutator(E0, F0) == (K0 - K0.inverse()).scale(1 / (Q - 1 / Q))
    assert loop_seed_from_km(km) == (rep.E[0], rep.F[0], rep.F[1], rep.E[-1])
    t = beck_km_generators(trivial_rep())
    assert all(m.is_zero() for m in t.E + t.F) and all(m == Matrix.identity(1, SYMBOLIC) for m in t.K)


def test_km_serre_detects_damage():
    km = beck_km_generators(eval_module(2, Q))
    assert check_km(km).ok
    km.E[1] = km.E[1].scale(2) + km.F[1]
    assert not check_km(km).ok


def test_json_round_trip(tmp_path):
    rep = suite_rep(2, "3/2")
    p = tmp_path / "v.json"
    save_rep(rep, p)
    back = load_rep(p)
    assert back.E == rep.E and back.F == rep.F and back.weights == rep.weights
    obj = json.loads(p.read_text())
    assert set(obj) == {"dim", "weights", "K", "E", "F", "meta"}


def test_hand_authored_file():
    obj = {
        "dim": 2, "weights": [1, -1],
        "K": [["q", "0"], ["0", "q^-1"]],
        "E": {"0": [["0", "1"], ["0", "0"]], "-1": [["0", "q^-1"], ["0", "0"]]},
        "F": {"0": [["0", "0"], ["1", "0"]], "1": [["0", "0"], ["q", "0"]]},
        "meta": {"recipe": "hand"},
    }
    rep = rep_from_json(obj)
    assert check_relations(rep).ok


def test_bad_files_rejected():
    rep = eval_module(1, 1)
    obj = rep_to_json(rep)
    obj["E"]["2"][0][1] = "17"
    with pytest.raises(RelationError):
        rep_from_json(obj)
    obj = rep_to_json(rep)
    obj["K"][0][0] = "q^3"
    with pytest.raises(ValueError):
        rep_from_json(obj)
    obj = rep_to_json(rep)
    del obj["weights"]
    with pytest.raises(ValueError):
        rep_from_json(obj)


def test_numeric_mode():
    F = RationalField(Fraction(3, 2))
    rep = eval_module(2, Fraction(5, 7), field=F)
    assert check_relations(rep).ok
    with pytest.raises(ValueError):
        eval_module(1, 0)
    with pytest.raises(ValueError):
        eval_module(-1, 1)
