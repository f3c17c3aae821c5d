import json
import os
import subprocess
import sys

import pytest

from qloopweyl import cli


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def doc_of(out):
    return json.loads(out)


def make_eval(tmp_path, capsys, n, a="1", name="v.json"):
    path = str(tmp_path / name)
    code, _, _ = run(["rep", "eval", "--n", str(n), "--a", a, "-o", path], capsys)
    assert code == 0
    return path


def write_json(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


# ---------------------------------------------------------------- rep


def test_rep_eval_writes_dim_2(tmp_path, capsys):
    path = make_eval(tmp_path, capsys, 1)
    with open(path) as fh:
        assert json.load(fh)["dim"] == 2


def test_rep_twist(tmp_path, capsys):
    v = make_eval(tmp_path, capsys, 1)
    w = str(tmp_path / "w.json")
    code, _, _ = run(["rep", "twist", "--zeta", "-1", v, "-o", w], capsys)
    assert code == 0
    with open(w) as fh:
        obj = json.load(fh)
    assert obj["dim"] == 2 and obj != json.load(open(v))


def test_rep_eval_q2_passes_relations(tmp_path, capsys):
    path = make_eval(tmp_path, capsys, 2, "q^2")
    code, out, _ = run(["verify", "relations", path], capsys)
    assert code == 0
    doc = doc_of(out)
    assert doc["summary"]["fail"] == 0 and doc["summary"]["pass"] > 0


def test_rep_sum_and_load(tmp_path, capsys):
    a = make_eval(tmp_path, capsys, 1, "1", "a.json")
    b = make_eval(tmp_path, capsys, 2, "q^2", "b.json")
    s = str(tmp_path / "s.json")
    assert run(["rep", "sum", a, b, "-o", s], capsys)[0] == 0
    code, out, _ = run(["rep", "load", s], capsys)
    assert code == 0 and json.loads(out)["dim"] == 5


# ---------------------------------------------------------------- verify


def test_verify_theorem_trivial(tmp_path, capsys):
    path = make_eval(tmp_path, capsys, 0)
    code, out, _ = run(["verify", "theorem", path], capsys)
    assert code == 0
    assert doc_of(out)["summary"]["fail"] == 0


def test_verify_theorem_eval_1_1(tmp_path, capsys):
    path = make_eval(tmp_path, capsys, 1)
    code, out, _ = run(["verify", "theorem", path], capsys)
    doc = doc_of(out)
    assert code == 0
    assert "main-theorem" in {c["check"] for c in doc["checks"]}


def test_verify_qpascal(capsys):
    code, out, _ = run(["verify", "qpascal", "--rmax", "8", "--ymax", "8"], capsys)
    assert code == 0
    assert doc_of(out)["input"]["checked"] > 0


@pytest.mark.parametrize("what", ["relations", "cp", "kernel", "euler", "eigen"])
def test_verify_each_suite(what, tmp_path, capsys):
    path = make_eval(tmp_path, capsys, 1, "q^2")
    code, out, _ = run(["verify", what, path], capsys)
    assert code == 0, out


def test_verify_weyl_without_file(capsys):
    code, out, _ = run(["verify", "weyl", "--nmax", "3"], capsys)
    assert code == 0


def test_verify_shift_zeta(tmp_path, capsys):
    path = make_eval(tmp_path, capsys, 1)
    code, out, _ = run(["verify", "theorem", path, "--zeta", "q", "--zeta", "2"], capsys)
    assert code == 0
    ids = {c["check"] for c in doc_of(out)["checks"]}
    assert any(i.startswith("shift-covariance") for i in ids)


def test_checks_sorted_by_id(tmp_path, capsys):
    path = make_eval(tmp_path, capsys, 1)
    _, out, _ = run(["verify", "cp", path], capsys)
    ids = [c["check"] for c in doc_of(out)["checks"]]
    assert ids == sorted(ids)


def test_report_deterministic_modulo_timing(tmp_path, capsys):
    path = make_eval(tmp_path, capsys, 1)
    docs = []
    for _ in range(2):
        _, out, _ = run(["verify", "theorem", path], capsys)
        d = doc_of(out)
        d.pop("timing")
        docs.append(json.dumps(d, sort_keys=True))
    assert docs[0] == docs[1]


def test_text_format(tmp_path, capsys):
    path = make_eval(tmp_path, capsys, 1)
    code, out, _ = run(["verify", "theorem", path, "--format", "text"], capsys)
    assert code == 0
    assert "PASS" in out and "0 failed" in out


def test_rational_scalar_mode(tmp_path, capsys):
    path = make_eval(tmp_path, capsys, 1)
    code, _, _ = run(["verify", "relations", path, "--scalar", "rational:7/3"], capsys)
    assert code == 0


def test_default_order_env(tmp_path, capsys, monkeypatch):
    path = make_eval(tmp_path, capsys, 1)
    monkeypatch.setenv("QLW_DEFAULT_ORDER", "14")
    _, out, _ = run(["verify", "cp", path], capsys)
    assert doc_of(out)["input"]["order"] == 14
    monkeypatch.setenv("QLW_DEFAULT_ORDER", "seven")
    assert run(["verify", "cp", path], capsys)[0] == 2


def test_order_too_small_exits_2(tmp_path, capsys):
    path = make_eval(tmp_path, capsys, 1)
    code, _, err = run(["verify", "cp", path, "--order", "3"], capsys)
    assert code == 2 and "--order" in err


# ---------------------------------------------------------------- failures and exit codes


def test_bad_scalar_exits_2(capsys):
    code, _, err = run(["rep", "eval", "--n", "1", "--a", "q^^2"], capsys)
    assert code == 2 and "error" in err


def test_negative_n_exits_2(capsys):
    assert run(["rep", "eval", "--n", "-1"], capsys)[0] == 2


def test_missing_file_exits_2(tmp_path, capsys):
    assert run(["verify", "theorem", str(tmp_path / "nope.json")], capsys)[0] == 2


def test_not_json_exits_2(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert run(["verify", "relations", str(p)], capsys)[0] == 2


def test_unknown_subcommand_exits_2(capsys):
    assert run(["verify", "everything"], capsys)[0] == 2


def test_unwritable_output_exits_2(tmp_path, capsys):
    out = str(tmp_path / "no" / "such" / "dir" / "v.json")
    assert run(["rep", "eval", "--n", "1", "-o", out], capsys)[0] == 2


def test_tampered_file_exits_1(tmp_path, capsys):
    path = make_eval(tmp_path, capsys, 1)
    with open(path) as fh:
        obj = json.load(fh)
    # double F_0 so that the EF-bracket relation breaks
    obj["F"]["0"] = [[f"2*q^0*{x}" for x in row] for row in obj["F"]["0"]]
    bad = write_json(tmp_path, "bad.json", obj)
    code, out, _ = run(["verify", "relations", bad], capsys)
    assert code == 1
    assert doc_of(out)["summary"]["fail"] > 0


# ---------------------------------------------------------------- ktheory


def test_ktheory_a1_zero_v(tmp_path, capsys):
    p = write_json(tmp_path, "a1.json", {"cartan": [[2]], "V": [[]], "W": [[]]})
    code, out, _ = run(["ktheory", p], capsys)
    doc = doc_of(out)
    assert code == 0
    assert doc["lines"]["0"] == {"rank": 0, "det_line": "1"}


def test_ktheory_a1_line(tmp_path, capsys):
    p = write_json(tmp_path, "a1.json", {"cartan": [[2]], "V": [["y"]], "W": [["x1", "x2"]]})
    code, out, _ = run(["ktheory", p, "--node", "0"], capsys)
    doc = doc_of(out)
    assert code == 0
    assert doc["lines"]["0"]["det_line"] == "x1^-1 * x2^-1 * y^2"
    assert doc["lines"]["0"]["rank"] == 0
    assert "rank" in doc["convention"]


def test_ktheory_a2(tmp_path, capsys):
    p = write_json(tmp_path, "a2.json", {
        "cartan": [[2, -1], [-1, 2]],
        "V": [["y1"], ["y2 * q"]],
        "W": [["x1", "x2"], ["x3"]],
    })
    code, out, _ = run(["ktheory", p], capsys)
    doc = doc_of(out)
    assert code == 0
    ids = {c["check"] for c in doc["checks"]}
    assert {"ktheory-det-line[0]", "ktheory-det-line[1]"} <= ids


def test_ktheory_non_ade_exits_2(tmp_path, capsys):
    p = write_json(tmp_path, "bad.json", {"cartan": [[2, -2], [-2, 2]], "V": [[], []], "W": [[], []]})
    assert run(["ktheory", p], capsys)[0] == 2


def test_ktheory_bad_node_exits_2(tmp_path, capsys):
    p = write_json(tmp_path, "a1.json", {"cartan": [[2]], "V": [[]], "W": [[]]})
    assert run(["ktheory", p, "--node", "3"], capsys)[0] == 2


# ---------------------------------------------------------------- process boundary


def test_console_script_subprocess(tmp_path):
    out = tmp_path / "v.json"
    env = dict(os.environ)
    r = subprocess.run([sys.executable, "-m", "qloopweyl.cli", "rep", "eval", "--n", "1", "-o", str(out)],
                       capture_output=True, text=True, env=env)
    assert r.returncode == 0, r.stderr
    r = subprocess.run([sys.executable, "-m", "qloopweyl.cli", "verify", "theorem", str(out)],
                       capture_output=True, text=True, env=env)
    assert r.returncode == 0
    assert json.loads(r.stdout)["summary"]["fail"] == 0
