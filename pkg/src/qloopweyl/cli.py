"""Command-line front end: ``qlw rep ...``, ``qlw verify ...``, ``qlw ktheory ...``.

Exit codes: 0 all checks pass, 1 a check or relation failed, 2 bad input or I/O.
"""
import argparse
import json
import os
import sys
import time
import warnings

from . import __version__
from .kernels import BACKEND
from .report import FAIL, PASS, SKIPPED, RelationError, Report
from .scalar import ParseError, field_from_spec
from .series import ReconstructionError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _window(s):
    try:
        lo, hi = (int(x) for x in s.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("window must look like LO,HI") from None
    if lo > 0 or hi < 0:
        raise argparse.ArgumentTypeError("window must contain 0")
    return lo, hi


def _order(args):
    if args.order is not None:
        return args.order
    env = os.environ.get("QLW_DEFAULT_ORDER")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"QLW_DEFAULT_ORDER must be an integer, got {env!r}") from None
    return None


def _field(args):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            return field_from_spec(args.scalar)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(str(e)) from None


def _scalar(text, field):
    try:
        return field.parse(text)
    except (ParseError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"cannot parse scalar {text!r}: {e}") from None


def _load(path, args, field=None):
    from .looprep import load_rep

    try:
        return load_rep(path, field, args.window or None, _order(args))
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not JSON: {e}") from None
    except RelationError:
        raise
    except (ValueError, TypeError, ParseError) as e:
        raise InputError(f"{path}: {e}") from None


# ---------------------------------------------------------------- output


def _emit(obj, args, text=None):
    if args.format == "text" and text is not None:
        out = text
    else:
        out = json.dumps(obj, indent=1, sort_keys=True, default=str) + "\n"
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(out)
        except OSError as e:
            raise InputError(f"cannot write {args.output}: {e}") from None
    else:
        sys.stdout.write(out)


def _report_doc(command, descriptor, report, started, extra=None):
    doc = {
        "artifact": "qloopweyl",
        "version": __version__,
        "backend": BACKEND,
        "command": command,
        "input": descriptor,
        "summary": report.summary(),
        "checks": report.to_json(),
        "timing": {"seconds": round(time.perf_counter() - started, 3)},
    }
    if extra:
        doc.update(extra)
    return doc


def _report_text(doc):
    lines = [f"qloopweyl {doc['version']} ({doc['backend']}) {doc['command']}"]
    for c in doc["checks"]:
        tag = {PASS: "PASS", FAIL: "FAIL", SKIPPED: "SKIP"}[c["status"]]
        line = f"  {tag}  {c['check']}"
        if c["paper_ref"]:
            line += f"  -- {c['paper_ref']}"
        lines.append(line)
        if c["status"] != PASS and c["witness"] is not None:
            lines.append(f"        witness: {json.dumps(c['witness'], default=str)}")
    for k in ("lines", "convention"):
        if k in doc:
            lines.append(f"{k}: {json.dumps(doc[k])}")
    s = doc["summary"]
    lines.append(f"{s[PASS]} passed, {s[FAIL]} failed, {s[SKIPPED]} skipped")
    return "\n".join(lines) + "\n"


def _finish(command, descriptor, report, started, args, extra=None):
    doc = _report_doc(command, descriptor, report, started, extra)
    _emit(doc, args, _report_text(doc))
    return EXIT_OK if report.ok else EXIT_FAIL


# ---------------------------------------------------------------- rep


def cmd_rep(args):
    from .looprep import direct_sum, eval_module, rep_to_json, shift_twist

    field = _field(args)
    window = args.window or (-3, 3)
    order = _order(args)
    kind = args.kind
    try:
        if kind == "eval":
            if args.n is None or args.n < 0:
                raise InputError("rep eval needs --n >= 0")
            rep = eval_module(args.n, _scalar(args.a, field), field, window, order)
        elif kind == "sum":
            if len(args.files) != 2:
                raise InputError("rep sum needs two representation files")
            r1, r2 = (_load(p, args, field if args.scalar else None) for p in args.files)
            rep = direct_sum(r1, r2)
        elif kind == "twist":
            if len(args.files) != 1 or args.zeta is None:
                raise InputError("rep twist needs --zeta and one representation file")
            base = _load(args.files[0], args, field if args.scalar else None)
            rep = shift_twist(base, _scalar(args.zeta, base.field))
        else:
            if len(args.files) != 1:
                raise InputError("rep load needs one representation file")
            rep = _load(args.files[0], args, field if args.scalar else None)
    except (ValueError, ZeroDivisionError) as e:
        if isinstance(e, RelationError):
            raise
        raise InputError(str(e)) from None
    obj = rep_to_json(rep)
    text = f"dim {rep.dim}, weights {rep.weights}, recipe {rep.meta.get('recipe')}, relations pass\n"
    _emit(obj, args, text)
    return EXIT_OK


# ---------------------------------------------------------------- verify


def _relations(rep):
    from .looprep import check_relations

    return check_relations(rep)


def _weyl(rep, args):
    from .looprep import sl2_matrices
    from .qweyl import check_conjugation, s_closed_form, weyl_triple
    from .scalar import SYMBOLIC

    rr = Report()
    for n in range(args.nmax + 1):
        E, F, K, w = sl2_matrices(n, SYMBOLIC.q, SYMBOLIC)
        rr.add(f"weyl-closed-form[{n}]", weyl_triple(E, F, K, w) == s_closed_form(n), "triple q-exponential equals the closed form on L_n")
    if rep is not None:
        rr.extend(check_conjugation(rep))
    return rr


def _cp(rep):
    from .cp import (cp_series, cp_series_recursive, difference_residual, e_current, psi_rational,
                     verify_commutation, verify_limit_constant, verify_rationality, verify_straightening)

    rr = Report()
    rr.extend(psi_rational(rep)[1])
    rr.extend(e_current(rep)[1])
    series = cp_series(rep)
    rr.add("cp-difference-equation", all(m.is_zero() for m in difference_residual(rep, series)),
           "P(q^2 z) = psibar(z) P(z) coefficientwise")
    rr.add("cp-two-routes", series == cp_series_recursive(rep), "exponential formula equals the recursive solution")
    rr.extend(verify_straightening(rep))
    rr.extend(verify_rationality(rep))
    rr.extend(verify_commutation(rep))
    rr.extend(verify_limit_constant(rep))
    return rr


def _theorem(rep, args):
    from .cp import verify_main_theorem, verify_shift_covariance

    rr = verify_main_theorem(rep)
    if args.zeta:
        rr.extend(verify_shift_covariance(rep, [_scalar(z, rep.field) for z in args.zeta]))
    return rr


def cmd_verify(args):
    from .scalar import verify_qpascal_identities

    started = time.perf_counter()
    what = args.what
    if what == "qpascal":
        if args.rmax < 0 or args.ymax < 0:
            raise InputError("--rmax and --ymax must be >= 0")
        res = verify_qpascal_identities(args.rmax, args.ymax)
        rr = Report()
        rr.add("qpascal", res["ok"], "iterated q-Pascal expansion and alternating sum", res["counterexample"])
        return _finish("verify qpascal", {"rmax": args.rmax, "ymax": args.ymax, "checked": res["checked"]}, rr, started, args)
    if what != "weyl" and args.file is None:
        raise InputError(f"verify {what} needs a representation file")
    rep = None
    if args.file is not None:
        field = _field(args) if args.scalar else None
        try:
            rep = _load(args.file, args, field)
        except RelationError as e:
            return _finish(f"verify {what}", {"file": args.file}, e.report or Report(), started, args)
        descriptor = {"file": os.path.basename(args.file), "dim": rep.dim, "weights": rep.weights,
                      "meta": rep.meta, "window": list(rep.window), "order": rep.order}
    else:
        descriptor = {"nmax": args.nmax}
    if what == "relations":
        rr = _relations(rep)
    elif what == "weyl":
        rr = _weyl(rep, args)
    elif what == "cp":
        rr = _cp(rep)
    elif what == "theorem":
        rr = _theorem(rep, args)
    elif what == "kernel":
        from .cp import verify_kernel_identities
        rr = verify_kernel_identities(rep)
    elif what == "euler":
        from .cp import verify_euler
        rr = verify_euler(rep, args.euler_order)
    else:
        from .abelian import verify_eigenvalues
        rr = verify_eigenvalues(rep)
    return _finish(f"verify {what}", descriptor, rr, started, args)


# ---------------------------------------------------------------- ktheory


KTHEORY_CONVENTION = ("class(C_k) = q^-1(W_k + sum_{a_kl=-1} V_l) - q^-2 V_k - V_k, "
                      "so rank = w_k - 2 v_k + sum v_l")


def cmd_ktheory(args):
    from .abelian import complex_Ck, load_quiver, nakajima_lattice, verify_quiver_instance

    started = time.perf_counter()
    try:
        with open(args.file) as fh:
            obj = json.load(fh)
        cartan, V, W, nodes = load_quiver(obj)
    except OSError as e:
        raise InputError(f"cannot read {args.file}: {e}") from None
    except (json.JSONDecodeError, KeyError, TypeError, ValueError, IndexError) as e:
        raise InputError(f"bad quiver file {args.file}: {e}") from None
    if args.node is not None:
        nodes = [args.node]
    nodes = list(range(len(cartan))) if nodes is None else list(nodes)
    if any(not 0 <= k < len(cartan) for k in nodes):
        raise InputError("node index out of range")
    try:
        rr = verify_quiver_instance(cartan, V, W, nodes, args.series_order)
        lines = {}
        for k in nodes:
            Ck, rank = complex_Ck(cartan, k, V, W)
            lines[str(k)] = {"rank": rank, "det_line": str(nakajima_lattice(Ck, rank)[0])}
    except ValueError as e:
        raise InputError(str(e)) from None
    descriptor = {"file": os.path.basename(args.file), "cartan": cartan, "nodes": nodes}
    return _finish("ktheory", descriptor, rr, started, args, {"lines": lines, "convention": KTHEORY_CONVENTION})


# ---------------------------------------------------------------- parser


def _is_number(x):
    try:
        float(x)
        return True
    except ValueError:
        return False


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=None, help="series order override (default 2*dim+8)")
    common.add_argument("--window", type=_window, default=None, help="mode window LO,HI (default -3,3)")
    common.add_argument("--scalar", default=None, help="symbolic (default) or rational:q0")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("-o", "--output", default=None, help="output path (default stdout)")

    p = argparse.ArgumentParser(prog="qlw", description="exact verification for quantum loop sl2 representations")
    p.add_argument("--version", action="version", version=f"qlw {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("rep", parents=[common], help="build or load a representation file")
    r.add_argument("kind", choices=("eval", "sum", "twist", "load"))
    r.add_argument("files", nargs="*")
    r.add_argument("--n", type=int, default=None)
    r.add_argument("--a", default="1")
    r.add_argument("--zeta", default=None)
    r.set_defaults(func=cmd_rep)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("what", choices=("relations", "weyl", "cp", "theorem", "kernel", "euler", "eigen", "qpascal"))
    v.add_argument("file", nargs="?", default=None)
    v.add_argument("--rmax", type=int, default=8)
    v.add_argument("--ymax", type=int, default=8)
    v.add_argument("--nmax", type=int, default=5)
    v.add_argument("--euler-order", type=int, default=10)
    v.add_argument("--zeta", action="append", default=None, help="also check shift covariance for this twist")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("ktheory", parents=[common], help="quiver K-theory checks")
    k.add_argument("file")
    k.add_argument("--node", type=int, default=None)
    k.add_argument("--series-order", type=int, default=10)
    k.set_defaults(func=cmd_ktheory)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        # positionals given after options land in extra
        for x in extra:
            if x.startswith("-") and not _is_number(x):
                parser.error(f"unrecognized arguments: {x}")
            if hasattr(args, "files"):
                args.files.append(x)
            elif getattr(args, "file", "") is None:
                args.file = x
            else:
                parser.error(f"unrecognized arguments: {x}")
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as e:
        print(f"qlw: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except RelationError as e:
        print(f"qlw: relation check failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    except ReconstructionError as e:
        print(f"qlw: error: {e}; raise --order", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
