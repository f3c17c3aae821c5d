"""Compare the compiled and pure-Python polynomial kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--no-pipeline]

Part one times mul/divexact/evalint from both modules on random inputs.
Part two runs one end-to-end check in a subprocess per backend, selected
with QLW_PURE_PYTHON.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from qloopweyl import _pykernels

try:
    from qloopweyl import _ckernels
except ImportError:
    _ckernels = None

PIPELINE = (
    "from qloopweyl.looprep import eval_module;"
    "from qloopweyl.cp import verify_main_theorem;"
    "from qloopweyl.kernels import BACKEND;"
    "r = verify_main_theorem(eval_module(3, 1));"
    "assert r.ok; print(BACKEND)"
)


def cases(rng, size, bits):
    a = [rng.randint(-2 ** bits, 2 ** bits) for _ in range(size)]
    b = [rng.randint(-2 ** bits, 2 ** bits) for _ in range(size)]
    a[-1] = a[-1] or 1
    b[-1] = b[-1] or 1
    return a, b


def bench_kernels(repeat):
    rng = random.Random(1)
    rows = []
    for size, bits in ((4, 8), (16, 16), (64, 20), (64, 80)):
        a, b = cases(rng, size, bits)
        ab = _pykernels.mul(a, b)
        for name, args in (("mul", (a, b)), ("divexact", (ab, b)), ("evalint", (a, 12345))):
            row = [f"{name} n={size} {bits}b"]
            for mod in (_pykernels, _ckernels):
                if mod is None:
                    row.append(None)
                    continue
                f = getattr(mod, name)
                n = max(1, repeat // size)
                row.append(min(timeit.repeat(lambda: f(*args), number=n, repeat=3)) / n)
            rows.append(row)
    return rows


def bench_pipeline():
    out = {}
    for label, env in (("cython", {}), ("python", {"QLW_PURE_PYTHON": "1"})):
        e = dict(os.environ)
        e.pop("QLW_PURE_PYTHON", None)
        e.update(env)
        t = timeit.default_timer()
        r = subprocess.run([sys.executable, "-c", PIPELINE], env=e, capture_output=True, text=True)
        dt = timeit.default_timer() - t
        if r.returncode:
            raise SystemExit(r.stderr)
        out[label] = (r.stdout.strip(), dt)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20000)
    ap.add_argument("--no-pipeline", action="store_true")
    args = ap.parse_args()
    print(f"{'kernel':24s} {'python (us)':>12s} {'cython (us)':>12s} {'speedup':>8s}")
    for name, py, cy in bench_kernels(args.repeat):
        if cy is None:
            print(f"{name:24s} {py * 1e6:12.2f} {'n/a':>12s}")
        else:
            print(f"{name:24s} {py * 1e6:12.2f} {cy * 1e6:12.2f} {py / cy:7.1f}x")
    if not args.no_pipeline:
        print()
        print("main theorem on eval(3,1), fresh process:")
        for label, (backend, dt) in bench_pipeline().items():
            print(f"  requested {label:7s} got {backend:7s} {dt:6.2f} s")


if __name__ == "__main__":
    main()
