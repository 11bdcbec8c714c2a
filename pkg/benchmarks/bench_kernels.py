"""Compare the compiled kernels with the pure-Python fallback.

Each backend runs in its own interpreter (the backend is chosen at import),
so this script re-invokes itself with and without KELLERKIT_PURE_PYTHON.

    python benchmarks/bench_kernels.py [--repeat 3] [--heavy]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def _cyclic(n):
    from kellerkit.polycore import parse_polynomial
    xs = [f"x{i + 1}" for i in range(n)]
    gens = [" + ".join("*".join(xs[(i + j) % n] for j in range(k)) for i in range(n))
            for k in range(1, n)]
    gens.append("*".join(xs) + " - 1")
    return [parse_polynomial(g, n) for g in gens]


def _workloads(heavy=False):
    from kellerkit.endo import GeneratorSpec, generate_family, invert
    from kellerkit.groebner import MonomialOrder, buchberger
    from kellerkit.polycore import parse_polynomial

    p = parse_polynomial("(x1 + 2*x2 - x3 + 3)^10", 3)
    q = parse_polynomial("(x1*x2 - x3^2 + x1 - 1)^8", 3)
    n = 6 if heavy else 5
    cyclic = _cyclic(n)
    maps = [generate_family(GeneratorSpec("composed", s, n=3, degree=3, factors=3))
            for s in range(8)]

    return {
        "poly_mul": lambda: p * q,
        f"buchberger_cyclic{n}": lambda: buchberger(cyclic, MonomialOrder.grevlex(n)),
        "invert_composed_n3": lambda: [invert(F) for F in maps],
    }


def _child(repeat, heavy):
    from kellerkit import _kernels
    out = {"backend": _kernels.BACKEND}
    for name, fn in _workloads(heavy).items():
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        out[name] = best
    print(json.dumps(out))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--heavy", action="store_true", help="use cyclic-6 (tens of seconds)")
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.child:
        _child(args.repeat, args.heavy)
        return 0

    results = []
    for pure in ("", "1"):
        env = dict(os.environ, KELLERKIT_PURE_PYTHON=pure)
        res = subprocess.run([sys.executable, __file__, "--child", "--repeat", str(args.repeat)]
                             + ["--heavy"] * args.heavy,
                             env=env, capture_output=True, text=True, check=True)
        results.append(json.loads(res.stdout))
    fast, slow = results
    if fast["backend"] != "cython":
        print("compiled extension not built; both runs used the pure-Python kernels")
    print(f"{'workload':<22}{fast['backend']:>10}{slow['backend']:>10}{'speedup':>10}")
    for name in fast:
        if name == "backend":
            continue
        print(f"{name:<22}{fast[name]:>9.3f}s{slow[name]:>9.3f}s{slow[name] / fast[name]:>9.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
