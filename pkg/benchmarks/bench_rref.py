"""Compare the compiled and pure-Python F_p row-reduction kernels.

Usage: python3 benchmarks/bench_rref.py [--size 120] [--prime 32003] [--repeat 3]
"""
import argparse
import random
import time

from dgkit.arith import _kernels_py

try:
    from dgkit.arith import _kernels
except ImportError:
    _kernels = None


def best_time(fn, rows, ncols, p, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn([list(r) for r in rows], ncols, p)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=120)
    ap.add_argument("--prime", type=int, default=32003)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    n, p = args.size, args.prime
    rows = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
    t_py = best_time(_kernels_py.rref_modp, rows, n, p, args.repeat)
    print(f"pure python  {n}x{n} mod {p}: {t_py * 1e3:9.2f} ms")
    if _kernels is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`")
        return
    assert _kernels.rref_modp([list(r) for r in rows], n, p) == _kernels_py.rref_modp(
        [list(r) for r in rows], n, p)
    t_c = best_time(_kernels.rref_modp, rows, n, p, args.repeat)
    print(f"cython       {n}x{n} mod {p}: {t_c * 1e3:9.2f} ms  (speedup {t_py / t_c:.1f}x)")


if __name__ == "__main__":
    main()
