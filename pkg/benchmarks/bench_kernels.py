"""Compiled recurrence kernel vs the NumPy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--csv]

Times ``ultra_table`` (p, p', p'', p''' for all degrees up to kmax) on
grids of increasing size and checks that both kernels agree.
"""
import argparse
import sys
import timeit

import numpy as np

from ultraturan import _kernels_py, kernels

CASES = [(61, 101), (61, 1001), (61, 10001), (201, 1001), (201, 10001), (1001, 1001)]


def best_of(fn, repeat: int) -> float:
    t = timeit.Timer(fn)
    number, _ = t.autorange()
    return min(t.repeat(repeat=repeat, number=number)) / number


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--lambda", dest="lam", type=float, default=1.5)
    ap.add_argument("--csv", action="store_true")
    args = ap.parse_args(argv)
    if not kernels.compiled_available():
        print("compiled extension not built; only the fallback can be timed", file=sys.stderr)
    from ultraturan import _kernels  # noqa: F401  (fails loudly if missing)

    rows = []
    for kmax, m in CASES:
        x = np.linspace(-1.0, 1.0, m)
        ref = _kernels_py.ultra_table(args.lam, kmax, x)
        got = _kernels.ultra_table(args.lam, kmax, x)
        err = max(float(np.max(np.abs(g - r) / np.maximum(np.abs(r).max(), 1))) for g, r in zip(got, ref))
        t_py = best_of(lambda: _kernels_py.ultra_table(args.lam, kmax, x), args.repeat)
        t_cy = best_of(lambda: _kernels.ultra_table(args.lam, kmax, x), args.repeat)
        rows.append((kmax, m, t_py, t_cy, t_py / t_cy, err))

    if args.csv:
        print("kmax,points,numpy_s,compiled_s,speedup,max_rel_diff")
        for r in rows:
            print(",".join(repr(v) for v in r))
    else:
        print(f"{'kmax':>5} {'points':>7} {'numpy [ms]':>11} {'compiled [ms]':>14} {'speedup':>8} {'max rel diff':>13}")
        for kmax, m, a, b, s, e in rows:
            print(f"{kmax:>5} {m:>7} {a * 1e3:>11.3f} {b * 1e3:>14.3f} {s:>8.2f} {e:>13.1e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
