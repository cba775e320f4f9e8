"""Compiled against pure-Python kernels on completion histograms.

    python benchmarks/bench_kernels.py [--max-order 7] [--repeat 3]

Both implementations must return identical histograms; the script exits
non-zero otherwise.
"""
import argparse
import sys
import time

from dirac_chords import _kernels_py

try:
    from dirac_chords import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`")
        return 1

    print(f"{'bases':<10} {'diagrams':>10} {'compiled s':>11} {'python s':>10} {'ratio':>7}")
    ok = True
    for N in range(2, args.max_order + 1):
        for sizes in ([2 * N], [2, 2 * N - 2]):
            partner = [-1] * sum(sizes)
            t_c, h_c = best_of(lambda: _kernels.s_histogram(sizes, partner, N), args.repeat)
            t_p, h_p = best_of(lambda: _kernels_py.s_histogram(sizes, partner, N), 1)
            ok &= dict(h_c) == dict(h_p)
            label = "+".join(str(m) for m in sizes)
            print(f"{label:<10} {sum(h_c.values()):>10} {t_c:>11.4f} {t_p:>10.4f} {t_p / t_c:>7.1f}")
    print("histograms identical" if ok else "HISTOGRAM MISMATCH")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
