"""Time the search kernels on each available backend.

    python3 benchmarks/bench_kernels.py [--repeat N]

The numba column excludes compilation (one warm-up call first).
"""

import argparse
import time

from descentlab import kernels

CASES = [
    # m = 5 with (a, b) = (1, 1) has no shell hit, so these scan every shell
    ("qb_scan exhaustive m=5 k<=1000", kernels.qb_scan, (1, 1, 1, 1000, False)),
    ("qb_scan odd/even m=5 k<=1000", kernels.qb_scan, (1, 1, 1, 1000, True)),
    ("torsor_scan p=797 (hit at k=1462)", kernels.torsor_scan, (11, 13, 1, 2000)),
]


def bench(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-exact", action="store_true", help="omit the pure Python path")
    ns = ap.parse_args()
    backends = [b for b in kernels.available_backends() if not (ns.skip_exact and b == "exact")]
    print(f"{'case':40s}" + "".join(f"{b:>12s}" for b in backends))
    for name, fn, args in CASES:
        row, outs = [], []
        for b in backends:
            old = kernels.use_backend(b)
            try:
                fn(*args)  # warm-up / compile
                t, out = bench(fn, args, ns.repeat)
            finally:
                kernels.use_backend(old)
            row.append(t)
            outs.append(out)
        same = all(o == outs[0] for o in outs)
        print(f"{name:40s}" + "".join(f"{t:11.4f}s" for t in row) + ("" if same else "  MISMATCH"))


if __name__ == "__main__":
    main()
