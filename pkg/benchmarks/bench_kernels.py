"""Benchmark the compiled kernels against the pure-numpy fallback.

Runs the hot paths at analysis-realistic sizes (level-10 traversals,
512**2-sample symbolizations) and prints best-of-N wall times for both
backends plus the speedup. Usage:

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from ordtex._kernels import _purepy

try:
    from ordtex._kernels import _core
except ImportError:
    _core = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5, help="best-of repetitions")
    args = ap.parse_args()

    level = 10
    n = 4**level
    rng = np.random.default_rng(7)
    seq = rng.standard_normal(n)
    seq_small = seq[: 512 * 512]
    patches = rng.standard_normal((260099, 8))
    xs, ys = _purepy.curve_xy(level)

    cases = [
        ("curve_xy level 10", lambda m: m.curve_xy(level)),
        ("index_of 4^10 cells", lambda m: m.index_of(level, xs, ys)),
        ("counts_1d D=6 tau=1, 4^10 samples", lambda m: m.counts_1d(seq, 6, 1)),
        ("counts_1d D=8 tau=1, 512^2 samples", lambda m: m.counts_1d(seq_small, 8, 1)),
        ("window_codes 260099x8", lambda m: m.window_codes(patches)),
    ]

    if _core is None:
        print("compiled backend unavailable; timing the numpy fallback only")
    header = f"{'kernel':38s} {'numpy':>10s} {'compiled':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, call in cases:
        t_py = best_of(lambda: call(_purepy), args.repeat)
        if _core is None:
            print(f"{name:38s} {t_py * 1e3:9.2f}ms {'-':>10s} {'-':>8s}")
            continue
        t_c = best_of(lambda: call(_core), args.repeat)
        print(
            f"{name:38s} {t_py * 1e3:9.2f}ms {t_c * 1e3:9.2f}ms {t_py / t_c:7.2f}x"
        )

    if _core is not None:
        ok = True
        ok &= bool(np.array_equal(_purepy.counts_1d(seq_small, 6, 2), _core.counts_1d(seq_small, 6, 2)))
        ok &= bool(np.array_equal(_purepy.window_codes(patches), _core.window_codes(patches)))
        cx, cy = _core.curve_xy(8)
        px, py = _purepy.curve_xy(8)
        ok &= bool(np.array_equal(cx, px) and np.array_equal(cy, py))
        print(f"\nbackend agreement on benchmark inputs: {'ok' if ok else 'MISMATCH'}")


if __name__ == "__main__":
    main()
