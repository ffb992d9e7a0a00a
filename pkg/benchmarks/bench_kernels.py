"""Timing comparison of the compiled kernels against the plain-numpy path.

Run:  python3 benchmarks/bench_kernels.py [--sizes 8,32,64] [--repeats 5]

Reports per-kernel wall times for both implementations on identical seeded
inputs, plus the speedup.  The first compiled call includes JIT compilation
and is timed separately as "warmup".
"""

import argparse
import time

import numpy as np

from propersplit import _kernels as K


def _contraction(rng, n):
    h = rng.uniform(0.0, 1.0, (n, n))
    h *= 0.9 / np.abs(np.linalg.eigvals(h)).max()
    return np.ascontiguousarray(h)


def _time(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench(n, repeats):
    rng = np.random.default_rng(n)
    h = _contraction(rng, n)
    c = rng.standard_normal(n)
    x0 = np.zeros(n)
    cm = rng.standard_normal((n, n))
    x0m = np.zeros((n, n))

    cases = [
        ("fixed_point_vector", (h, c, x0, 20_000, 1e-12, 1e12)),
        ("fixed_point_matrix", (h, cm, x0m, 20_000, 1e-12, 1e12)),
        ("power_iteration", (np.abs(h), 50_000, 1e-10, 1e-14, 10)),
        ("neumann_sum", (h, 400)),
        ("gelfand_radius", (h, 52)),
    ]
    rows = []
    for name, args in cases:
        jit = getattr(K, name)
        py = getattr(K, f"{name}_py")
        warmup = _time(jit, *args, repeats=1)
        t_jit = _time(jit, *args, repeats=repeats)
        t_py = _time(py, *args, repeats=repeats)
        rows.append((name, n, t_py, t_jit, warmup, t_py / t_jit))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="8,32,64")
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    mode = "numba" if K.NUMBA_ENABLED else "python (set PROPERSPLIT_NO_NUMBA=0 to compile)"
    print(f"compiled path: {mode}")
    header = f"{'kernel':22} {'n':>4} {'python':>10} {'compiled':>10} {'warmup':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        for name, size, t_py, t_jit, warmup, speedup in bench(n, args.repeats):
            print(
                f"{name:22} {size:>4} {t_py * 1e3:>9.3f}ms {t_jit * 1e3:>9.3f}ms "
                f"{warmup * 1e3:>9.3f}ms {speedup:>7.1f}x"
            )


if __name__ == "__main__":
    main()
