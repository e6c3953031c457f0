#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Times the individual hot kernels and a composed iterate-evolution loop on
representative sizes, printing one table row per (operation, size) with
the speedup of the compiled extension.

Run:  python benchmarks/bench_kernels.py [--repeats 7]
"""

import argparse
import time

import numpy as np

from groverlab import _kernels_py

try:
    from groverlab import _kernels_c
except ImportError:
    _kernels_c = None


def median_time(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return sorted(times)[len(times) // 2]


def make_state(n, k, seed=0):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal(((1 << n), k)) + 1j * rng.standard_normal(((1 << n), k))
    a /= np.linalg.norm(a, axis=0, keepdims=True)
    return np.ascontiguousarray(a)


def evolve_loop(impl, a, axis, rows, steps):
    # the original-iterate kernel sequence: phase, H, reflect, H, sign
    for _ in range(steps):
        impl.phase_rows(a, rows, -1.0 + 0.0j)
        impl.hadamard_all(a)
        impl.reflect(a, axis, -2.0 + 0.0j)
        impl.hadamard_all(a)
        impl.scale(a, -1.0 + 0.0j)
        impl.marked_prob(a, rows)


def benchmarks():
    cases = []
    for n in (8, 10, 12):
        a0 = make_state(n, 1)
        cases.append((f"hadamard vector n={n}", lambda impl, a0=a0: [
            impl.hadamard_all(a0.copy()) for _ in range(50)]))
    for n, k in ((8, 256), (10, 1024)):
        a0 = make_state(n, k)
        cases.append((f"hadamard batch n={n} k={k}", lambda impl, a0=a0: [
            impl.hadamard_all(a0.copy()) for _ in range(5)]))
    rows = np.array([3], dtype=np.int64)
    for n, k, steps in ((10, 1, 2000), (10, 256, 50), (12, 1, 500)):
        a0 = make_state(n, k, seed=1)
        axis = np.zeros(1 << n, dtype=np.complex128)
        axis[0] = 1.0
        cases.append((
            f"evolve n={n} k={k} steps={steps}",
            lambda impl, a0=a0, axis=axis, steps=steps: evolve_loop(
                impl, a0.copy(), axis, rows, steps)))
    return cases


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=7)
    args = parser.parse_args()

    if _kernels_c is None:
        print("compiled kernels not built; timing the python backend only")
    header = f"{'benchmark':34} {'python':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, fn in benchmarks():
        t_py = median_time(lambda: fn(_kernels_py), args.repeats)
        if _kernels_c is not None:
            t_c = median_time(lambda: fn(_kernels_c), args.repeats)
            print(f"{name:34} {t_py * 1e3:9.2f}ms {t_c * 1e3:9.2f}ms "
                  f"{t_py / t_c:7.2f}x")
        else:
            print(f"{name:34} {t_py * 1e3:9.2f}ms {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
