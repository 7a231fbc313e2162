"""Benchmark the integer group-table kernels: numba against pure numpy.

Run both paths from one process by calling the private implementations
directly; the public wrappers pick a path from SKV_PURE_NUMPY at import
time.  Usage: python3 benchmarks/bench_kernels.py [--sizes 24,48,96]
"""

import argparse
import time

import numpy as np

from skv import _kernels


def cyclic_table(n: int) -> np.ndarray:
    i = np.arange(n)
    return (i[:, None] + i[None, :]) % n


def bench(fn, *args, repeat: int = 200) -> float:
    fn(*args)  # warm up (and trigger jit compilation)
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - t0) / repeat


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="24,48,96,192")
    parser.add_argument("--repeat", type=int, default=200)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"numba available: {_kernels.USE_NUMBA}")
    header = f"{'n':>5} {'kernel':<18} {'numpy':>12} {'numba':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        table = cyclic_table(n)
        inv = np.array([(n - i) % n for i in range(n)])
        gens = np.array([1], dtype=np.int64)
        rows = []
        t_np = bench(_kernels._closure_numpy, table, gens, repeat=args.repeat)
        if _kernels.USE_NUMBA:
            t_nb = bench(_kernels._closure_numba, table, gens,
                         repeat=args.repeat)
        else:
            t_nb = float("nan")
        rows.append(("closure_mask", t_np, t_nb))
        t_np = bench(_kernels._conj_classes_numpy, table, inv,
                     repeat=args.repeat)
        if _kernels.USE_NUMBA:
            t_nb = bench(_kernels._conj_classes_numba, table, inv,
                         repeat=args.repeat)
        else:
            t_nb = float("nan")
        rows.append(("conjugacy_ids", t_np, t_nb))
        for name, t_np, t_nb in rows:
            speed = t_np / t_nb if t_nb == t_nb and t_nb > 0 else float("nan")
            print(f"{n:>5} {name:<18} {t_np * 1e6:>10.1f}us "
                  f"{t_nb * 1e6:>10.1f}us {speed:>7.1f}x")
        # agreement between the two paths
        if _kernels.USE_NUMBA:
            assert np.array_equal(
                _kernels._closure_numpy(table, gens),
                np.asarray(_kernels._closure_numba(table, gens)))
            assert np.array_equal(
                _kernels._conj_classes_numpy(table, inv),
                np.asarray(_kernels._conj_classes_numba(table, inv)))
    print("paths agree on all benchmarked tables")


if __name__ == "__main__":
    main()
