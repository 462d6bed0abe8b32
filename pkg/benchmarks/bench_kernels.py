#!/usr/bin/env python3
"""Compare the numba kernels against the pure-numpy fallbacks.

Run from the repo root:

    python benchmarks/bench_kernels.py [--edges 2000000] [--repeat 5]

The same workload is timed on both backends and the outputs are checked for
bit-identity while we are at it. Force the fallback at package level with
CRITYEARS_NO_NUMBA=1 to sanity-check a deployment without numba.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from crityears import kernels


def make_workload(n_edges: int, n_papers: int = 50_000, n_subjects: int = 254,
                  n_years: int = 40, seed: int = 0):
    rng = np.random.default_rng(seed)
    deg = rng.choice([1, 1, 1, 2], size=n_papers)  # mostly single-subject
    offsets = np.zeros(n_papers + 1, dtype=np.int64)
    np.cumsum(deg, out=offsets[1:])
    codes = rng.integers(0, n_subjects, size=int(offsets[-1])).astype(np.int32)
    citing = rng.integers(0, n_papers, size=n_edges).astype(np.int64)
    cited = rng.integers(0, n_papers, size=n_edges).astype(np.int64)
    year_off = rng.integers(0, n_years, size=n_edges).astype(np.int64)
    return citing, cited, year_off, offsets, codes, n_subjects, n_years


def timeit(fn, repeat: int):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--edges", type=int, default=2_000_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    work = make_workload(args.edges)
    print(f"workload: {args.edges:,} edges, 254 subjects, 40 years")
    print(f"{'kernel':<16} {'numpy':>10} {'numba':>10} {'speedup':>9}  identical")

    # warm the jit compile outside the timed region
    kernels._expand_pairs_numba(*work[:5], work[5], work[6], False)

    t_np, (k_np, w_np) = timeit(
        lambda: kernels._expand_pairs_numpy(*work[:5], work[5], work[6], False), args.repeat
    )
    t_nb, (k_nb, w_nb) = timeit(
        lambda: kernels._expand_pairs_numba(*work[:5], work[5], work[6], False), args.repeat
    )
    same = np.array_equal(k_np, k_nb) and w_np.tobytes() == w_nb.tobytes()
    print(f"{'expand_pairs':<16} {t_np:>9.3f}s {t_nb:>9.3f}s {t_np / t_nb:>8.2f}x  {same}")

    keys, weights = k_np, w_np * np.random.default_rng(1).choice([0.25, 1.0], size=w_np.size)
    kernels._reduce_keyed_numba(keys[:1000], weights[:1000])
    t_np, (u_np, s_np) = timeit(lambda: kernels._reduce_keyed_numpy(keys, weights), args.repeat)
    t_nb, (u_nb, s_nb) = timeit(lambda: kernels._reduce_keyed_numba(keys, weights), args.repeat)
    same = np.array_equal(u_np, u_nb) and s_np.tobytes() == s_nb.tobytes()
    print(f"{'reduce_keyed':<16} {t_np:>9.3f}s {t_nb:>9.3f}s {t_np / t_nb:>8.2f}x  {same}")

    rng = np.random.default_rng(2)
    ir = rng.integers(0, 50, size=(32_131, 40)).astype(np.float64)
    ic = rng.integers(0, 50, size=(32_131, 40)).astype(np.float64)
    kernels._metric_arrays_numba(ir[:10], ic[:10])
    t_np, out_np = timeit(lambda: kernels._metric_arrays_numpy(ir, ic), args.repeat)
    t_nb, out_nb = timeit(lambda: kernels._metric_arrays_numba(ir, ic), args.repeat)
    same = all(a.tobytes() == b.tobytes() for a, b in zip(out_np, out_nb))
    print(f"{'metric_arrays':<16} {t_np:>9.3f}s {t_nb:>9.3f}s {t_np / t_nb:>8.2f}x  {same}")


if __name__ == "__main__":
    main()
