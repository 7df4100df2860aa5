"""Compare the compiled kernels against the pure-numpy fallback.

Times the two hot paths (range classification and exact top-k selection)
on a synthetic table and prints a small table with speedups. Run as:

    python benchmarks/bench_kernels.py [--rows 200000] [--repeat 7]
"""

import argparse
import time

import numpy as np

from alloy_explorer.data import compute_norm_stats, normalize
from alloy_explorer.filtering import BoundsSpec
from alloy_explorer.kernels import available_backends
from alloy_explorer.neighbors import TargetVector, normalize_target
from alloy_explorer.synthetic import synthesize_dataset


def best_of(repeat, fn, *args):
    timings = []
    for _ in range(repeat):
        started = time.perf_counter()
        fn(*args)
        timings.append(time.perf_counter() - started)
    return min(timings)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", type=int, default=200_000)
    parser.add_argument("--repeat", type=int, default=7)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    backends = available_backends()
    if len(backends) < 2:
        print(f"only {sorted(backends)} available; build the extension to compare")

    ds = synthesize_dataset(args.rows, seed=args.seed)
    stats = compute_norm_stats(ds)
    norm = np.ascontiguousarray(normalize(ds, stats))
    values = np.ascontiguousarray(ds.values)

    bounds = BoundsSpec(
        {
            "YS": (200.0, 330.0),
            "Density": (2.5, 2.75),
            "Hardness": (80.0, 130.0),
            "Si": (0.0, 6.0),
        }
    )
    col_idx = np.array([stats.index(n) for n in bounds.entries], dtype=np.int64)
    lows = np.array([lo for lo, _ in bounds.entries.values()])
    highs = np.array([hi for _, hi in bounds.entries.values()])
    margins = 0.05 * (stats.maxs[col_idx] - stats.mins[col_idx])
    lo_soft, hi_soft = lows - margins, highs + margins

    rng = np.random.default_rng(args.seed)
    target = TargetVector(
        {str(n): float(rng.uniform(stats.mins[stats.index(str(n))],
                                   stats.maxs[stats.index(str(n))]))
         for n in rng.choice(stats.columns, size=6, replace=False)}
    )
    t_idx, t_coords = normalize_target(target, stats)
    t_idx = t_idx.astype(np.int64)

    print(f"rows={args.rows}  classify dims={len(bounds.entries)}  top-k dims={t_idx.size}")
    print(f"{'kernel':<22}{'backend':<10}{'best of ' + str(args.repeat):>14}{'speedup':>10}")
    for label, fn_name, runner_args in (
        ("classify_rows", "classify_rows", (values, col_idx, lows, highs, lo_soft, hi_soft)),
        ("select_nearest k=10", "select_nearest", (norm, t_idx, t_coords, 10)),
        ("select_nearest k=100", "select_nearest", (norm, t_idx, t_coords, 100)),
    ):
        # slowest-first (the numpy fallback) so speedups read "vs fallback"
        reference = None
        for name in sorted(backends, reverse=True):
            fn = getattr(backends[name], fn_name)
            elapsed = best_of(args.repeat, fn, *runner_args)
            if reference is None:
                reference = elapsed
            print(f"{label:<22}{name:<10}{elapsed * 1e3:>11.2f} ms{reference / elapsed:>9.2f}x")


if __name__ == "__main__":
    main()
