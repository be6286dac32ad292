#!/usr/bin/env python3
"""Reproduce the unconstrained noisy-maximization benchmark table.

Runs the Monte-Carlo comparison (double greedy on the exact and noisy
oracles, random subset, and the surrogate meta-algorithm at two sample
counts) for n=50 and n=100 and prints one summary table per row.

Usage:
    python scripts/run_benchmark.py [--trials 1000] [--seed 0] [--out-dir results]
"""
import argparse
import pathlib
import time

from noisysubmax.harness import ExperimentSpec, run_experiment


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--sizes", type=int, nargs="+", default=[50, 100])
    parser.add_argument("--workers", type=int, default=0)
    parser.add_argument("--out-dir", type=str, default=None,
                        help="write one CSV per ground-set size here")
    args = parser.parse_args()

    for n in args.sizes:
        spec = ExperimentSpec(n=n, trials=args.trials, master_seed=args.seed,
                              workers=args.workers)
        start = time.perf_counter()
        result = run_experiment(spec)
        elapsed = time.perf_counter() - start
        print(f"== n={n}  trials={args.trials}  ({elapsed:.1f}s) ==")
        print(result.table())
        print()
        if args.out_dir:
            out = pathlib.Path(args.out_dir)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"benchmark_n{n}.csv").write_text(result.to_csv())


if __name__ == "__main__":
    main()
