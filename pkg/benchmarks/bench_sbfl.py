#!/usr/bin/env python3
"""Benchmark the SBFL batch kernels: numba-jitted loops vs pure numpy.

Generates synthetic coverage matrices (tests x lines) at several sizes and
times per-line count derivation plus all four formula evaluations on each
backend.

Usage:
    python benchmarks/bench_sbfl.py
    python benchmarks/bench_sbfl.py --sizes 200x2000 1000x20000 --repeats 5
    python benchmarks/bench_sbfl.py --output results.json
"""

import argparse
import json
import time

import numpy as np

from codehinter.sbfl.formulas import FORMULAS
from codehinter.sbfl.kernels import (
    NUMBA_AVAILABLE,
    counts_numba,
    counts_numpy,
    scores_numba,
    scores_numpy,
)


def synthetic_spectrum(n_tests, n_lines, seed, fail_rate=0.2, density=0.3):
    rng = np.random.default_rng(seed)
    coverage = (rng.random((n_tests, n_lines)) < density).astype(np.uint8)
    failing = rng.random(n_tests) < fail_rate
    if not failing.any():
        failing[0] = True
    return coverage, failing


def warmup_jit():
    if not NUMBA_AVAILABLE:
        return
    coverage, failing = synthetic_spectrum(4, 8, seed=0)
    ef, ep = counts_numba(coverage, failing)
    for formula in FORMULAS:
        scores_numba(ef, ep, int(failing.sum()), int((~failing).sum()), formula)


def time_backend(counts_fn, scores_fn, coverage, failing, repeats):
    total_fail = int(failing.sum())
    total_pass = int((~failing).sum())
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        ef, ep = counts_fn(coverage, failing)
        for formula in FORMULAS:
            scores_fn(ef, ep, total_fail, total_pass, formula)
        best = min(best, time.perf_counter() - start)
    return best


def parse_size(text):
    tests, _, lines = text.partition("x")
    return int(tests), int(lines)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes",
        nargs="+",
        default=["50x500", "200x2000", "500x10000", "1000x50000"],
        help="spectrum sizes as TESTSxLINES",
    )
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--output", help="write results as JSON")
    args = parser.parse_args()

    print("SBFL kernel benchmark: per-line counts + all four formulas")
    if NUMBA_AVAILABLE:
        print("warming up JIT compilation...")
        warmup_jit()
    else:
        print("numba unavailable or disabled; timing numpy only")

    header = f"{'tests x lines':>16} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    results = []
    for size_text in args.sizes:
        n_tests, n_lines = parse_size(size_text)
        coverage, failing = synthetic_spectrum(n_tests, n_lines, seed=n_tests + n_lines)
        numpy_s = time_backend(counts_numpy, scores_numpy, coverage, failing, args.repeats)
        if NUMBA_AVAILABLE:
            numba_s = time_backend(counts_numba, scores_numba, coverage, failing, args.repeats)
            speedup = numpy_s / numba_s if numba_s > 0 else float("inf")
            print(
                f"{size_text:>16} {numpy_s * 1e3:>12.3f} {numba_s * 1e3:>12.3f} "
                f"{speedup:>8.2f}x"
            )
        else:
            numba_s = None
            speedup = None
            print(f"{size_text:>16} {numpy_s * 1e3:>12.3f} {'-':>12} {'-':>9}")
        results.append(
            {
                "tests": n_tests,
                "lines": n_lines,
                "numpy_seconds": numpy_s,
                "numba_seconds": numba_s,
                "speedup": speedup,
            }
        )

    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump({"results": results, "numba_available": NUMBA_AVAILABLE}, fh, indent=2)
        print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
