"""Time each filter on the compiled and the numpy backend.

    python benchmarks/bench_backends.py --size 256 --repeat 5

Prints a CSV row per (filter, backend, workers) with the best wall time
in milliseconds, and checks that every backend produced the same bytes.
"""
import argparse
import sys
import timeit
import warnings

import numpy as np

import imfilt as F
from imfilt import _backend, synthetic

FILTERS = {
    "box_r2": lambda img, n: F.box_blur(img, F.BoxParams(2), workers=n),
    "convolve_5x5": lambda img, n: F.convolve_naive(img, F.Kernel.uniform(5), workers=n),
    "gaussian_s1.5": lambda img, n: F.gaussian_blur(img, F.GaussianParams(1.5), workers=n),
    "median_w1": lambda img, n: F.median_filter(img, F.MedianParams(1), workers=n),
    "median_w3": lambda img, n: F.median_filter(img, F.MedianParams(3), workers=n),
    "switching_median": lambda img, n: F.switching_median(img, F.SwitchingMedianParams(), workers=n).restored,
    "bilateral_r3": lambda img, n: F.bilateral_filter(img, F.BilateralParams(2.0, 30.0, 3), workers=n),
}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=256)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--workers", default="1,4", help="comma list of thread counts")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args(argv)
    warnings.simplefilter("ignore", F.KernelSizeWarning)

    clean = synthetic.step(args.size)
    img, _ = F.add_salt_pepper(clean, 0.2, args.seed)
    workers = [int(w) for w in args.workers.split(",")]

    print("filter,backend,workers,best_ms,speedup_vs_python")
    mismatches = 0
    for name, fn in FILTERS.items():
        baseline = None
        reference = None
        for backend in sorted(_backend.available(), reverse=True):  # python first
            with _backend.use(backend):
                for n in workers:
                    out = fn(img, n).pixels.tobytes()
                    if reference is None:
                        reference = out
                    elif out != reference:
                        mismatches += 1
                        print(f"# MISMATCH {name} {backend} workers={n}", file=sys.stderr)
                    best = min(timeit.repeat(lambda: fn(img, n), number=1, repeat=args.repeat)) * 1000
                    if backend == "python" and n == 1:
                        baseline = best
                    print(f"{name},{backend},{n},{best:.2f},{baseline / best:.1f}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
