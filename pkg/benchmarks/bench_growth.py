#!/usr/bin/env python3
"""Benchmark the compiled growth kernel against the pure-Python fallback.

Times a few representative workloads on every available backend and prints
a small table with the speedup of the extension over the fallback.

Usage: python benchmarks/bench_growth.py [--repeat N]
"""

import argparse
from time import perf_counter

import numpy as np

from pixtile.engine import available_backends, run
from pixtile.generators import gen_nonuniform, gen_uniform
from pixtile.image import RasterImage, compile_image


def _image_system(side: int):
    rng = np.random.default_rng(42)
    pix = (np.uint32(0xFE000000)
           | rng.integers(0, 1 << 24, size=side * side, dtype=np.uint32))
    return compile_image(RasterImage(side, side, pix))


WORKLOADS = [
    ("uniform shift, 64x64", lambda: gen_uniform(64, 17)[0]),
    ("per-row shift, 48x48",
     lambda: gen_nonuniform(48, list(range(1, 48)))[0]),
    ("compiled image, 64x64", lambda: _image_system(64)),
    ("compiled image, 128x128", lambda: _image_system(128)),
]


def time_run(system, backend: str, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = perf_counter()
        result = run(system, backend=backend)
        best = min(best, perf_counter() - start)
        assert result.halted_reason == "quiescent"
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5,
                        help="timing repetitions per workload (best taken)")
    args = parser.parse_args()

    backends = available_backends()
    header = f"{'workload':<26} " + " ".join(f"{b:>12}" for b in backends)
    if len(backends) > 1:
        header += f" {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, build in WORKLOADS:
        system = build()
        times = [time_run(system, b, args.repeat) for b in backends]
        row = f"{name:<26} " + " ".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) > 1:
            row += f" {times[-1] / times[0]:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
