"""Benchmark the compiled stepping kernel against the scipy fallback.

Usage: python benchmarks/bench_evolve.py [--repeats N]
"""

import argparse
import time

import numpy as np

from qcavity import kernels
from qcavity.model import CavityModel
from qcavity.oracle import evolve_family
from qcavity.wavefunctions import kind_i, lift_quantized


def time_case(state, n_points, n_steps, backend, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        res = evolve_family(state, 1.0, n_points, n_steps, backend=backend)
        best = min(best, time.perf_counter() - start)
    return best, res.max_deviation


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    cases = [
        ("complex 2000x2000", kind_i(CavityModel(), 1), 2000, 2000),
        ("complex 4000x4000", kind_i(CavityModel(), 1), 4000, 4000),
        ("coupled 2000x2000", lift_quantized(CavityModel(w0=0.8), 1, "left"),
         2000, 2000),
    ]
    backends = kernels.available_backends()
    print(f"available backends: {', '.join(backends)}")
    print(f"{'case':20s} " + " ".join(f"{b + ' [s]':>12s}" for b in backends)
          + f" {'speedup':>9s} {'max dev':>10s}")
    for label, state, n_points, n_steps in cases:
        times = {}
        dev = None
        for backend in backends:
            times[backend], dev = time_case(state, n_points, n_steps,
                                            backend, args.repeats)
        row = f"{label:20s} " + " ".join(f"{times[b]:12.3f}" for b in backends)
        if "cython" in times and "python" in times:
            row += f" {times['python'] / times['cython']:8.1f}x"
        else:
            row += f" {'n/a':>9s}"
        row += f" {dev:10.2e}"
        print(row)


if __name__ == "__main__":
    main()
