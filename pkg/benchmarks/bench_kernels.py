#!/usr/bin/env python3
"""Time the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--sizes 4,9,12]
"""
import argparse
import timeit

import numpy as np

from inertia_lab import _core


def parse_args():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--sizes", default="4,9,12")
    parser.add_argument("--seed", type=int, default=0)
    return parser.parse_args()


def best_of(fn, repeat):
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat, number)) / number


def main():
    args = parse_args()
    rng = np.random.default_rng(args.seed)
    sizes = [int(s) for s in args.sizes.split(",")]
    backends = {name: _core.load_backend(name) for name in _core.available_backends()}
    print(f"{'kernel':<22}{'d':>4}" + "".join(f"{name:>14}" for name in backends) + f"{'speedup':>10}")
    for d in sizes:
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        h = (g + g.conj().T) / 2
        stack = np.stack([h] * 64)
        m = 3
        n = d // 3 if d % 3 == 0 else None
        theta = rng.standard_normal(2 * d * d)
        cases = {
            "eigh (vectors)": lambda impl: impl.eigh(h, True),
            "eigvalsh_batch x64": lambda impl: impl.eigvalsh_batch(stack),
        }
        if n:
            cases["hinge_objective"] = lambda impl: impl.hinge_objective(theta, m, n, d, 1, 1, 1e-2)
        for label, call in cases.items():
            times = {name: best_of(lambda impl=impl: call(impl), args.repeat) for name, impl in backends.items()}
            row = f"{label:<22}{d:>4}" + "".join(f"{t * 1e6:>12.1f}us" for t in times.values())
            if len(times) > 1:
                row += f"{times['python'] / times['compiled']:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
