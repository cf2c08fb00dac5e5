"""Time the compiled and pure-Python contraction kernels on the same inputs.

    python3 benchmarks/bench_backends.py --sizes 10 15 20 --rho 1 2 --runs 20
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from smallcuts import _backend
from smallcuts.enumeration import base_size, reduction_factor


def random_weights(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    w = np.triu(rng.integers(1, 256, size=(n, n)), 1).astype(np.float64)
    return w + w.T


def time_backend(weights, rho, runs, backend) -> tuple[float, list]:
    red, base = reduction_factor(rho), base_size(rho)
    out = []
    start = time.perf_counter()
    for seed in range(runs):
        out.append(_backend.recursive_contract(weights, red, base, seed, backend=backend))
    return (time.perf_counter() - start) / runs, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 15, 20, 30])
    ap.add_argument("--rho", type=float, nargs="+", default=[1.0, 2.0])
    ap.add_argument("--runs", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = _backend.available()
    if "compiled" not in backends:
        print("compiled kernel not built; timing the Python backend only")
    print(f"{'n':>4} {'rho':>5} " + " ".join(f"{b + ' ms':>12}" for b in backends)
          + (f" {'speedup':>8}" if len(backends) == 2 else ""))
    for n in args.sizes:
        w = random_weights(n, args.seed + n)
        for rho in args.rho:
            results = {b: time_backend(w, rho, args.runs, b) for b in backends}
            if len(backends) == 2 and results["compiled"][1] != results["python"][1]:
                raise SystemExit(f"backends disagree at n={n}, rho={rho}")
            line = f"{n:>4} {rho:>5.2f} " + " ".join(f"{results[b][0] * 1e3:>12.3f}" for b in backends)
            if len(backends) == 2:
                line += f" {results['python'][0] / results['compiled'][0]:>7.1f}x"
            print(line)


if __name__ == "__main__":
    main()
